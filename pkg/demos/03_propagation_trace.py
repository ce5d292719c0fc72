"""Inside the propagation loop: residuals and fill-in per pass."""

# %%
import numpy as np

from lnpe import generate
from lnpe.neighbors import knn_graph
from lnpe.propagation import PropagationConfig, reconstruct, run_propagation

x = generate("s-curve", 1000, seed=0).points
graph = knn_graph(x, 7)
m, trace = run_propagation(x, graph, PropagationConfig(t=4, k=7, sigma=1e-3))

# %% [markdown]
# Pass e stores the weights W_e, the product P_e = W_1 ... W_e, the
# reconstruction residual |X - X P_e| and the density of P_e. The support
# of P_e is the set of e-hop neighbors, so density grows with e.

# %%
for rec in trace:
    print(f"pass {rec.pass_index}: residual {rec.residual:.4e} density {rec.density:.4f} "
          f"nnz {rec.product.nnz}")

# %%
# the residual is recomputed here from the product alone
p = trace.products[-1]
print("residual check:", np.linalg.norm(x - reconstruct(x, p)), trace.final_residual)

# %% [markdown]
# The objective accumulates every pass, stays symmetric and keeps the
# constant vector in its null space.

# %%
print("asymmetry", np.abs(m - m.T).max())
print("|M 1|", np.abs(m @ np.ones(m.shape[0])).max())
