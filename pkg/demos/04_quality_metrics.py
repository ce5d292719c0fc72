"""Trustworthiness and continuity on embeddings of known quality."""

# %%
import numpy as np

from lnpe import generate, lnpe, quality_report
from lnpe.metrics import trustworthiness

ds = generate("sphere", 300, seed=0)
x = ds.points
rng = np.random.default_rng(0)

# %% [markdown]
# A rigid motion of the data keeps every rank, so it scores 1. A random
# scatter keeps none, so it scores near the chance level.

# %%
q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
print("rotation:", trustworthiness(x, x @ q, 12))
print("random  :", trustworthiness(x, rng.normal(size=(300, 2)), 12))

# %%
res = lnpe(x, k=5, d=2, t=2, sigma=1e-2)
report = quality_report(x, res.embedding, 12, res.trace.final_residual)
print(report.to_dict())
