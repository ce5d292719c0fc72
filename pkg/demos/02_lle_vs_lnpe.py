"""Plain LLE against neighbor propagation on the Swiss roll.

The two methods share the neighbor graph; LNPE re-solves the local weights
t more times against the reconstructions of the previous pass and adds
every pass to the objective.
"""

# %%
import time

from lnpe import generate, lle, lnpe, trustworthiness, continuity

ds = generate("swiss-roll", 1000, seed=0)
x = ds.points

# %%
rows = []
for label, run in [
    ("LLE", lambda: lle(x, k=7, d=2, sigma=1e-4)),
    ("LNPE t=1", lambda: lnpe(x, k=7, d=2, t=1, sigma=1e-4)),
    ("LNPE t=2", lambda: lnpe(x, k=7, d=2, t=2, sigma=1e-4)),
]:
    start = time.perf_counter()
    res = run()
    elapsed = time.perf_counter() - start
    rows.append((label, trustworthiness(x, res.coords, 12), continuity(x, res.coords, 12), elapsed))

# %%
print(f"{'method':<9} {'T(12)':>8} {'C(12)':>8} {'secs':>6}")
for label, t, c, s in rows:
    print(f"{label:<9} {t:8.4f} {c:8.4f} {s:6.2f}")

# %% [markdown]
# Trustworthiness penalizes false neighbors in the embedding, continuity
# penalizes true neighbors that were torn apart. On this sample both move
# up once propagation is switched on.
