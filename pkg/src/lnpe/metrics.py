"""Rank-based neighborhood preservation scores: trustworthiness and continuity.

For ``n`` samples and neighborhood size ``k``::

    T(k) = 1 - 2 / (n k (2n - 3k - 1)) * sum_i sum_{j in U_i} (r(i, j) - k)

where ``U_i`` holds the points among the ``k`` nearest of ``i`` in the
embedding but not in the original space and ``r(i, j)`` is the rank of ``j``
among the original-space neighbors of ``i`` (1 = nearest).  Continuity swaps
the roles of the two spaces.  Ranks break ties by ascending index.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .embedding import Embedding
from .neighbors import pairwise_sq_distances

__all__ = ["QualityReport", "trustworthiness", "continuity", "quality_report", "rank_matrix"]


@dataclass(frozen=True)
class QualityReport:
    trustworthiness: float
    continuity: float
    k_eval: int
    residual_f: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def _coords(x) -> np.ndarray:
    if isinstance(x, Embedding):
        x = x.coords
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    return x


def rank_matrix(data) -> np.ndarray:
    """``R[i, j]`` = rank of ``j`` by distance from ``i`` (1-based; ``R[i, i] = 0``)."""
    data = _coords(data)
    n = data.shape[0]
    ranks = np.zeros((n, n), dtype=np.intp)
    for i in range(n):
        d2 = pairwise_sq_distances(data, i)
        d2[i] = -np.inf
        order = np.argsort(d2, kind="stable")
        ranks[i, order] = np.arange(n)
    return ranks


def _intrusion_score(reference, other, k: int) -> float:
    reference = _coords(reference)
    other = _coords(other)
    n = reference.shape[0]
    if other.shape[0] != n:
        raise ValueError(f"row counts differ: {n} vs {other.shape[0]}")
    if isinstance(k, bool) or int(k) != k or k < 1 or not k < n / 2:
        raise ValueError(f"k_eval must be an integer with 1 <= k_eval < n/2 = {n / 2}, got {k!r}")
    k = int(k)
    ref_rank = rank_matrix(reference)
    oth_rank = rank_matrix(other)
    # j is an intruder for i: in the other space's k-NN but not the reference's
    intruder = (oth_rank >= 1) & (oth_rank <= k) & (ref_rank > k)
    penalty = float(np.sum(ref_rank[intruder] - k))
    return 1.0 - 2.0 / (n * k * (2.0 * n - 3.0 * k - 1.0)) * penalty


def trustworthiness(high, low, k_eval: int) -> float:
    """Penalize embedding neighbors that were not neighbors in ``high``."""
    return _intrusion_score(high, low, k_eval)


def continuity(high, low, k_eval: int) -> float:
    """Penalize original neighbors missing from the embedding neighborhood."""
    return _intrusion_score(low, high, k_eval)


def quality_report(high, low, k_eval: int, residual_f=None) -> QualityReport:
    return QualityReport(
        trustworthiness(high, low, k_eval),
        continuity(high, low, k_eval),
        int(k_eval),
        None if residual_f is None else float(residual_f),
    )
