"""End-to-end LNPE: k-NN graph, propagation passes, bottom-eigenvector embedding."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embedding import DEGENERATE_TOL, Embedding, embed, null_space_multiplicity
from .exceptions import DisconnectedGraphError
from .neighbors import NeighborGraph, closed_class_count, knn_graph
from .propagation import PropagationConfig, PropagationTrace, run_propagation

__all__ = ["LNPEResult", "lnpe", "lle"]


@dataclass(frozen=True)
class LNPEResult:
    graph: NeighborGraph
    objective: np.ndarray
    trace: PropagationTrace
    embedding: Embedding

    @property
    def coords(self) -> np.ndarray:
        return self.embedding.coords


def lnpe(data, k: int = 7, d: int = 2, t: int = 2, sigma: float = 1e-3) -> LNPEResult:
    """Embed ``data`` (``n x D``) into ``d`` dimensions.

    Parameters
    ----------
    data : array_like, shape (n, D)
    k : int
        Neighborhood size, fixed across all passes.
    d : int
        Target dimensionality.
    t : int
        Number of neighbor propagations; ``t = 0`` is plain LLE.
    sigma : float
        Trace-relative ridge added to each local Gram matrix.

    Raises
    ------
    DisconnectedGraphError
        If the neighbor graph has several closed classes and the objective
        matrix really does have a repeated zero eigenvalue.  Propagation
        (``t >= 1``) often removes the degeneracy that LLE would hit.
    SingularSystemError
        If a local weight system has no unique solution.
    """
    config = PropagationConfig(t=t, k=k, sigma=sigma)
    data = np.asarray(data, dtype=np.float64)
    n = data.shape[0] if data.ndim else 0
    if isinstance(d, bool) or int(d) != d or not 1 <= d <= n - 2:
        raise ValueError(f"d must be an integer in [1, {n - 2}], got {d!r}")
    graph = knn_graph(data, k)
    m, trace = run_propagation(data, graph, config)
    emb = embed(m, d)
    if closed_class_count(graph) > 1:
        lam1, lam2 = emb.skipped_eigenvalue, emb.eigenvalues[0]
        if lam2 - lam1 < DEGENERATE_TOL and lam2 < DEGENERATE_TOL:
            mult = null_space_multiplicity(m, DEGENERATE_TOL)
            raise DisconnectedGraphError(
                f"objective matrix has a {mult}-dimensional null space: the "
                "neighbor graph has several closed classes (increase k or t)",
                multiplicity=mult,
            )
    return LNPEResult(graph, m, trace, emb)


def lle(data, k: int = 7, d: int = 2, sigma: float = 1e-3) -> LNPEResult:
    """Plain locally linear embedding (LNPE without propagation)."""
    return lnpe(data, k=k, d=d, t=0, sigma=sigma)
