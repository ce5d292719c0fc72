"""Sum-to-one constrained local reconstruction weights."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .exceptions import SingularSystemError
from .neighbors import NeighborGraph

__all__ = ["RegularizationConfig", "SparseWeightMatrix", "solve_local_weights", "local_gram"]

# eigenvalues of the local Gram matrix below this fraction of the largest are
# treated as an exact null space
_NULL_RTOL = 64 * np.finfo(np.float64).eps


@dataclass(frozen=True)
class RegularizationConfig:
    sigma: float = 1e-3

    def __post_init__(self):
        if not np.isfinite(self.sigma) or self.sigma < 0:
            raise ValueError(f"sigma must be finite and >= 0, got {self.sigma!r}")


@dataclass(frozen=True)
class SparseWeightMatrix:
    """Column-sparse ``n x n`` weight matrix with a fixed k-per-column pattern.

    Column ``i`` has the entries ``values[i]`` at rows ``rows[i]``; the rows
    are the neighbor indices of sample ``i``.
    """

    rows: np.ndarray
    values: np.ndarray

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def k(self) -> int:
        return self.rows.shape[1]

    def tocsc(self) -> sp.csc_matrix:
        n, k = self.rows.shape
        indptr = np.arange(0, n * k + 1, k)
        mat = sp.csc_matrix(
            (self.values.ravel().copy(), self.rows.ravel().copy(), indptr), shape=(n, n)
        )
        mat.sort_indices()
        return mat

    def toarray(self) -> np.ndarray:
        return self.tocsc().toarray()

    def column_sums(self) -> np.ndarray:
        return self.values.sum(axis=1)


def local_gram(targets, basis, rows, sigma):
    """Regularized local Gram matrices, shape ``(n, k, k)``.

    ``G[i, a, b] = (t_i - b_a) . (t_i - b_b)`` over neighbors ``a, b`` of i,
    plus ``sigma * trace(G_i)`` on the diagonal (``sigma`` when the trace is 0).
    """
    diff = basis[rows] - targets[:, None, :]
    gram = np.einsum("nad,nbd->nab", diff, diff)
    trace = np.einsum("naa->n", gram)
    ridge = np.where(trace > 0, sigma * trace, sigma)
    k = rows.shape[1]
    gram[:, np.arange(k), np.arange(k)] += ridge[:, None]
    return gram


def solve_local_weights(targets, basis, graph: NeighborGraph, config=None) -> SparseWeightMatrix:
    """Reconstruct each ``targets[i]`` from ``basis[graph.indices[i]]``.

    Minimizes ``|targets_i - sum_j w_j basis_j|^2`` subject to
    ``sum_j w_j = 1`` by solving ``G w = 1`` with the symmetric
    eigendecomposition of the regularized local Gram matrix, then rescaling
    ``w`` to unit sum.

    When ``G`` has an exact null space (``sigma = 0`` with more neighbors than
    the local affine dimension) the weights are the ``sigma -> 0`` limit of
    the ridge solution: the projection of the all-ones vector onto the null
    space, normalized. That is the exact-reconstruction solution of minimum
    norm.

    Parameters
    ----------
    targets, basis : array_like, shape (n, D)
        Points being reconstructed and the points they are reconstructed from.
        The first pass uses ``targets = basis = X``.
    graph : NeighborGraph
        Neighbor sets; they fix the sparsity pattern of the result.
    config : RegularizationConfig or float, optional

    Raises
    ------
    SingularSystemError
        If some local problem has no unique constrained minimizer.
    """
    if config is None:
        config = RegularizationConfig()
    elif not isinstance(config, RegularizationConfig):
        config = RegularizationConfig(float(config))
    targets = np.asarray(targets, dtype=np.float64)
    basis = np.asarray(basis, dtype=np.float64)
    if targets.ndim != 2 or targets.shape != basis.shape:
        raise ValueError(
            f"targets and basis must be 2-D with equal shapes, got {targets.shape} and {basis.shape}"
        )
    if targets.shape[0] != graph.n:
        raise ValueError(
            f"graph has {graph.n} samples but data has {targets.shape[0]} rows"
        )

    rows = np.asarray(graph.indices)
    gram = local_gram(targets, basis, rows, config.sigma)
    evals, evecs = np.linalg.eigh(gram)
    k = rows.shape[1]
    # coordinates of the all-ones vector in each eigenbasis
    ones_coef = evecs.sum(axis=1)

    top = evals[:, -1:]
    null = evals <= _NULL_RTOL * top
    regular = ~null.any(axis=1)

    w = np.empty((graph.n, k))
    inv = ones_coef[regular] / evals[regular]
    w[regular] = np.einsum("nab,nb->na", evecs[regular], inv)

    if not regular.all():
        # ridge limit: project 1 onto the null space of G
        coef = np.where(null, ones_coef, 0.0)[~regular]
        w[~regular] = np.einsum("nab,nb->na", evecs[~regular], coef)

    sums = w.sum(axis=1)
    bad = ~(np.abs(sums) > 1e-8 * np.sqrt(k) * np.abs(w).sum(axis=1))
    bad |= ~np.isfinite(sums)
    if bad.any():
        idx = np.flatnonzero(bad)
        raise SingularSystemError(
            f"local Gram system is singular for {idx.size} sample(s) "
            f"(first: {idx[0]}); increase sigma",
            samples=idx,
        )
    w /= sums[:, None]
    rows = rows.copy()
    rows.flags.writeable = False
    w.flags.writeable = False
    return SparseWeightMatrix(rows, w)
