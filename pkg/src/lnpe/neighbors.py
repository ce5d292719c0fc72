"""Exact brute-force k-nearest-neighbor graph under Euclidean distance."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

__all__ = [
    "NeighborGraph",
    "knn_graph",
    "pairwise_sq_distances",
    "weak_component_count",
    "closed_class_count",
]


@dataclass(frozen=True)
class NeighborGraph:
    """Directed k-NN graph.

    ``indices[i]`` lists the ``k`` nearest other samples of sample ``i``
    sorted by ascending distance (ties by ascending index); ``distances``
    holds the matching Euclidean distances.
    """

    k: int
    indices: np.ndarray
    distances: np.ndarray

    @property
    def n(self) -> int:
        return self.indices.shape[0]

    def adjacency(self) -> sp.csr_matrix:
        """Directed adjacency, ``A[i, j] = 1`` when ``j`` is a neighbor of ``i``."""
        n, k = self.indices.shape
        return sp.csr_matrix(
            (np.ones(n * k), self.indices.ravel().copy(), np.arange(0, n * k + 1, k)),
            shape=(n, n),
        )


def pairwise_sq_distances(data: np.ndarray, row: int) -> np.ndarray:
    """Squared distances from ``data[row]`` to every row, via explicit differences.

    The difference form (rather than the ``|a|^2 + |b|^2 - 2ab`` expansion)
    keeps exactly-equal distances equal, so ties resolve by index.
    """
    diff = data - data[row]
    return np.einsum("ij,ij->i", diff, diff)


def knn_graph(data, k: int) -> NeighborGraph:
    """Build the k-NN graph of ``data`` (``n`` samples by ``D`` features).

    A sample is never its own neighbor; duplicates of it are, at distance 0.
    """
    data = np.asarray(data, dtype=np.float64)
    if data.ndim == 1:
        data = data[:, None]
    if data.ndim != 2:
        raise ValueError(f"data must be 2-D, got shape {data.shape}")
    n = data.shape[0]
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    if not np.all(np.isfinite(data)):
        raise ValueError("data contains non-finite values")
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    k = int(k)
    if k >= n:
        raise ValueError(f"k must be smaller than the sample count ({n}), got {k}")

    indices = np.empty((n, k), dtype=np.intp)
    distances = np.empty((n, k), dtype=np.float64)
    for i in range(n):
        d2 = pairwise_sq_distances(data, i)
        d2[i] = np.inf
        # stable sort: equal distances keep ascending index order
        order = np.argsort(d2, kind="stable")[:k]
        indices[i] = order
        distances[i] = np.sqrt(d2[order])
    indices.flags.writeable = False
    distances.flags.writeable = False
    return NeighborGraph(k, indices, distances)


def weak_component_count(graph: NeighborGraph) -> int:
    ncomp, _ = connected_components(graph.adjacency(), directed=True, connection="weak")
    return int(ncomp)


def closed_class_count(graph: NeighborGraph) -> int:
    """Number of strongly connected components with no edge leaving them.

    A closed class only ever reconstructs from itself, so each one adds a
    vector to the null space of the plain LLE objective.  One closed class is
    necessary for that null space to be just the constants.
    """
    ncomp, labels = connected_components(
        graph.adjacency(), directed=True, connection="strong"
    )
    src = np.repeat(labels, graph.k)
    dst = labels[graph.indices.ravel()]
    has_exit = np.zeros(ncomp, dtype=bool)
    has_exit[src[src != dst]] = True
    return int(np.count_nonzero(~has_exit))
