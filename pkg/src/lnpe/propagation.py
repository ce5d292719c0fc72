"""Neighbor-propagation loop and objective-matrix accumulation.

Pass 1 reconstructs ``X`` from itself (plain LLE weights ``W_1``).  Pass
``e + 1`` reconstructs the original ``X`` from the reconstruction
``X^(e) = X P_e`` on the same neighbor sets, where ``P_e = W_1 ... W_e``.
Every product ``P_i`` contributes ``(P_i - I)(P_i - I)^T`` to ``M``.

Samples are rows here, so the reconstruction in row layout is
``P_e^T @ X``; ``M`` itself is layout independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .exceptions import SingularSystemError
from .neighbors import NeighborGraph
from .weights import RegularizationConfig, SparseWeightMatrix, solve_local_weights

__all__ = [
    "PropagationConfig",
    "PassRecord",
    "PropagationTrace",
    "run_propagation",
    "matrix_product_chain",
    "accumulate_objective",
    "reconstruct",
]


@dataclass(frozen=True)
class PropagationConfig:
    """``t`` propagations give ``t + 1`` reconstruction passes; ``t = 0`` is LLE."""

    t: int = 2
    k: int = 7
    sigma: float = 1e-3

    def __post_init__(self):
        if isinstance(self.t, bool) or int(self.t) != self.t or self.t < 0:
            raise ValueError(f"t must be a non-negative integer, got {self.t!r}")
        if isinstance(self.k, bool) or int(self.k) != self.k or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")
        RegularizationConfig(self.sigma)

    @property
    def regularization(self) -> RegularizationConfig:
        return RegularizationConfig(self.sigma)


@dataclass(frozen=True)
class PassRecord:
    pass_index: int
    weights: SparseWeightMatrix
    product: sp.csc_matrix
    residual: float
    density: float


@dataclass
class PropagationTrace:
    passes: list = field(default_factory=list)

    def __len__(self):
        return len(self.passes)

    def __getitem__(self, i):
        return self.passes[i]

    @property
    def weights(self):
        return [p.weights for p in self.passes]

    @property
    def products(self):
        return [p.product for p in self.passes]

    @property
    def residuals(self) -> np.ndarray:
        return np.array([p.residual for p in self.passes])

    @property
    def densities(self) -> np.ndarray:
        return np.array([p.density for p in self.passes])

    @property
    def final_residual(self) -> float:
        return self.passes[-1].residual


def _as_csc(w) -> sp.csc_matrix:
    if isinstance(w, SparseWeightMatrix):
        return w.tocsc()
    return sp.csc_matrix(w)


def matrix_product_chain(weights, upto: int) -> sp.csc_matrix:
    """Return ``P_upto = W_1 W_2 ... W_upto`` by left-to-right sparse products."""
    if not 1 <= upto <= len(weights):
        raise ValueError(f"upto must lie in [1, {len(weights)}], got {upto}")
    prod = _as_csc(weights[0])
    for w in weights[1:upto]:
        w = _as_csc(w)
        if prod.shape[1] != w.shape[0]:
            raise ValueError(f"dimension mismatch: {prod.shape} @ {w.shape}")
        prod = (prod @ w).tocsc()
    prod.sort_indices()
    return prod


def accumulate_objective(m, p) -> np.ndarray:
    """Return ``M + (P - I)(P - I)^T``, symmetrized.

    ``m`` is a dense ``(n, n)`` array (not modified); ``p`` may be sparse or dense.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape != p.shape:
        raise ValueError(f"shape mismatch: M {m.shape}, P {p.shape}")
    n = m.shape[0]
    if sp.issparse(p):
        a = sp.csr_matrix(p) - sp.identity(n, format="csr")
        inc = (a @ a.T).toarray()
    else:
        a = np.asarray(p, dtype=np.float64) - np.eye(n)
        inc = a @ a.T
    out = m + inc
    return 0.5 * (out + out.T)


def reconstruct(data: np.ndarray, p) -> np.ndarray:
    """Reconstructed samples ``X^(e)`` in row layout: row j is ``sum_i P[i, j] x_i``."""
    return np.asarray(p.T @ data)


def run_propagation(data, graph: NeighborGraph, config: PropagationConfig):
    """Run all ``t + 1`` reconstruction passes.

    Returns
    -------
    m : ndarray, shape (n, n)
        Symmetric PSD objective matrix with the all-ones vector in its null space.
    trace : PropagationTrace
        Per-pass weights, products, residuals ``|X P_e - X|_F`` and densities.
    """
    data = np.asarray(data, dtype=np.float64)
    n = data.shape[0]
    if graph.n != n:
        raise ValueError(f"graph has {graph.n} samples but data has {n} rows")
    reg = config.regularization

    m = np.zeros((n, n))
    trace = PropagationTrace()
    basis = data
    prod = None
    for e in range(1, config.t + 2):
        try:
            w = solve_local_weights(data, basis, graph, reg)
        except SingularSystemError as exc:
            exc.pass_index = e
            raise
        wc = w.tocsc()
        prod = wc if prod is None else (prod @ wc).tocsc()
        prod.sort_indices()
        m = accumulate_objective(m, prod)
        basis = reconstruct(data, prod)
        trace.passes.append(
            PassRecord(
                pass_index=e,
                weights=w,
                product=prod,
                residual=float(np.linalg.norm(basis - data)),
                density=prod.nnz / float(n * n),
            )
        )
    return m, trace
