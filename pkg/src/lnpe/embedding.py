"""Bottom-eigenvector embedding of the objective matrix."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse.csgraph

from .exceptions import DisconnectedGraphError

__all__ = ["Embedding", "embed", "null_space_multiplicity", "component_count", "fix_signs"]

DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class Embedding:
    """Low-dimensional coordinates, one row per sample.

    Columns are orthonormal and orthogonal to the constant vector.
    ``warnings`` lists diagnostics such as a repeated eigenvalue straddling
    the retained/discarded boundary.
    """

    coords: np.ndarray
    eigenvalues: np.ndarray
    skipped_eigenvalue: float
    warnings: tuple = field(default=())

    @property
    def d(self) -> int:
        return self.coords.shape[1]


def fix_signs(vecs: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry (lowest index on ties) is positive."""
    vecs = np.array(vecs, dtype=np.float64, copy=True)
    pivot = np.argmax(np.abs(vecs), axis=0)
    signs = np.sign(vecs[pivot, np.arange(vecs.shape[1])])
    signs[signs == 0] = 1.0
    return vecs * signs


def _check_square(m):
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"objective matrix must be square, got shape {m.shape}")
    return m


def null_space_multiplicity(m, tol: float = 1e-8) -> int:
    """Number of eigenvalues of ``m`` below ``tol``; 1 for a connected problem."""
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    m = _check_square(m)
    evals = scipy.linalg.eigh(m, eigvals_only=True)
    return int(np.count_nonzero(evals < tol))


def component_count(m) -> int:
    """Connected components of the nonzero pattern of ``m``.

    Each component contributes its own constant vector to the null space of
    an objective matrix, so a count above 1 means the bottom eigenvectors
    are not determined.  Unlike an eigenvalue threshold this cannot confuse
    a genuinely small eigenvalue with an exact zero.
    """
    m = _check_square(m)
    ncomp, _ = scipy.sparse.csgraph.connected_components(
        m != 0, directed=False
    )
    return int(ncomp)


def embed(m, d: int = 2) -> Embedding:
    """Embed into ``d`` dimensions with eigenvectors 2..d+1 of ``m``.

    The smallest eigenpair (the constant vector, eigenvalue ~0) is dropped.

    Raises
    ------
    DisconnectedGraphError
        If ``m`` decouples into more than one block (the neighbor graph is
        disconnected), so the bottom eigenvectors are not determined.
    """
    m = _check_square(m)
    n = m.shape[0]
    if isinstance(d, bool) or int(d) != d or not 1 <= d <= n - 2:
        raise ValueError(f"d must be an integer in [1, {n - 2}], got {d!r}")
    d = int(d)
    ncomp = component_count(m)
    if ncomp > 1:
        raise DisconnectedGraphError(
            f"objective matrix splits into {ncomp} blocks; "
            "the neighbor graph is disconnected (increase k)",
            multiplicity=ncomp,
        )
    evals, evecs = scipy.linalg.eigh(m)

    warnings = []
    if evals[1] - evals[0] < DEGENERATE_TOL and evals[1] < DEGENERATE_TOL:
        warnings.append(
            f"second eigenvalue {evals[1]:.3e} is numerically zero; "
            "consider a larger sigma"
        )
    if d + 1 < n:
        lo, hi = evals[d], evals[d + 1]
        if hi - lo <= 1e-10 * max(1.0, abs(hi)):
            warnings.append(
                f"eigenvalue {d + 1} ({lo:.3e}) is repeated across the retained/"
                f"discarded boundary ({hi:.3e}); embedding basis is not unique"
            )

    coords = fix_signs(evecs[:, 1 : d + 1])
    coords.flags.writeable = False
    kept = evals[1 : d + 1].copy()
    kept.flags.writeable = False
    return Embedding(coords, kept, float(evals[0]), tuple(warnings))
