"""Synthetic manifold generators: S-curve, Swiss roll, punctured sphere, helix.

Every generator returns a :class:`SyntheticDataset` holding the ``(n, 3)``
point cloud and the intrinsic coordinates used to produce it.  Random
sampling draws from ``numpy.random.Generator(PCG64)`` seeded through
``SeedSequence``, so a given ``(n, seed)`` yields the same bits on every
platform.  ``grid=True`` switches to deterministic lattice sampling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SyntheticDataset",
    "generate_s_curve",
    "generate_swiss_roll",
    "generate_sphere",
    "generate_helix",
    "generate",
    "DATASETS",
    "HELIX_TURNS",
    "SPHERE_CAP_Z",
]

HELIX_TURNS = 3
# points with |z| above this are dropped from the sphere
SPHERE_CAP_Z = 0.95


@dataclass(frozen=True)
class SyntheticDataset:
    """Point cloud plus the manifold parameters that generated it.

    Attributes
    ----------
    points : ndarray, shape (n, 3)
    intrinsic_params : ndarray, shape (n, p)
        ``p == 2`` for the surfaces, ``p == 1`` for the helix.
    name : str
    seed : int
    """

    points: np.ndarray
    intrinsic_params: np.ndarray
    name: str
    seed: int

    @property
    def n(self) -> int:
        return self.points.shape[0]


def _check_n(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return int(n)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def _lattice(n: int, lo_a, hi_a, lo_b, hi_b):
    """First ``n`` nodes of a near-square lattice over a rectangle, row-major."""
    side = int(np.ceil(np.sqrt(n)))
    a = np.linspace(lo_a, hi_a, side)
    b = np.linspace(lo_b, hi_b, side)
    aa, bb = np.meshgrid(a, b, indexing="ij")
    return aa.ravel()[:n], bb.ravel()[:n]


def _freeze(points, params, name, seed) -> SyntheticDataset:
    points = np.ascontiguousarray(points, dtype=np.float64)
    params = np.ascontiguousarray(params, dtype=np.float64)
    if params.ndim == 1:
        params = params[:, None]
    points.flags.writeable = False
    params.flags.writeable = False
    return SyntheticDataset(points, params, name, int(seed))


def s_curve_points(t, h):
    """Map (arc parameter, height) onto the S-shaped sheet."""
    t = np.asarray(t, dtype=np.float64)
    h = np.asarray(h, dtype=np.float64)
    return np.column_stack([np.sin(t), h, np.sign(t) * (np.cos(t) - 1.0)])


def swiss_roll_points(t, h):
    """Map (roll angle, height) onto the Swiss roll; radius equals the angle."""
    t = np.asarray(t, dtype=np.float64)
    h = np.asarray(h, dtype=np.float64)
    return np.column_stack([t * np.cos(t), h, t * np.sin(t)])


def sphere_points(azimuth, polar):
    azimuth = np.asarray(azimuth, dtype=np.float64)
    polar = np.asarray(polar, dtype=np.float64)
    s = np.sin(polar)
    return np.column_stack([s * np.cos(azimuth), s * np.sin(azimuth), np.cos(polar)])


def helix_points(t, pitch_scale: float = 4.0):
    """Unit-radius helix; ``z = 0.25 * t / (2 pi) * pitch_scale``."""
    t = np.asarray(t, dtype=np.float64)
    return np.column_stack(
        [np.cos(t), np.sin(t), 0.25 * t / (2.0 * np.pi) * pitch_scale]
    )


def generate_s_curve(n: int, seed: int = 0, *, grid: bool = False) -> SyntheticDataset:
    """S-curve with arc parameter in [-3pi/2, 3pi/2] and height in [0, 2]."""
    n = _check_n(n)
    lo, hi = -1.5 * np.pi, 1.5 * np.pi
    if grid:
        t, h = _lattice(n, lo, hi, 0.0, 2.0)
    else:
        rng = _rng(seed)
        t = rng.uniform(lo, hi, n)
        h = rng.uniform(0.0, 2.0, n)
    return _freeze(s_curve_points(t, h), np.column_stack([t, h]), "s-curve", seed)


def generate_swiss_roll(n: int, seed: int = 0, *, grid: bool = False) -> SyntheticDataset:
    """Swiss roll with angle in [1.5pi, 4.5pi] and height in [0, 21]."""
    n = _check_n(n)
    lo, hi = 1.5 * np.pi, 4.5 * np.pi
    if grid:
        t, h = _lattice(n, lo, hi, 0.0, 21.0)
    else:
        rng = _rng(seed)
        t = rng.uniform(lo, hi, n)
        h = rng.uniform(0.0, 21.0, n)
    return _freeze(swiss_roll_points(t, h), np.column_stack([t, h]), "swiss-roll", seed)


def generate_sphere(n: int, seed: int = 0, *, grid: bool = False) -> SyntheticDataset:
    """Unit sphere with both polar caps ``|z| > 0.95`` removed.

    Random mode samples uniformly by area (``z`` uniform on the kept band).
    Grid mode uses a Fibonacci spiral, which is also area-uniform.
    """
    n = _check_n(n)
    zmax = SPHERE_CAP_Z
    if grid:
        z = np.linspace(zmax, -zmax, n) if n > 1 else np.zeros(1)
        golden = np.pi * (3.0 - np.sqrt(5.0))
        azimuth = np.mod(golden * np.arange(n), 2.0 * np.pi)
    else:
        rng = _rng(seed)
        azimuth = rng.uniform(0.0, 2.0 * np.pi, n)
        z = rng.uniform(-zmax, zmax, n)
    polar = np.arccos(z)
    return _freeze(
        sphere_points(azimuth, polar), np.column_stack([azimuth, polar]), "sphere", seed
    )


def generate_helix(
    n: int, seed: int = 0, *, grid: bool = False, pitch_scale: float = 4.0
) -> SyntheticDataset:
    """Three-turn unit-radius helix, parameter ``t`` in [0, 6pi].

    With ``grid=True`` the parameter is evenly spaced, so consecutive points
    are separated by equal chords.
    """
    n = _check_n(n)
    hi = 2.0 * np.pi * HELIX_TURNS
    if grid:
        t = np.linspace(0.0, hi, n)
    else:
        t = _rng(seed).uniform(0.0, hi, n)
    return _freeze(helix_points(t, pitch_scale), t, "helix", seed)


DATASETS = {
    "s-curve": generate_s_curve,
    "swiss-roll": generate_swiss_roll,
    "sphere": generate_sphere,
    "helix": generate_helix,
}


def generate(name: str, n: int, seed: int = 0, *, grid: bool = False) -> SyntheticDataset:
    """Dispatch to a generator by its dataset name."""
    try:
        fn = DATASETS[name]
    except KeyError:
        raise ValueError(
            f"unknown dataset {name!r}; expected one of {sorted(DATASETS)}"
        ) from None
    return fn(n, seed, grid=grid)
