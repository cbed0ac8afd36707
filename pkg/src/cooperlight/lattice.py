"""Brillouin-zone sampling for the two-dimensional square lattice.

Momenta live in the first zone [-pi, pi) x [-pi, pi) with the lattice
constant set to one.  Grids are uniform, zone-center-containing, and carry
equal weights; the high-symmetry path and the point-group images are the
standard ones for a square lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

TWO_PI = 2.0 * np.pi


class KPoint(NamedTuple):
    kx: float
    ky: float


def wrap_to_zone(k):
    """Fold momenta (scalar or array) into [-pi, pi)."""
    return np.mod(np.asarray(k, dtype=float) + np.pi, TWO_PI) - np.pi


@dataclass(frozen=True)
class KGrid:
    """Uniform n x n momentum grid with equal integration weights.

    ``kx`` and ``ky`` are flat arrays of length n*n in row-major order
    (kx varies slowest).  ``weight`` is the per-point quadrature weight,
    1/n^2, so that sum(weight) = 1.
    """

    n: int
    kx: np.ndarray
    ky: np.ndarray
    weight: float

    @property
    def size(self) -> int:
        return self.n * self.n

    @cached_property
    def axis(self) -> np.ndarray:
        """The shared 1D momentum axis (ascending, length n)."""
        return self.kx[:: self.n].copy()

    def points(self):
        """Iterate over KPoint values in storage order."""
        for x, y in zip(self.kx, self.ky):
            yield KPoint(float(x), float(y))


def make_grid(n: int) -> KGrid:
    """Build the n x n zone grid.

    The axis always contains k = 0 exactly: for even n it runs over
    (2m - n) * pi/n, for odd n over (2m - n + 1) * pi/n, m = 0..n-1.
    Raises ValueError for n < 2.
    """
    if n < 2:
        raise ValueError(f"grid size must be at least 2, got {n}")
    m = np.arange(n)
    if n % 2 == 0:
        axis = (2 * m - n) * (np.pi / n)
    else:
        axis = (2 * m - (n - 1)) * (np.pi / n)
    kx = np.repeat(axis, n)
    ky = np.tile(axis, n)
    kx.setflags(write=False)
    ky.setflags(write=False)
    return KGrid(n=n, kx=kx, ky=ky, weight=1.0 / (n * n))


# Vertices of the standard path through the zone: center, edge midpoint,
# corner, and back.
PATH_VERTICES: tuple[tuple[str, KPoint], ...] = (
    ("Gamma", KPoint(0.0, 0.0)),
    ("K", KPoint(np.pi, 0.0)),
    ("M", KPoint(np.pi, np.pi)),
    ("Gamma", KPoint(0.0, 0.0)),
)


@dataclass(frozen=True)
class SymmetryPath:
    """Sampled high-symmetry path.

    ``arc`` is the cumulative path coordinate (starts at 0), and
    ``vertex_arcs`` gives the coordinate of each labeled vertex, which is
    what one wants for axis ticks.
    """

    labels: tuple[str, ...]
    kx: np.ndarray
    ky: np.ndarray
    arc: np.ndarray
    vertex_arcs: tuple[float, ...]

    @property
    def size(self) -> int:
        return self.kx.size


def high_symmetry_path(samples_per_leg: int = 256) -> SymmetryPath:
    """Sample the Gamma -> K -> M -> Gamma path.

    Each leg gets ``samples_per_leg`` points including both endpoints;
    shared vertices are not duplicated, so the total point count is
    3 * samples_per_leg - 2.
    """
    if samples_per_leg < 2:
        raise ValueError(
            f"samples_per_leg must be at least 2, got {samples_per_leg}"
        )
    xs: list[np.ndarray] = []
    ys: list[np.ndarray] = []
    for i in range(len(PATH_VERTICES) - 1):
        _, a = PATH_VERTICES[i]
        _, b = PATH_VERTICES[i + 1]
        seg_x = np.linspace(a.kx, b.kx, samples_per_leg)
        seg_y = np.linspace(a.ky, b.ky, samples_per_leg)
        if i > 0:
            seg_x = seg_x[1:]
            seg_y = seg_y[1:]
        xs.append(seg_x)
        ys.append(seg_y)
    kx = np.concatenate(xs)
    ky = np.concatenate(ys)
    steps = np.hypot(np.diff(kx), np.diff(ky))
    arc = np.concatenate(([0.0], np.cumsum(steps)))
    vertex_idx = [0] + [
        (i + 1) * samples_per_leg - (i + 1) for i in range(len(PATH_VERTICES) - 1)
    ]
    return SymmetryPath(
        labels=tuple(name for name, _ in PATH_VERTICES),
        kx=kx,
        ky=ky,
        arc=arc,
        vertex_arcs=tuple(float(arc[i]) for i in vertex_idx),
    )


def c4v_images(k) -> list[KPoint]:
    """All C4v point-group images of k, folded into the zone.

    Returns the 8 images in a fixed order (4 rotations, then the 4
    mirrors); duplicates are not removed, so points on symmetry lines
    repeat.
    """
    kx, ky = float(k[0]), float(k[1])
    raw = [
        (kx, ky),
        (-ky, kx),
        (-kx, -ky),
        (ky, -kx),
        (kx, -ky),
        (-kx, ky),
        (ky, kx),
        (-ky, -kx),
    ]
    return [
        KPoint(float(wrap_to_zone(x)), float(wrap_to_zone(y))) for x, y in raw
    ]
