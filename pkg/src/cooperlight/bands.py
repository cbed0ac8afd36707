"""Normal-state electronic structure of the Rashba-Dresselhaus square lattice.

Single-orbital tight-binding band with nearest-neighbor hopping plus an
antisymmetric spin-orbit term that splits it into two helical branches
labeled xi = +1 / -1.  The admixture angle `theta_soc` interpolates between
the pure Rashba (0) and pure Dresselhaus (pi/2) limits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from skimage import measure

from ._kernels import impl as _kernels
from ._reduce import map_chunks, pairwise_sum

HELICITIES = (1, -1)


@dataclass(frozen=True)
class BandParams:
    """Band-structure parameters (energies in units of the hopping t)."""

    t: float = 1.0
    mu: float = 0.0
    lam: float = 0.5
    theta_soc: float = 0.0

    def __post_init__(self):
        if self.t <= 0.0:
            raise ValueError(f"hopping t must be positive, got {self.t}")
        if self.lam < 0.0:
            raise ValueError(f"soc strength must be non-negative, got {self.lam}")
        if not 0.0 <= self.theta_soc <= math.pi / 2:
            raise ValueError(
                f"theta_soc must lie in [0, pi/2], got {self.theta_soc}"
            )


def _check_helicity(xi: int) -> int:
    if xi not in HELICITIES:
        raise ValueError(f"helicity must be +1 or -1, got {xi}")
    return xi


def kinetic_energy(k, p: BandParams):
    """Spin-independent part of the dispersion, measured from mu."""
    kx, ky = k
    return -p.mu - 2.0 * p.t * (np.cos(kx) + np.cos(ky))


def soc_vector(k, theta_soc: float):
    """In-plane spin-orbit vector g_k = cos(theta)*g_R + sin(theta)*g_D."""
    kx, ky = k
    c = math.cos(theta_soc)
    s = math.sin(theta_soc)
    gx = c * np.sin(ky) + s * np.sin(kx)
    gy = -c * np.sin(kx) - s * np.sin(ky)
    return gx, gy


def soc_magnitude(k, theta_soc: float):
    """|g_k|, computed from the components so near-cancellations stay exact."""
    gx, gy = soc_vector(k, theta_soc)
    return np.hypot(gx, gy)


def helical_dispersion(k, xi: int, p: BandParams):
    """Energy of the helicity-xi branch at k."""
    _check_helicity(xi)
    return kinetic_energy(k, p) + xi * p.lam * soc_magnitude(k, p.theta_soc)


def _occupation(e, temperature: float):
    # clipped logistic: exp(700) is finite, anything further is 0 or 1
    x = np.clip(np.asarray(e, dtype=float) / temperature, -700.0, 700.0)
    return 1.0 / (1.0 + np.exp(x))


@dataclass(frozen=True)
class DosCurve:
    """Smeared density of states per site.

    Both helical branches are counted, so the curve integrates to 2 states
    per site over a sufficiently wide window.
    """

    energies: np.ndarray
    density: np.ndarray
    smearing: float

    def integral(self) -> float:
        return float(np.trapezoid(self.density, self.energies))


def _branch_energies(p: BandParams, grid) -> list[np.ndarray]:
    return [
        _kernels.helical_energies(
            grid.kx, grid.ky, p.t, p.mu, p.lam, p.theta_soc, xi
        )
        for xi in HELICITIES
    ]


def default_energy_mesh(
    p: BandParams, grid, sigma_e: float, count: int = 1024
) -> np.ndarray:
    """Uniform mesh covering both branches with a 5-sigma margin."""
    branches = _branch_energies(p, grid)
    lo = min(float(b.min()) for b in branches) - 5.0 * sigma_e
    hi = max(float(b.max()) for b in branches) + 5.0 * sigma_e
    return np.linspace(lo, hi, count)


def dos(
    p: BandParams,
    grid,
    mesh: np.ndarray | None = None,
    sigma_e: float = 0.02,
    threads: int = 1,
) -> DosCurve:
    """Gaussian-smeared density of states on the given energy mesh.

    The mesh must be uniform, ascending, and wide enough to cover every
    band energy with a 5-sigma margin, otherwise spectral weight would be
    silently truncated; a mesh of None builds a conforming one.
    """
    if sigma_e <= 0.0:
        raise ValueError(f"sigma_e must be positive, got {sigma_e}")
    if mesh is None:
        mesh = default_energy_mesh(p, grid, sigma_e)
    mesh = np.asarray(mesh, dtype=float)
    if mesh.ndim != 1 or mesh.size < 2:
        raise ValueError("energy mesh must be a 1D array with at least 2 points")
    steps = np.diff(mesh)
    if np.any(steps <= 0.0):
        raise ValueError("energy mesh must be strictly ascending")
    if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
        raise ValueError("energy mesh must be uniform")
    branches = _branch_energies(p, grid)
    lo = min(float(b.min()) for b in branches)
    hi = max(float(b.max()) for b in branches)
    slack = 1e-12 * max(1.0, abs(lo), abs(hi))
    if mesh[0] > lo - 5.0 * sigma_e + slack or mesh[-1] < hi + 5.0 * sigma_e - slack:
        raise ValueError(
            "energy mesh too narrow: it must cover "
            f"[{lo - 5.0 * sigma_e:.6g}, {hi + 5.0 * sigma_e:.6g}]"
        )

    def make_part(e):
        def part(lo_i, hi_i):
            return _kernels.smeared_dos(e[lo_i:hi_i], mesh, sigma_e)

        return part

    partials = []
    for e in branches:
        partials.extend(map_chunks(make_part(e), e.size, threads))
    density = pairwise_sum(partials) * grid.weight
    return DosCurve(energies=mesh, density=density, smearing=sigma_e)


def filling(p: BandParams, grid, temperature: float, threads: int = 1) -> float:
    """Electrons per site, in [0, 2]."""
    if temperature <= 0.0:
        raise ValueError(f"temperature must be positive, got {temperature}")
    total = 0.0
    for e in _branch_energies(p, grid):

        def part(lo, hi):
            return float(np.sum(_occupation(e[lo:hi], temperature)))

        total += pairwise_sum(map_chunks(part, e.size, threads))
    return total * grid.weight


def solve_mu(
    target: float,
    p: BandParams,
    grid,
    temperature: float,
    tol: float = 1e-8,
    max_iter: int = 200,
) -> float:
    """Chemical potential that produces the target filling, by bisection.

    The mu stored in p is ignored; the band is rigid so occupations depend
    on mu only through eps - mu.
    """
    if not 0.0 < target < 2.0:
        raise ValueError(f"target filling must lie in (0, 2), got {target}")
    if temperature <= 0.0:
        raise ValueError(f"temperature must be positive, got {temperature}")
    base = np.concatenate(_branch_energies(replace(p, mu=0.0), grid))
    span = 4.0 * p.t + 2.0 * p.lam + 50.0 * temperature + 1.0
    lo, hi = -span, span

    def occupancy(mu: float) -> float:
        return float(np.sum(_occupation(base - mu, temperature))) * grid.weight

    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        n_mid = occupancy(mid)
        if abs(n_mid - target) <= tol:
            return mid
        if n_mid < target:
            lo = mid
        else:
            hi = mid
    raise RuntimeError(
        f"filling solver did not reach |n - {target}| <= {tol} "
        f"in {max_iter} bisection steps"
    )


@dataclass(frozen=True)
class FermiContour:
    """One closed or open zero-energy polyline of a single helical branch."""

    xi: int
    vertices: np.ndarray  # (m, 2) columns (kx, ky)


@dataclass(frozen=True)
class FermiSurface:
    contours: tuple[FermiContour, ...]
    residual: float  # max |eps| over all vertices; 0.0 when empty

    @property
    def num_contours(self) -> int:
        return len(self.contours)


def fermi_surface(p: BandParams, grid, xi: int) -> FermiSurface:
    """Zero-energy contours of one helical branch via marching squares.

    The branch is sampled on the grid, padded by one periodic row/column so
    contours crossing the zone boundary close properly, and traced at level
    zero.  Vertex momenta are exact grid coordinates along one axis and
    linear interpolations along the other.
    """
    _check_helicity(xi)
    n = grid.n
    axis = grid.axis
    field = np.asarray(
        _kernels.helical_energies(grid.kx, grid.ky, p.t, p.mu, p.lam, p.theta_soc, xi)
    ).reshape(n, n)
    padded = np.empty((n + 1, n + 1))
    padded[:n, :n] = field
    padded[n, :n] = field[0, :]
    padded[:n, n] = field[:, 0]
    padded[n, n] = field[0, 0]
    step = 2.0 * np.pi / n
    contours = []
    residual = 0.0
    for idx in measure.find_contours(padded, 0.0):
        verts = axis[0] + idx * step
        eps = helical_dispersion((verts[:, 0], verts[:, 1]), xi, p)
        residual = max(residual, float(np.max(np.abs(eps)))) if eps.size else residual
        contours.append(FermiContour(xi=xi, vertices=verts))
    return FermiSurface(contours=tuple(contours), residual=residual)
