"""Polarization structure of the emitted photon pair.

Each quasiparticle state contributes a 4x4 two-photon matrix in the
circular basis (LL, LR, RL, RR).  Its entries depend on the singlet and
triplet fractions of the projected gap and on the angle between the
measurement axis and the local d-vector.  Averaging the purity functional
of that matrix over the zone gives a single scalar diagnostic: 2 for pure
singlet pairing, smaller whenever the triplet part rotates relative to the
measurement axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._kernels import impl as _kernels
from ._reduce import map_chunks, pairwise_sum
from .bands import _check_helicity
from .pairing import CHANNEL_IDS, GapSpec, pairing_fractions, triplet_dvector

BASIS = ("LL", "LR", "RL", "RR")


class UndefinedAngleError(ValueError):
    """Raised when the d-vector vanishes and no mixing angle exists."""


@dataclass(frozen=True)
class PolarizationAxis:
    """Photon propagation / polarization measurement axis (unit vector).

    Spherical angles: theta in [0, pi] from the z axis (the quantum-well
    normal), phi in [0, 2*pi) in the plane.
    """

    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")

    @cached_property
    def vec(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array(
            [st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)]
        )


def mixing_angle(k, g: GapSpec, p: PolarizationAxis):
    """Angle between the measurement axis and the local d-vector.

    Undefined (raises UndefinedAngleError) wherever |d_k| = 0, which
    includes every k at r = 1.
    """
    dx, dy = triplet_dvector(k, g)
    dmag = np.hypot(dx, dy)
    if np.any(dmag == 0.0):
        raise UndefinedAngleError(
            "mixing angle undefined where the d-vector vanishes"
        )
    px, py, _ = p.vec
    cos_v = np.clip((px * dx + py * dy) / dmag, -1.0, 1.0)
    return np.arccos(cos_v)


@dataclass(frozen=True)
class TwoPhotonMatrix:
    """4x4 two-photon polarization matrix in the (LL, LR, RL, RR) basis."""

    values: np.ndarray
    basis: tuple[str, ...] = field(default=BASIS, repr=False)

    @classmethod
    def from_weights(cls, w_same: float, w_opp: float) -> "TwoPhotonMatrix":
        """Assemble the matrix pattern from its two independent entries.

        w_same sits on the co-circulating corners (LL,LL) and (RR,RR);
        w_opp fills the entire central opposite-circulation 2x2 block.
        """
        m = np.zeros((4, 4))
        m[0, 0] = w_same
        m[3, 3] = w_same
        m[1:3, 1:3] = w_opp
        return cls(values=m)

    @property
    def trace(self) -> float:
        return float(np.trace(self.values))

    def normalized(self) -> "TwoPhotonMatrix | None":
        """Unit-trace copy, or None when the matrix is identically zero."""
        tr = self.trace
        if tr == 0.0:
            return None
        return TwoPhotonMatrix(values=self.values / tr)


def emission_weights(k, xi: int, g: GapSpec, p: PolarizationAxis):
    """Per-state matrix entries (w_same, w_opp).

    w_same = 2 * b^2 * sin^2(angle), w_opp = a^2 + b^2 * cos^2(angle) in
    terms of the pairing fractions; both are zero at gap nodes, and the
    angle factor drops out wherever the d-vector vanishes.
    """
    frac = pairing_fractions(k, xi, g)
    dx, dy = triplet_dvector(k, g)
    dmag = np.hypot(dx, dy)
    has_d = dmag > 0.0
    px, py, _ = p.vec
    cos_v = np.where(has_d, (px * dx + py * dy) / np.where(has_d, dmag, 1.0), 0.0)
    cos_v = np.clip(cos_v, -1.0, 1.0)
    c2 = cos_v * cos_v
    a2 = frac.a * frac.a
    b2 = frac.b * frac.b
    w_opp = np.where(frac.defined, a2 + b2 * c2, 0.0)
    w_same = np.where(frac.defined, 2.0 * b2 * (1.0 - c2), 0.0)
    return w_same, w_opp


def emission_matrix(
    k, xi: int, g: GapSpec, p: PolarizationAxis
) -> TwoPhotonMatrix:
    """Two-photon matrix of a single (k, xi) state; zero at gap nodes."""
    _check_helicity(xi)
    w_same, w_opp = emission_weights(k, xi, g, p)
    return TwoPhotonMatrix.from_weights(float(w_same), float(w_opp))


def purity(g: GapSpec, p: PolarizationAxis, grid, threads: int = 1) -> float:
    """Zone-averaged purity of the per-state two-photon matrices.

    Equals 2 exactly for pure singlet pairing; gap nodes are excluded from
    the average (they emit nothing), but the normalization keeps the full
    2N states so nodal channels are penalized rather than renormalized.
    """
    px, py, _ = p.vec
    cid = CHANNEL_IDS[g.channel]

    def part(lo, hi):
        return _kernels.purity_sum(
            grid.kx[lo:hi],
            grid.ky[lo:hi],
            cid,
            g.r,
            g.delta0,
            g.theta_gap,
            px,
            py,
            g.node_tol,
        )

    total = pairwise_sum(map_chunks(part, grid.size, threads))
    return total / (2.0 * grid.size)
