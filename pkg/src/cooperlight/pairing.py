"""Parity-mixed superconducting gap on the helical bands.

The order parameter combines an even-parity singlet amplitude psi_k (one of
four square-lattice channels) with an odd-parity triplet d-vector locked to
the spin-orbit field.  The mixing parameter r runs from pure triplet (0) to
pure singlet (1); projected onto the helicity-xi band the gap becomes
psi_k + xi * |d_k|.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .bands import _check_helicity, soc_vector

# Points where the full gap magnitude falls below this fraction of delta0
# are treated as nodes and dropped from momentum averages.
NODE_TOL_FACTOR = 1e-9


class SingletChannel(enum.Enum):
    S = "s"
    S_STAR = "s_star"
    D_X2Y2 = "d_x2y2"
    D_XY = "d_xy"


CHANNEL_IDS = {
    SingletChannel.S: 0,
    SingletChannel.S_STAR: 1,
    SingletChannel.D_X2Y2: 2,
    SingletChannel.D_XY: 3,
}

_CHANNEL_ALIASES = {
    "s": SingletChannel.S,
    "s-star": SingletChannel.S_STAR,
    "s_star": SingletChannel.S_STAR,
    "sstar": SingletChannel.S_STAR,
    "dx2y2": SingletChannel.D_X2Y2,
    "d_x2y2": SingletChannel.D_X2Y2,
    "dx2-y2": SingletChannel.D_X2Y2,
    "dxy": SingletChannel.D_XY,
    "d_xy": SingletChannel.D_XY,
}


def parse_channel(label) -> SingletChannel:
    """Map a user-facing channel label (case-insensitive) to the enum."""
    if isinstance(label, SingletChannel):
        return label
    key = str(label).strip().lower()
    try:
        return _CHANNEL_ALIASES[key]
    except KeyError:
        valid = ", ".join(sorted(set(_CHANNEL_ALIASES)))
        raise ValueError(
            f"unknown singlet channel {label!r}; expected one of: {valid}"
        ) from None


def structure_factor(channel: SingletChannel, k):
    """Even-parity form factor of the singlet channel at k."""
    kx, ky = k
    if channel is SingletChannel.S:
        return np.ones_like(np.asarray(kx, dtype=float))
    if channel is SingletChannel.S_STAR:
        return np.cos(kx) + np.cos(ky)
    if channel is SingletChannel.D_X2Y2:
        return np.cos(kx) - np.cos(ky)
    if channel is SingletChannel.D_XY:
        return np.sin(kx) * np.sin(ky)
    raise ValueError(f"unknown channel {channel!r}")


@dataclass(frozen=True)
class GapSpec:
    """Gap content: channel, singlet/triplet mixing, scale, d-vector angle."""

    channel: SingletChannel = SingletChannel.S
    r: float = 1.0
    delta0: float = 0.2
    theta_gap: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "channel", parse_channel(self.channel))
        if not 0.0 <= self.r <= 1.0:
            raise ValueError(f"mixing parameter r must lie in [0, 1], got {self.r}")
        if self.delta0 <= 0.0:
            raise ValueError(f"delta0 must be positive, got {self.delta0}")
        if not 0.0 <= self.theta_gap <= math.pi / 2:
            raise ValueError(
                f"theta_gap must lie in [0, pi/2], got {self.theta_gap}"
            )

    @property
    def node_tol(self) -> float:
        return NODE_TOL_FACTOR * self.delta0


def singlet_gap(k, g: GapSpec):
    """Singlet amplitude psi_k = r * delta0 * f_k."""
    return g.r * g.delta0 * structure_factor(g.channel, k)


def triplet_dvector(k, g: GapSpec):
    """In-plane d-vector (1 - r) * delta0 * g_k(theta_gap); returns (dx, dy)."""
    gx, gy = soc_vector(k, g.theta_gap)
    scale = (1.0 - g.r) * g.delta0
    return scale * gx, scale * gy


def dvector_magnitude(k, g: GapSpec):
    dx, dy = triplet_dvector(k, g)
    return np.hypot(dx, dy)


def projected_gap(k, xi: int, g: GapSpec):
    """Gap on the helicity-xi band: psi_k + xi * |d_k|."""
    _check_helicity(xi)
    return singlet_gap(k, g) + xi * dvector_magnitude(k, g)


@dataclass(frozen=True)
class PairingFractions:
    """Relative singlet/triplet weight of the projected gap.

    a = psi / ||Delta||, b = xi * |d| / ||Delta|| with the Frobenius-style
    norm ||Delta|| = sqrt(psi^2 + |d|^2); a^2 + b^2 = 1 wherever defined.
    ``defined`` is False at gap nodes, where both fractions are set to 0.
    Fields broadcast with k (scalar k gives 0-d arrays).
    """

    a: np.ndarray
    b: np.ndarray
    defined: np.ndarray


def pairing_fractions(k, xi: int, g: GapSpec) -> PairingFractions:
    _check_helicity(xi)
    psi = np.asarray(singlet_gap(k, g), dtype=float)
    dmag = np.asarray(dvector_magnitude(k, g), dtype=float)
    norm = np.hypot(psi, dmag)
    defined = norm > g.node_tol
    safe = np.where(defined, norm, 1.0)
    a = np.where(defined, psi / safe, 0.0)
    b = np.where(defined, xi * dmag / safe, 0.0)
    return PairingFractions(a=a, b=b, defined=defined)
