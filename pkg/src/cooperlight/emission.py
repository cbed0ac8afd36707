"""Photon-pair emission from quasiparticle recombination.

Thermally excited Bogoliubov quasiparticles on the two helical bands
recombine across the semiconductor band gap and emit photon pairs at
frequencies omega1 + omega2 = 2 * E_gap.  Each state carries a scalar
emission weight (second-order perturbation theory with all intermediate
denominators regularized on the scale sigma_delta) that multiplies its
two-photon polarization matrix; the zone average of that product is the
observable polarization density matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import BACKEND
from ._kernels import impl as _kernels
from ._reduce import map_chunks, pairwise_sum
from .bands import HELICITIES, BandParams, _check_helicity, helical_dispersion
from .entanglement import BASIS, PolarizationAxis, TwoPhotonMatrix
from .pairing import (
    CHANNEL_IDS,
    GapSpec,
    dvector_magnitude,
    projected_gap,
    singlet_gap,
)

SQRT_2PI = math.sqrt(2.0 * math.pi)


def fermi_function(e, temperature: float):
    """Fermi-Dirac occupation, overflow-safe for |e|/T up to inf."""
    if temperature <= 0.0:
        raise ValueError(f"temperature must be positive, got {temperature}")
    x = np.clip(np.asarray(e, dtype=float) / temperature, -700.0, 700.0)
    return 1.0 / (1.0 + np.exp(x))


def bogoliubov_energy(k, xi: int, band: BandParams, gap: GapSpec):
    """Quasiparticle energy sqrt(eps^2 + Delta^2) on the helicity-xi band."""
    _check_helicity(xi)
    return np.hypot(helical_dispersion(k, xi, band), projected_gap(k, xi, gap))


@dataclass(frozen=True)
class QuasiparticleState:
    """Band energy, projected gap, and quasiparticle energy at one (k, xi)."""

    eps: float
    delta: float
    e_qp: float


def quasiparticle_state(
    k, xi: int, band: BandParams, gap: GapSpec
) -> QuasiparticleState:
    _check_helicity(xi)
    eps = float(helical_dispersion(k, xi, band))
    delta = float(projected_gap(k, xi, gap))
    return QuasiparticleState(eps=eps, delta=delta, e_qp=math.hypot(eps, delta))


def gaussian_delta(x, sigma: float):
    """Normalized Gaussian representation of the energy-conserving delta."""
    if sigma <= 0.0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    x = np.asarray(x, dtype=float)
    return np.exp(-(x * x) / (2.0 * sigma * sigma)) / (sigma * SQRT_2PI)


@dataclass(frozen=True)
class PhotonPair:
    """Photon frequencies constrained to omega1 + omega2 = 2 * band_gap."""

    omega1: float
    omega2: float
    band_gap: float

    def __post_init__(self):
        if abs(self.omega1 + self.omega2 - 2.0 * self.band_gap) > 1e-12:
            raise ValueError(
                "photon frequencies must satisfy omega1 + omega2 = 2*band_gap; "
                f"got {self.omega1} + {self.omega2} != 2*{self.band_gap}"
            )

    @classmethod
    def balanced(cls, band_gap: float) -> "PhotonPair":
        return cls(omega1=band_gap, omega2=band_gap, band_gap=band_gap)

    @classmethod
    def detuned(cls, band_gap: float, detuning: float) -> "PhotonPair":
        return cls(
            omega1=band_gap + detuning,
            omega2=band_gap - detuning,
            band_gap=band_gap,
        )

    def swapped(self) -> "PhotonPair":
        return PhotonPair(
            omega1=self.omega2, omega2=self.omega1, band_gap=self.band_gap
        )


def _floor_magnitude(x: float, sigma: float) -> float:
    if abs(x) >= sigma:
        return x
    return sigma if x >= 0.0 else -sigma


def bracket_terms(
    omega1: float,
    omega2: float,
    eps: float,
    e_qp: float,
    temperature: float,
    sigma_delta: float,
) -> np.ndarray:
    """The seven intermediate-state terms at ordered frequencies (w1, w2).

    Squared single-factor denominators are regularized as x^2 + sigma^2;
    each factor of a product denominator is floored in magnitude at sigma.
    The full weight symmetrizes these over the frequency exchange.
    """
    sig = sigma_delta
    s2 = sig * sig
    nf = float(fermi_function(e_qp, temperature))
    omf = 1.0 - nf
    x1 = e_qp - omega1 + eps
    x2 = e_qp + omega1 - eps
    y1 = e_qp - omega2 + eps
    y2 = e_qp + omega2 - eps
    fx1 = _floor_magnitude(x1, sig)
    fx2 = _floor_magnitude(x2, sig)
    fy1 = _floor_magnitude(y1, sig)
    fy2 = _floor_magnitude(y2, sig)
    return np.array(
        [
            nf * nf / (x1 * x1 + s2),
            omf / (x2 * x2 + s2),
            2.0 * nf * nf / (fx2 * fx2),
            nf * nf / (fx1 * fy1),
            omf * omf / (fx2 * fy2),
            nf * omf / (fx2 * fy1),
            nf * omf / (fx1 * fy2),
        ]
    )


def recombination_weight(
    k,
    xi: int,
    pair: PhotonPair,
    band: BandParams,
    gap: GapSpec,
    temperature: float,
    sigma_delta: float,
    b_matrix_element: float = 1.0,
) -> float:
    """Scalar emission weight of one quasiparticle state.

    Combines thermal occupation, the gap coherence factor, the seven-term
    intermediate-state bracket (symmetrized over the photon frequencies),
    and a Gaussian line for overall energy conservation.  Returns 0 at gap
    nodes.
    """
    _check_helicity(xi)
    if sigma_delta <= 0.0:
        raise ValueError(f"sigma_delta must be positive, got {sigma_delta}")
    psi = float(singlet_gap(k, gap))
    dmag = float(dvector_magnitude(k, gap))
    if math.hypot(psi, dmag) <= gap.node_tol:
        return 0.0
    eps = float(helical_dispersion(k, xi, band))
    delta = psi + xi * dmag
    e_qp = math.hypot(eps, delta)
    if e_qp == 0.0:
        return 0.0
    bracket = bracket_terms(
        pair.omega1, pair.omega2, eps, e_qp, temperature, sigma_delta
    ).sum() + bracket_terms(
        pair.omega2, pair.omega1, eps, e_qp, temperature, sigma_delta
    ).sum()
    prefactor = (
        4.0
        * math.pi
        * b_matrix_element ** 4
        * (delta / (2.0 * e_qp)) ** 2
        * float(fermi_function(-e_qp, temperature)) ** 2
    )
    line = float(
        gaussian_delta(pair.omega1 + pair.omega2 - 2.0 * eps, sigma_delta)
    )
    return prefactor * float(bracket) * line


@dataclass(frozen=True)
class EmissionResult:
    """Accumulated polarization density matrix and its unit-trace form.

    ``rho_normalized`` is None when nothing emits (all weights zero, e.g.
    far off resonance); ``meta`` echoes the parameters that produced the
    result.
    """

    rho: TwoPhotonMatrix
    rho_normalized: TwoPhotonMatrix | None
    meta: dict

    def to_json_dict(self) -> dict:
        return {
            "basis": list(BASIS),
            "rho": self.rho.values.tolist(),
            "rho_normalized": None
            if self.rho_normalized is None
            else self.rho_normalized.values.tolist(),
            "trace": self.rho.trace,
            "meta": dict(self.meta),
        }


def two_photon_density_matrix(
    pair: PhotonPair,
    band: BandParams,
    gap: GapSpec,
    pol: PolarizationAxis,
    grid,
    temperature: float,
    sigma_delta: float,
    b_matrix_element: float = 1.0,
    threads: int = 1,
) -> EmissionResult:
    """Zone- and helicity-averaged weighted polarization density matrix."""
    if temperature <= 0.0:
        raise ValueError(f"temperature must be positive, got {temperature}")
    if sigma_delta <= 0.0:
        raise ValueError(f"sigma_delta must be positive, got {sigma_delta}")
    px, py, _ = pol.vec
    cid = CHANNEL_IDS[gap.channel]

    def make_part(xi):
        def part(lo, hi):
            s_opp, s_same = _kernels.emission_sums(
                grid.kx[lo:hi],
                grid.ky[lo:hi],
                xi,
                band.t,
                band.mu,
                band.lam,
                band.theta_soc,
                cid,
                gap.r,
                gap.delta0,
                gap.theta_gap,
                px,
                py,
                pair.omega1,
                pair.omega2,
                temperature,
                sigma_delta,
                b_matrix_element,
                gap.node_tol,
            )
            return np.array([s_opp, s_same])

        return part

    partials = []
    for xi in HELICITIES:
        partials.extend(map_chunks(make_part(xi), grid.size, threads))
    s_opp, s_same = pairwise_sum(partials)
    norm = 2.0 * grid.size
    rho = TwoPhotonMatrix.from_weights(w_same=s_same / norm, w_opp=s_opp / norm)
    meta = {
        "backend": BACKEND,
        "band_gap": pair.band_gap,
        "omega1": pair.omega1,
        "omega2": pair.omega2,
        "grid_n": grid.n,
        "temperature": temperature,
        "sigma_delta": sigma_delta,
        "b_matrix_element": b_matrix_element,
        "channel": gap.channel.value,
        "r": gap.r,
        "delta0": gap.delta0,
        "theta_gap": gap.theta_gap,
        "theta": pol.theta,
        "phi": pol.phi,
        "t": band.t,
        "mu": band.mu,
        "lam": band.lam,
        "theta_soc": band.theta_soc,
    }
    return EmissionResult(rho=rho, rho_normalized=rho.normalized(), meta=meta)
