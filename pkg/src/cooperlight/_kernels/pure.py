"""NumPy fallback kernels.

These mirror the compiled extension in `_native.pyx` exactly: same
formulas, same guards, same channel ids.  The compiled core is preferred
at import time when available; either backend must pass the same tests.

Channel ids: 0 = s, 1 = extended s, 2 = d_x2-y2, 3 = d_xy.
"""

from __future__ import annotations

import math

import numpy as np

SQRT_2PI = math.sqrt(2.0 * math.pi)


def _structure_factor(channel_id: int, kx, ky):
    if channel_id == 0:
        return np.ones_like(kx)
    if channel_id == 1:
        return np.cos(kx) + np.cos(ky)
    if channel_id == 2:
        return np.cos(kx) - np.cos(ky)
    if channel_id == 3:
        return np.sin(kx) * np.sin(ky)
    raise ValueError(f"unknown channel id {channel_id}")


def _fermi(e, temperature):
    # exp(700) is still finite, so clipping the argument avoids overflow
    # while leaving any physically distinguishable value untouched.
    x = np.clip(e / temperature, -700.0, 700.0)
    return 1.0 / (1.0 + np.exp(x))


def _floor_magnitude(x, sigma):
    return np.where(np.abs(x) >= sigma, x, np.where(x >= 0.0, sigma, -sigma))


def helical_energies(kx, ky, t, mu, lam, theta_soc, xi):
    """Band energies eps_k + xi * lam * |g_k| for one helicity."""
    sx = np.sin(kx)
    sy = np.sin(ky)
    cb = math.cos(theta_soc)
    sb = math.sin(theta_soc)
    # hypot keeps |g| accurate where the two components nearly cancel
    gmag = np.hypot(cb * sy + sb * sx, -cb * sx - sb * sy)
    return -mu - 2.0 * t * (np.cos(kx) + np.cos(ky)) + xi * lam * gmag


def smeared_dos(energies, mesh, sigma):
    """Sum of unit-weight normal kernels, evaluated on the mesh.

    The mesh is assumed ascending; contributions beyond 8 sigma are
    dropped (they are below double precision at the scale of the total).
    """
    es = np.sort(np.asarray(energies, dtype=float))
    mesh = np.asarray(mesh, dtype=float)
    lo = np.searchsorted(es, mesh - 8.0 * sigma, side="left")
    hi = np.searchsorted(es, mesh + 8.0 * sigma, side="right")
    out = np.zeros(mesh.size)
    inv = 1.0 / (2.0 * sigma * sigma)
    for j in range(mesh.size):
        if hi[j] > lo[j]:
            d = mesh[j] - es[lo[j] : hi[j]]
            out[j] = np.exp(-(d * d) * inv).sum()
    return out / (sigma * SQRT_2PI)


def _gap_fields(kx, ky, channel_id, r, delta0, theta_gap):
    """Singlet amplitude and triplet d-vector components on the chunk."""
    psi = (r * delta0) * _structure_factor(channel_id, kx, ky)
    sx = np.sin(kx)
    sy = np.sin(ky)
    cg = math.cos(theta_gap)
    sg = math.sin(theta_gap)
    scale = (1.0 - r) * delta0
    dx = scale * (cg * sy + sg * sx)
    dy = scale * (-cg * sx - sg * sy)
    return psi, dx, dy


def _polarization_weights(psi, dx, dy, px, py, node_tol):
    """Channel weights (w_opp, w_same) and the defined-point mask.

    w_opp multiplies the opposite-circulation entries (the central 2x2
    block), w_same the co-circulating diagonal corners.  Points inside the
    node tolerance get zero weights and a False mask.
    """
    d2 = dx * dx + dy * dy
    norm2 = psi * psi + d2
    defined = norm2 > node_tol * node_tol
    safe = np.where(defined, norm2, 1.0)
    a2 = psi * psi / safe
    b2 = d2 / safe
    dmag = np.sqrt(d2)
    has_d = dmag > 0.0
    cos_v = np.where(has_d, (px * dx + py * dy) / np.where(has_d, dmag, 1.0), 0.0)
    cos_v = np.clip(cos_v, -1.0, 1.0)
    c2 = cos_v * cos_v
    w_opp = a2 + b2 * c2
    w_same = 2.0 * b2 * (1.0 - c2)
    return w_opp, w_same, defined


def purity_sum(kx, ky, channel_id, r, delta0, theta_gap, px, py, node_tol):
    """Purity summand accumulated over the chunk, both helicities.

    The summand depends on the helicity only through even powers of the
    triplet fraction, so both helicities contribute equally; the factor 2
    accounts for that.
    """
    psi, dx, dy = _gap_fields(kx, ky, channel_id, r, delta0, theta_gap)
    w_opp, w_same, defined = _polarization_weights(psi, dx, dy, px, py, node_tol)
    summand = 0.25 * w_same * w_same + 2.0 * w_opp * w_opp
    return 2.0 * float(np.sum(np.where(defined, summand, 0.0)))


def emission_sums(
    kx,
    ky,
    xi,
    t,
    mu,
    lam,
    theta_soc,
    channel_id,
    r,
    delta0,
    theta_gap,
    px,
    py,
    omega1,
    omega2,
    temperature,
    sigma_delta,
    b_elem,
    node_tol,
):
    """Emission-weighted sums for one helicity over the chunk.

    Returns (sum of zeta * w_opp, sum of zeta * w_same) where zeta is the
    per-state recombination weight at photon frequencies (omega1, omega2).
    """
    eps = helical_energies(kx, ky, t, mu, lam, theta_soc, xi)
    psi, dx, dy = _gap_fields(kx, ky, channel_id, r, delta0, theta_gap)
    dmag = np.hypot(dx, dy)
    delta = psi + xi * dmag
    e_qp = np.hypot(eps, delta)

    w_opp, w_same, defined = _polarization_weights(
        psi, dx, dy, px, py, node_tol
    )
    live = defined & (e_qp > 0.0)

    nf = _fermi(e_qp, temperature)
    omf = 1.0 - nf
    nfm = _fermi(-e_qp, temperature)
    sig = sigma_delta
    s2 = sig * sig

    x1 = e_qp - omega1 + eps
    x2 = e_qp + omega1 - eps
    y1 = e_qp - omega2 + eps
    y2 = e_qp + omega2 - eps
    fx1 = _floor_magnitude(x1, sig)
    fx2 = _floor_magnitude(x2, sig)
    fy1 = _floor_magnitude(y1, sig)
    fy2 = _floor_magnitude(y2, sig)

    nf2 = nf * nf
    bracket = (
        nf2 / (x1 * x1 + s2)
        + omf / (x2 * x2 + s2)
        + 2.0 * nf2 / (fx2 * fx2)
        + nf2 / (fx1 * fy1)
        + omf * omf / (fx2 * fy2)
        + nf * omf / (fx2 * fy1)
        + nf * omf / (fx1 * fy2)
    )
    # frequency-exchanged copy of the same seven terms
    swapped = (
        nf2 / (y1 * y1 + s2)
        + omf / (y2 * y2 + s2)
        + 2.0 * nf2 / (fy2 * fy2)
        + nf2 / (fy1 * fx1)
        + omf * omf / (fy2 * fx2)
        + nf * omf / (fy2 * fx1)
        + nf * omf / (fy1 * fx2)
    )

    safe_e = np.where(live, e_qp, 1.0)
    coherence = (delta / (2.0 * safe_e)) ** 2
    prefactor = (4.0 * math.pi) * b_elem ** 4 * coherence * (nfm * nfm)
    line = np.exp(-((omega1 + omega2 - 2.0 * eps) ** 2) / (2.0 * s2)) / (
        sig * SQRT_2PI
    )
    zeta = np.where(live, prefactor * (bracket + swapped) * line, 0.0)
    return float(np.sum(zeta * w_opp)), float(np.sum(zeta * w_same))
