# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel core.

Formula-for-formula mirror of `pure.py`; that file documents the
semantics.  Loops run without the GIL so chunked calls can overlap when a
thread pool is in use.
"""

from libc.math cimport M_PI, ceil, cos, exp, fabs, floor, hypot, sin, sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef double SQRT_2PI = sqrt(2.0 * M_PI)


cdef inline double _sf(int channel_id, double kx, double ky) nogil:
    if channel_id == 0:
        return 1.0
    elif channel_id == 1:
        return cos(kx) + cos(ky)
    elif channel_id == 2:
        return cos(kx) - cos(ky)
    return sin(kx) * sin(ky)


cdef inline double _fermi(double e, double temperature) nogil:
    cdef double x = e / temperature
    if x > 700.0:
        x = 700.0
    elif x < -700.0:
        x = -700.0
    return 1.0 / (1.0 + exp(x))


cdef inline double _floor_mag(double x, double sigma) nogil:
    if fabs(x) >= sigma:
        return x
    return sigma if x >= 0.0 else -sigma


cdef void _check_channel(int channel_id):
    if channel_id < 0 or channel_id > 3:
        raise ValueError(f"unknown channel id {channel_id}")


def helical_energies(kx, ky, double t, double mu, double lam,
                     double theta_soc, int xi):
    cdef const double[::1] vx = np.ascontiguousarray(kx, dtype=np.float64)
    cdef const double[::1] vy = np.ascontiguousarray(ky, dtype=np.float64)
    cdef Py_ssize_t n = vx.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double cb = cos(theta_soc), sb = sin(theta_soc)
    cdef double sx, sy, gmag
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            sx = sin(vx[i])
            sy = sin(vy[i])
            gmag = hypot(cb * sy + sb * sx, -cb * sx - sb * sy)
            out[i] = -mu - 2.0 * t * (cos(vx[i]) + cos(vy[i])) + xi * lam * gmag
    return out_arr


def smeared_dos(energies, mesh, double sigma):
    """Mesh must be uniform ascending (the caller validates this)."""
    cdef const double[::1] es = np.ascontiguousarray(energies, dtype=np.float64)
    cdef const double[::1] ms = np.ascontiguousarray(mesh, dtype=np.float64)
    cdef Py_ssize_t n = es.shape[0], m = ms.shape[0]
    out_arr = np.zeros(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double m0 = ms[0]
    cdef double dm = (ms[m - 1] - ms[0]) / (m - 1) if m > 1 else 1.0
    cdef double inv = 1.0 / (2.0 * sigma * sigma)
    cdef double span = 8.0 * sigma
    cdef double e, d
    cdef Py_ssize_t i, j, jlo, jhi
    with nogil:
        for i in range(n):
            e = es[i]
            jlo = <Py_ssize_t>ceil((e - span - m0) / dm)
            jhi = <Py_ssize_t>floor((e + span - m0) / dm)
            if jlo < 0:
                jlo = 0
            if jhi > m - 1:
                jhi = m - 1
            for j in range(jlo, jhi + 1):
                d = ms[j] - e
                out[j] += exp(-(d * d) * inv)
    out_arr /= sigma * SQRT_2PI
    return out_arr


def purity_sum(kx, ky, int channel_id, double r, double delta0,
               double theta_gap, double px, double py, double node_tol):
    _check_channel(channel_id)
    cdef const double[::1] vx = np.ascontiguousarray(kx, dtype=np.float64)
    cdef const double[::1] vy = np.ascontiguousarray(ky, dtype=np.float64)
    cdef Py_ssize_t n = vx.shape[0]
    cdef double cg = cos(theta_gap), sg = sin(theta_gap)
    cdef double scale = (1.0 - r) * delta0
    cdef double tol2 = node_tol * node_tol
    cdef double sx, sy, psi, dx, dy, d2, norm2, a2, b2, dmag, cv, c2, s2v
    cdef double w_opp, w_same, total = 0.0
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            sx = sin(vx[i])
            sy = sin(vy[i])
            psi = (r * delta0) * _sf(channel_id, vx[i], vy[i])
            dx = scale * (cg * sy + sg * sx)
            dy = scale * (-cg * sx - sg * sy)
            d2 = dx * dx + dy * dy
            norm2 = psi * psi + d2
            if norm2 <= tol2:
                continue
            a2 = psi * psi / norm2
            b2 = d2 / norm2
            dmag = sqrt(d2)
            if dmag > 0.0:
                cv = (px * dx + py * dy) / dmag
                if cv > 1.0:
                    cv = 1.0
                elif cv < -1.0:
                    cv = -1.0
            else:
                cv = 0.0
            c2 = cv * cv
            s2v = 1.0 - c2
            w_opp = a2 + b2 * c2
            w_same = 2.0 * b2 * s2v
            total += 0.25 * w_same * w_same + 2.0 * w_opp * w_opp
    return 2.0 * total


def emission_sums(kx, ky, int xi, double t, double mu, double lam,
                  double theta_soc, int channel_id, double r, double delta0,
                  double theta_gap, double px, double py, double omega1,
                  double omega2, double temperature, double sigma_delta,
                  double b_elem, double node_tol):
    _check_channel(channel_id)
    cdef const double[::1] vx = np.ascontiguousarray(kx, dtype=np.float64)
    cdef const double[::1] vy = np.ascontiguousarray(ky, dtype=np.float64)
    cdef Py_ssize_t n = vx.shape[0]
    cdef double cb = cos(theta_soc), sb = sin(theta_soc)
    cdef double cg = cos(theta_gap), sg = sin(theta_gap)
    cdef double scale = (1.0 - r) * delta0
    cdef double tol2 = node_tol * node_tol
    cdef double sig = sigma_delta, s2 = sigma_delta * sigma_delta
    cdef double bpow = b_elem * b_elem * b_elem * b_elem
    cdef double sx, sy, eps, psi, dx, dy, d2, norm2, a2, b2, dmag, cv, c2
    cdef double delta, e_qp, nf, omf, nfm, nf2
    cdef double x1, x2, y1, y2, fx1, fx2, fy1, fy2
    cdef double bracket, swapped, coherence, prefactor, line, zeta, arg
    cdef double w_opp, w_same, s_opp = 0.0, s_same = 0.0
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            sx = sin(vx[i])
            sy = sin(vy[i])
            eps = (-mu - 2.0 * t * (cos(vx[i]) + cos(vy[i]))
                   + xi * lam * hypot(cb * sy + sb * sx, -cb * sx - sb * sy))
            psi = (r * delta0) * _sf(channel_id, vx[i], vy[i])
            dx = scale * (cg * sy + sg * sx)
            dy = scale * (-cg * sx - sg * sy)
            d2 = dx * dx + dy * dy
            norm2 = psi * psi + d2
            if norm2 <= tol2:
                continue
            dmag = hypot(dx, dy)
            delta = psi + xi * dmag
            e_qp = hypot(eps, delta)
            if e_qp <= 0.0:
                continue
            a2 = psi * psi / norm2
            b2 = d2 / norm2
            if dmag > 0.0:
                cv = (px * dx + py * dy) / dmag
                if cv > 1.0:
                    cv = 1.0
                elif cv < -1.0:
                    cv = -1.0
            else:
                cv = 0.0
            c2 = cv * cv
            w_opp = a2 + b2 * c2
            w_same = 2.0 * b2 * (1.0 - c2)

            nf = _fermi(e_qp, temperature)
            omf = 1.0 - nf
            nfm = _fermi(-e_qp, temperature)
            nf2 = nf * nf
            x1 = e_qp - omega1 + eps
            x2 = e_qp + omega1 - eps
            y1 = e_qp - omega2 + eps
            y2 = e_qp + omega2 - eps
            fx1 = _floor_mag(x1, sig)
            fx2 = _floor_mag(x2, sig)
            fy1 = _floor_mag(y1, sig)
            fy2 = _floor_mag(y2, sig)
            bracket = (nf2 / (x1 * x1 + s2)
                       + omf / (x2 * x2 + s2)
                       + 2.0 * nf2 / (fx2 * fx2)
                       + nf2 / (fx1 * fy1)
                       + omf * omf / (fx2 * fy2)
                       + nf * omf / (fx2 * fy1)
                       + nf * omf / (fx1 * fy2))
            swapped = (nf2 / (y1 * y1 + s2)
                       + omf / (y2 * y2 + s2)
                       + 2.0 * nf2 / (fy2 * fy2)
                       + nf2 / (fy1 * fx1)
                       + omf * omf / (fy2 * fx2)
                       + nf * omf / (fy2 * fx1)
                       + nf * omf / (fy1 * fx2))
            coherence = (delta / (2.0 * e_qp)) ** 2
            prefactor = (4.0 * M_PI) * bpow * coherence * (nfm * nfm)
            arg = omega1 + omega2 - 2.0 * eps
            line = exp(-(arg * arg) / (2.0 * s2)) / (sig * SQRT_2PI)
            zeta = prefactor * (bracket + swapped) * line
            s_opp += zeta * w_opp
            s_same += zeta * w_same
    return s_opp, s_same
