# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled double-differentiation loops for the built-in energy models.

Mirrors the NumPy reference path in ``hyperdiff.numdiff`` for models that
advertise a kernel spec ``(kind, params)``. Every routine returns a status
code; the Python wrappers translate non-zero codes into exceptions.

Parameter layouts (flat float64):

* kind 0, Neo-Hookean: ``[c10, d, volumetric]``
* kind 1, Holzapfel:   ``[c10, d, k1, k2, a0x, a0y, a0z, g0x, g0y, g0z, volumetric]``
"""
from libc.math cimport pow, exp, log, isfinite

import numpy as np

from .errors import ExponentOverflow, NonFiniteEnergy, NonPositiveJacobian, SingularTensor

cdef enum:
    ST_OK = 0
    ST_NONFINITE = 1
    ST_OVERFLOW = 2
    ST_SINGULAR = 3
    ST_JACOBIAN = 4

cdef enum:
    NEO_HOOKEAN = 0
    HOLZAPFEL = 1

cdef double EXP_CAP = 700.0
cdef double SINGULAR_DET = 1e-14
cdef int PI[6]
cdef int PJ[6]
PI[:] = [0, 1, 2, 0, 0, 1]
PJ[:] = [0, 1, 2, 1, 2, 2]

ctypedef int (*energy_fn)(const double* p, const double* F, double* out) noexcept nogil


cdef inline double det3(const double* a) noexcept nogil:
    return (a[0] * (a[4] * a[8] - a[5] * a[7])
            - a[1] * (a[3] * a[8] - a[5] * a[6])
            + a[2] * (a[3] * a[7] - a[4] * a[6]))


cdef int inv_t(const double* t, double* out) noexcept nogil:
    cdef double d = det3(t)
    if not (d >= SINGULAR_DET or d <= -SINGULAR_DET):
        return ST_SINGULAR
    out[0] = (t[4] * t[8] - t[5] * t[7]) / d
    out[1] = (t[5] * t[6] - t[3] * t[8]) / d
    out[2] = (t[3] * t[7] - t[4] * t[6]) / d
    out[3] = (t[2] * t[7] - t[1] * t[8]) / d
    out[4] = (t[0] * t[8] - t[2] * t[6]) / d
    out[5] = (t[1] * t[6] - t[0] * t[7]) / d
    out[6] = (t[1] * t[5] - t[2] * t[4]) / d
    out[7] = (t[2] * t[3] - t[0] * t[5]) / d
    out[8] = (t[0] * t[4] - t[1] * t[3]) / d
    return ST_OK


cdef int nh_energy(const double* p, const double* F, double* out) noexcept nogil:
    cdef double J = det3(F)
    cdef double trc = 0.0
    cdef int k
    if not J > 0.0:
        return ST_JACOBIAN
    for k in range(9):
        trc += F[k] * F[k]
    cdef double psi = p[0] * (pow(J, -2.0 / 3.0) * trc - 3.0)
    if p[2] != 0.0:
        psi += (J - 1.0) * (J - 1.0) / p[1]
    out[0] = psi
    return ST_OK if isfinite(psi) else ST_NONFINITE


cdef inline double stretch_sq(const double* F, const double* a) noexcept nogil:
    # a . (F^T F) a = |F a|^2
    cdef double x = F[0] * a[0] + F[1] * a[1] + F[2] * a[2]
    cdef double y = F[3] * a[0] + F[4] * a[1] + F[5] * a[2]
    cdef double z = F[6] * a[0] + F[7] * a[1] + F[8] * a[2]
    return x * x + y * y + z * z


cdef int hz_energy(const double* p, const double* F, double* out) noexcept nogil:
    cdef double J = det3(F)
    cdef double trc = 0.0
    cdef int k
    if not J > 0.0:
        return ST_JACOBIAN
    for k in range(9):
        trc += F[k] * F[k]
    cdef double jm23 = pow(J, -2.0 / 3.0)
    cdef double i4 = jm23 * stretch_sq(F, p + 4)
    cdef double i6 = jm23 * stretch_sq(F, p + 7)
    cdef double x4 = p[3] * (i4 - 1.0) * (i4 - 1.0)
    cdef double x6 = p[3] * (i6 - 1.0) * (i6 - 1.0)
    if x4 > EXP_CAP or x6 > EXP_CAP:
        return ST_OVERFLOW
    cdef double psi = p[0] * (jm23 * trc - 3.0)
    psi += p[2] / (2.0 * p[3]) * ((exp(x4) - 1.0) + (exp(x6) - 1.0))
    if p[10] != 0.0:
        psi += ((J * J - 1.0) / 2.0 - log(J)) / p[1]
    out[0] = psi
    return ST_OK if isfinite(psi) else ST_NONFINITE


cdef energy_fn pick(int kind) noexcept nogil:
    if kind == NEO_HOOKEAN:
        return nh_energy
    return hz_energy


cdef int pk2_c(energy_fn f, const double* p, const double* F, double eps, double* S) noexcept nogil:
    cdef double fit[9]
    cdef double fh[9]
    cdef double psi0, psi
    cdef int st, s, a, k, i, j
    st = inv_t(F, fit)
    if st:
        return st
    st = f(p, F, &psi0)
    if st:
        return st
    for s in range(6):
        i = PI[s]
        j = PJ[s]
        for k in range(9):
            fh[k] = F[k]
        # F + eps/2 F^-T (e_i e_j + e_j e_i)
        for a in range(3):
            fh[3 * a + j] += 0.5 * eps * fit[3 * a + i]
            fh[3 * a + i] += 0.5 * eps * fit[3 * a + j]
        st = f(p, fh, &psi)
        if st:
            return st
        S[3 * i + j] = (psi - psi0) / eps
        S[3 * j + i] = S[3 * i + j]
    return ST_OK


cdef int cauchy_c(energy_fn f, const double* p, const double* F, double eps, double* sig) noexcept nogil:
    cdef double S[9]
    cdef double FS[9]
    cdef double raw[9]
    cdef double J
    cdef int st, a, b, c
    J = det3(F)
    if not J > 0.0:
        return ST_JACOBIAN
    st = pk2_c(f, p, F, eps, S)
    if st:
        return st
    for a in range(3):
        for b in range(3):
            FS[3 * a + b] = F[3 * a] * S[b] + F[3 * a + 1] * S[3 + b] + F[3 * a + 2] * S[6 + b]
    for a in range(3):
        for b in range(3):
            raw[3 * a + b] = (FS[3 * a] * F[3 * b] + FS[3 * a + 1] * F[3 * b + 1]
                              + FS[3 * a + 2] * F[3 * b + 2]) / J
    for a in range(3):
        for c in range(3):
            sig[3 * a + c] = 0.5 * (raw[3 * a + c] + raw[3 * c + a])
    return ST_OK


cdef int tangent_c(energy_fn f, const double* p, const double* F, double eps_s, double eps_c,
                   bint kirchhoff, double* C) noexcept nogil:
    cdef double sig0[9]
    cdef double sig1[9]
    cdef double ft[9]
    cdef double J, Jt, col
    cdef int st, q, k, l, m, s, i, j, b
    J = det3(F)
    st = cauchy_c(f, p, F, eps_s, sig0)
    if st:
        return st
    for q in range(6):
        k = PI[q]
        l = PJ[q]
        for m in range(9):
            ft[m] = F[m]
        # F + eps_c/2 (e_k e_l F + e_l e_k F)
        for b in range(3):
            ft[3 * k + b] += 0.5 * eps_c * F[3 * l + b]
            ft[3 * l + b] += 0.5 * eps_c * F[3 * k + b]
        st = cauchy_c(f, p, ft, eps_s, sig1)
        if st:
            return st
        Jt = det3(ft)
        for s in range(6):
            i = PI[s]
            j = PJ[s]
            if kirchhoff:
                col = (Jt * sig1[3 * i + j] - J * sig0[3 * i + j]) / (J * eps_c)
            else:
                col = (sig1[3 * i + j] - sig0[3 * i + j]) / (J * eps_c)
            C[6 * s + q] = col
    for s in range(6):
        for q in range(s + 1, 6):
            col = 0.5 * (C[6 * s + q] + C[6 * q + s])
            C[6 * s + q] = col
            C[6 * q + s] = col
    return ST_OK


cdef raise_status(int st, str where):
    if st == ST_NONFINITE:
        raise NonFiniteEnergy(f"{where}: strain energy is not finite")
    if st == ST_OVERFLOW:
        raise ExponentOverflow(f"{where}: fiber exponent exceeds {EXP_CAP:g}")
    if st == ST_SINGULAR:
        raise SingularTensor(f"{where}: |det(F)| below {SINGULAR_DET:g}")
    if st == ST_JACOBIAN:
        raise NonPositiveJacobian(f"{where}: det(F) <= 0")
    raise RuntimeError(f"{where}: unknown kernel status {st}")


def energy(int kind, const double[::1] params, const double[:, ::1] F):
    cdef double out = 0.0
    cdef int st
    with nogil:
        st = pick(kind)(&params[0], &F[0, 0], &out)
    if st:
        raise_status(st, "energy")
    return out


def pk2(int kind, const double[::1] params, const double[:, ::1] F, double eps_s):
    res = np.empty((3, 3))
    cdef double[:, ::1] S = res
    cdef int st
    with nogil:
        st = pk2_c(pick(kind), &params[0], &F[0, 0], eps_s, &S[0, 0])
    if st:
        raise_status(st, "numerical_pk2")
    return res


def cauchy(int kind, const double[::1] params, const double[:, ::1] F, double eps_s):
    res = np.empty((3, 3))
    cdef double[:, ::1] sig = res
    cdef int st
    with nogil:
        st = cauchy_c(pick(kind), &params[0], &F[0, 0], eps_s, &sig[0, 0])
    if st:
        raise_status(st, "cauchy_stress")
    return res


def cauchy_many(int kind, const double[::1] params, const double[:, :, ::1] Fs, double eps_s):
    cdef Py_ssize_t n = Fs.shape[0], t
    res = np.empty((n, 3, 3))
    cdef double[:, :, ::1] sig = res
    cdef int st = ST_OK
    cdef energy_fn f = pick(kind)
    with nogil:
        for t in range(n):
            st = cauchy_c(f, &params[0], &Fs[t, 0, 0], eps_s, &sig[t, 0, 0])
            if st:
                break
    if st:
        raise_status(st, "cauchy_stress")
    return res


def tangent_jaumann(int kind, const double[::1] params, const double[:, ::1] F,
                    double eps_s, double eps_c, bint kirchhoff=True):
    res = np.empty((6, 6))
    cdef double[:, ::1] C = res
    cdef int st
    with nogil:
        st = tangent_c(pick(kind), &params[0], &F[0, 0], eps_s, eps_c, kirchhoff, &C[0, 0])
    if st:
        raise_status(st, "numerical_tangent_jaumann")
    return res
