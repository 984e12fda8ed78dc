# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same API and semantics as ``_pykernels``."""
from libc.math cimport sin, cos, exp, sqrt, isfinite

import numpy as np

cdef enum:
    NSTATE = 10
    NRED = 6
    ST_OK = 0
    ST_RADIUS = 1
    ST_NONFINITE = 2
    ST_AXIS = 3

STATUS_OK = ST_OK
STATUS_RADIUS = ST_RADIUS
STATUS_NONFINITE = ST_NONFINITE
STATUS_AXIS = ST_AXIS


cdef class ProductTable:
    cdef int _index[64]
    cdef double _sign[64]
    cdef readonly tuple index
    cdef readonly tuple sign

    def __init__(self, index, sign):
        if len(index) != 64 or len(sign) != 64:
            raise ValueError("product table must have 64 entries")
        self.index = tuple(int(k) for k in index)
        self.sign = tuple(float(s) for s in sign)
        cdef int n
        for n in range(64):
            self._index[n] = self.index[n]
            self._sign[n] = self.sign[n]

    def product(self, a, b):
        cdef double x[8]
        cdef double y[8]
        cdef double out[8]
        cdef int i, j, n
        for i in range(8):
            x[i] = a[i]
            y[i] = b[i]
            out[i] = 0.0
        for i in range(8):
            for j in range(8):
                n = 8 * i + j
                out[self._index[n]] += self._sign[n] * x[i] * y[j]
        return (out[0], out[1], out[2], out[3], out[4], out[5], out[6], out[7])


cdef int _geo_acc(const double *y, double mu, double inv_ell, double *acc) noexcept nogil:
    cdef double x0 = y[0], r = y[1], th = y[2]
    cdef double u0 = y[5], u1 = y[6], u2 = y[7], u3 = y[8], u4 = y[9]
    cdef double s, co, amp, pot, big_a, da0, da1, p0, tsq
    if not r > 0.0:
        return 1
    s = sin(th)
    if s == 0.0:
        return 1
    co = cos(th)
    amp = exp(x0 * inv_ell) if inv_ell != 0.0 else 1.0
    pot = -mu * amp / r
    big_a = 1.0 + 2.0 * pot
    da0 = 2.0 * pot * inv_ell
    da1 = 2.0 * mu * amp / (r * r)
    p0 = -da0 * u0 - da1 * u1
    tsq = u0 * u0 + u4 * u4
    acc[0] = (-0.5 * da0 * u0 * u0 - da1 * u0 * u1 + 0.5 * da0 * u4 * u4) / big_a
    acc[1] = -0.5 * da1 * tsq + r * u2 * u2 + r * s * s * u3 * u3
    acc[2] = -2.0 * u1 * u2 / r + s * co * u3 * u3
    acc[3] = -2.0 * u1 * u3 / r - 2.0 * co * u2 * u3 / s
    acc[4] = u4 * p0 / big_a
    return 0


cdef int _geo_rhs(const double *y, double mu, double inv_ell, double *dy) noexcept nogil:
    cdef int i
    for i in range(5):
        dy[i] = y[5 + i]
    return _geo_acc(y, mu, inv_ell, dy + 5)


cdef int _classify(const double *y) noexcept nogil:
    cdef int i
    for i in range(NSTATE):
        if not isfinite(y[i]):
            return ST_NONFINITE
    if not y[1] > 0.0:
        return ST_RADIUS
    if sin(y[2]) == 0.0:
        return ST_AXIS
    return ST_OK


def geodesic_acceleration(y, double mu, double inv_ell):
    cdef double buf[NSTATE]
    cdef double acc[5]
    cdef int i
    for i in range(NSTATE):
        buf[i] = y[i]
    if _geo_acc(buf, mu, inv_ell, acc):
        return None
    return (acc[0], acc[1], acc[2], acc[3], acc[4])


def integrate_geodesic(y0, long steps, double h, double mu, double inv_ell):
    out = np.empty((steps + 1, NSTATE), dtype=np.float64)
    cdef double[:, ::1] rows = out
    cdef double y[NSTATE]
    cdef double tmp[NSTATE]
    cdef double k1[NSTATE]
    cdef double k2[NSTATE]
    cdef double k3[NSTATE]
    cdef double k4[NSTATE]
    cdef int i, status
    cdef long done = 0
    for i in range(NSTATE):
        y[i] = y0[i]
        rows[0, i] = y[i]
    status = _classify(y)
    with nogil:
        while status == ST_OK and done < steps:
            if _geo_rhs(y, mu, inv_ell, k1):
                status = ST_RADIUS
                break
            for i in range(NSTATE):
                tmp[i] = y[i] + 0.5 * h * k1[i]
            if _geo_rhs(tmp, mu, inv_ell, k2):
                status = _stage_failure(_classify(tmp))
                break
            for i in range(NSTATE):
                tmp[i] = y[i] + 0.5 * h * k2[i]
            if _geo_rhs(tmp, mu, inv_ell, k3):
                status = _stage_failure(_classify(tmp))
                break
            for i in range(NSTATE):
                tmp[i] = y[i] + h * k3[i]
            if _geo_rhs(tmp, mu, inv_ell, k4):
                status = _stage_failure(_classify(tmp))
                break
            for i in range(NSTATE):
                tmp[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            status = _classify(tmp)
            if status != ST_OK:
                break
            done += 1
            for i in range(NSTATE):
                y[i] = tmp[i]
                rows[done, i] = y[i]
    return out[:done + 1].copy(), status, done


cdef int _red_rhs(const double *y, double gm, double a0, double *dy) noexcept nogil:
    cdef double r = sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2])
    cdef double f
    if not r > 0.0:
        return 1
    f = -(gm / (r * r * r) + a0 / r)
    dy[0] = y[3]
    dy[1] = y[4]
    dy[2] = y[5]
    dy[3] = f * y[0]
    dy[4] = f * y[1]
    dy[5] = f * y[2]
    return 0


cdef inline int _stage_failure(int status) noexcept nogil:
    # a stage whose right-hand side failed is never OK; underflow of r lands here
    return ST_RADIUS if status == ST_OK else status


cdef int _classify_reduced(const double *y) noexcept nogil:
    cdef int i
    for i in range(NRED):
        if not isfinite(y[i]):
            return ST_NONFINITE
    if y[0] == 0.0 and y[1] == 0.0 and y[2] == 0.0:
        return ST_RADIUS
    return ST_OK


def integrate_reduced(y0, long steps, double h, double gm, double a0):
    out = np.empty((steps + 1, NRED), dtype=np.float64)
    cdef double[:, ::1] rows = out
    cdef double y[NRED]
    cdef double tmp[NRED]
    cdef double k1[NRED]
    cdef double k2[NRED]
    cdef double k3[NRED]
    cdef double k4[NRED]
    cdef int i, status
    cdef long done = 0
    for i in range(NRED):
        y[i] = y0[i]
        rows[0, i] = y[i]
    status = _classify_reduced(y)
    with nogil:
        while status == ST_OK and done < steps:
            if _red_rhs(y, gm, a0, k1):
                status = ST_RADIUS
                break
            for i in range(NRED):
                tmp[i] = y[i] + 0.5 * h * k1[i]
            if _red_rhs(tmp, gm, a0, k2):
                status = _stage_failure(_classify_reduced(tmp))
                break
            for i in range(NRED):
                tmp[i] = y[i] + 0.5 * h * k2[i]
            if _red_rhs(tmp, gm, a0, k3):
                status = _stage_failure(_classify_reduced(tmp))
                break
            for i in range(NRED):
                tmp[i] = y[i] + h * k3[i]
            if _red_rhs(tmp, gm, a0, k4):
                status = _stage_failure(_classify_reduced(tmp))
                break
            for i in range(NRED):
                tmp[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            status = _classify_reduced(tmp)
            if status != ST_OK:
                break
            done += 1
            for i in range(NRED):
                y[i] = tmp[i]
                rows[done, i] = y[i]
    return out[:done + 1].copy(), status, done
