"""Pure-Python kernels.

Reference implementation of the hot loops; ``_ckernels.pyx`` mirrors this
module function for function. Integrators return ``(rows, status, steps_done)``
where ``status`` is one of the ``STATUS_*`` codes below.
"""
import math

import numpy as np

STATUS_OK = 0
STATUS_RADIUS = 1
STATUS_NONFINITE = 2
STATUS_AXIS = 3


class ProductTable:
    """Geometric product driven by a flat 8x8 (index, sign) table."""

    def __init__(self, index, sign):
        if len(index) != 64 or len(sign) != 64:
            raise ValueError("product table must have 64 entries")
        self.index = tuple(int(k) for k in index)
        self.sign = tuple(float(s) for s in sign)
        self._terms = tuple(
            (i, j, self.index[8 * i + j], self.sign[8 * i + j])
            for i in range(8)
            for j in range(8)
        )

    def product(self, a, b):
        out = [0.0] * 8
        for i, j, k, s in self._terms:
            out[k] += s * a[i] * b[j]
        return tuple(out)


def geodesic_acceleration(y, mu, inv_ell):
    """Return ``-Gamma^a_bc u^b u^c`` for the diagonal 5D weak-field metric.

    ``y`` holds (x0..x4, u0..u4); ``mu = GM/c^2`` in meters; the potential
    amplitude scales as ``exp(x0 * inv_ell)``. Returns None at a coordinate
    singularity (r <= 0 or sin(theta) == 0).
    """
    x0, r, th = y[0], y[1], y[2]
    u0, u1, u2, u3, u4 = y[5], y[6], y[7], y[8], y[9]
    if not r > 0.0:
        return None
    s = math.sin(th)
    if s == 0.0:
        return None
    co = math.cos(th)
    amp = math.exp(x0 * inv_ell) if inv_ell else 1.0
    pot = -mu * amp / r
    big_a = 1.0 + 2.0 * pot
    da0 = 2.0 * pot * inv_ell
    da1 = 2.0 * mu * amp / (r * r)
    p0 = -da0 * u0 - da1 * u1
    tsq = u0 * u0 + u4 * u4
    a0 = (-0.5 * da0 * u0 * u0 - da1 * u0 * u1 + 0.5 * da0 * u4 * u4) / big_a
    a1 = -0.5 * da1 * tsq + r * u2 * u2 + r * s * s * u3 * u3
    a2 = -2.0 * u1 * u2 / r + s * co * u3 * u3
    a3 = -2.0 * u1 * u3 / r - 2.0 * co * u2 * u3 / s
    a4 = u4 * p0 / big_a
    return (a0, a1, a2, a3, a4)


def _geodesic_rhs(y, mu, inv_ell):
    acc = geodesic_acceleration(y, mu, inv_ell)
    if acc is None:
        return None
    return (y[5], y[6], y[7], y[8], y[9]) + acc


def _classify(y):
    for v in y:
        if not math.isfinite(v):
            return STATUS_NONFINITE
    if not y[1] > 0.0:
        return STATUS_RADIUS
    if math.sin(y[2]) == 0.0:
        return STATUS_AXIS
    return STATUS_OK


def _stage_failure(status):
    # a stage whose right-hand side failed is never OK; underflow of r lands here
    return STATUS_RADIUS if status == STATUS_OK else status


def integrate_geodesic(y0, steps, h, mu, inv_ell):
    y = tuple(float(v) for v in y0)
    rows = [y]
    status = _classify(y)
    done = 0
    while status == STATUS_OK and done < steps:
        k1 = _geodesic_rhs(y, mu, inv_ell)
        s2 = tuple(a + 0.5 * h * b for a, b in zip(y, k1))
        k2 = _geodesic_rhs(s2, mu, inv_ell)
        if k2 is None:
            status = _stage_failure(_classify(s2))
            break
        s3 = tuple(a + 0.5 * h * b for a, b in zip(y, k2))
        k3 = _geodesic_rhs(s3, mu, inv_ell)
        if k3 is None:
            status = _stage_failure(_classify(s3))
            break
        s4 = tuple(a + h * b for a, b in zip(y, k3))
        k4 = _geodesic_rhs(s4, mu, inv_ell)
        if k4 is None:
            status = _stage_failure(_classify(s4))
            break
        y_new = tuple(
            a + h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
            for a, b1, b2, b3, b4 in zip(y, k1, k2, k3, k4)
        )
        status = _classify(y_new)
        if status != STATUS_OK:
            break
        y = y_new
        rows.append(y)
        done += 1
    return np.array(rows, dtype=float), status, done


def _reduced_rhs(y, gm, a0):
    x, yy, z, vx, vy, vz = y
    r = math.sqrt(x * x + yy * yy + z * z)
    if not r > 0.0:
        return None
    f = -(gm / (r * r * r) + a0 / r)
    return (vx, vy, vz, f * x, f * yy, f * z)


def _classify_reduced(y):
    for v in y:
        if not math.isfinite(v):
            return STATUS_NONFINITE
    if y[0] == 0.0 and y[1] == 0.0 and y[2] == 0.0:
        return STATUS_RADIUS
    return STATUS_OK


def integrate_reduced(y0, steps, h, gm, a0):
    y = tuple(float(v) for v in y0)
    rows = [y]
    status = _classify_reduced(y)
    done = 0
    while status == STATUS_OK and done < steps:
        k1 = _reduced_rhs(y, gm, a0)
        s2 = tuple(a + 0.5 * h * b for a, b in zip(y, k1))
        k2 = _reduced_rhs(s2, gm, a0)
        if k2 is None:
            status = _stage_failure(_classify_reduced(s2))
            break
        s3 = tuple(a + 0.5 * h * b for a, b in zip(y, k2))
        k3 = _reduced_rhs(s3, gm, a0)
        if k3 is None:
            status = _stage_failure(_classify_reduced(s3))
            break
        s4 = tuple(a + h * b for a, b in zip(y, k3))
        k4 = _reduced_rhs(s4, gm, a0)
        if k4 is None:
            status = _stage_failure(_classify_reduced(s4))
            break
        y_new = tuple(
            a + h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
            for a, b1, b2, b3, b4 in zip(y, k1, k2, k3, k4)
        )
        status = _classify_reduced(y_new)
        if status != STATUS_OK:
            break
        y = y_new
        rows.append(y)
        done += 1
    return np.array(rows, dtype=float), status, done
