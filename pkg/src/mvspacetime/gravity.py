"""Five-dimensional weak-field metric with a Hubble-expansion time direction.

Coordinates are ``(x0, x1, x2, x3, x4) = (c t, r, theta, rho, tau v)``, all in
meters, with the diagonal metric::

    g = diag(-(1 + 2 phi/c^2), 1, r^2, r^2 sin^2 theta, -(1 + 2 phi/c^2))

and ``phi = -G M / r``. An optional ``potential_timescale`` makes the potential
amplitude grow as ``exp(x0 / timescale)``; it exists so the time-derivative
Christoffel symbols can be exercised and defaults to a static field.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import _backend
from .algebra import Multivector, as_vector
from .errors import (CoordinateSingularityError, NumericalError,
                     StrongFieldError, ValidationError)
from .spacetime import _check_orthogonal

MPC_M = 3.0857e22
WEAK_FIELD_LIMIT = 1e-3
AXIS_TOL = 1e-12  # |sin(theta)| below this counts as the polar axis
NDIM = 5
COORDINATE_NAMES = ("ct", "r", "theta", "rho", "tau_v")

_STATUS_MESSAGES = {
    1: "radius reached zero (coordinate singularity)",
    2: "non-finite state",
    3: "trajectory reached the polar axis (sin(theta) = 0)",
}


@dataclass(frozen=True)
class PhysicalConstants:
    """SI constants. ``a0`` and ``tau`` are derived from ``H0``."""

    G: float = 6.674e-11
    c: float = 299_792_458.0
    H0: float = 70.0e3 / MPC_M
    M_sun: float = 1.98892e30
    light_year: float = 9.4607304725808e15

    def __post_init__(self):
        for name in ("G", "c", "M_sun", "light_year"):
            if not getattr(self, name) > 0.0:
                raise ValidationError(f"constant {name} must be positive")
        if not self.H0 >= 0.0:
            raise ValidationError("H0 must be non-negative")

    @classmethod
    def from_h0(cls, km_s_mpc: float, **overrides) -> "PhysicalConstants":
        return cls(H0=km_s_mpc * 1e3 / MPC_M, **overrides)

    @property
    def a0(self) -> float:
        return self.c * self.H0

    @property
    def tau(self) -> float:
        return 1.0 / self.H0 if self.H0 > 0.0 else math.inf

    @property
    def year(self) -> float:
        """Julian year in seconds, consistent with ``light_year``."""
        return self.light_year / self.c

    @property
    def h0_km_s_mpc(self) -> float:
        return self.H0 * MPC_M / 1e3

    def with_a0(self, a0: float) -> "PhysicalConstants":
        if not a0 >= 0.0:
            raise ValidationError(f"a0 must be non-negative, got {a0!r}")
        return replace(self, H0=a0 / self.c)


DEFAULT_CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class MetricModel:
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)
    mass: float = 0.0
    potential_timescale: Optional[float] = None

    def __post_init__(self):
        if not self.mass >= 0.0:
            raise ValidationError("central mass must be non-negative")
        if self.potential_timescale is not None and not self.potential_timescale != 0.0:
            raise ValidationError("potential_timescale must be non-zero")

    @property
    def mu(self) -> float:
        """Gravitational radius ``G M / c^2`` in meters."""
        return self.constants.G * self.mass / self.constants.c ** 2

    @property
    def inv_timescale(self) -> float:
        return 0.0 if self.potential_timescale is None else 1.0 / self.potential_timescale

    def _amplitude(self, x0):
        return math.exp(x0 * self.inv_timescale) if self.potential_timescale else 1.0

    def potential(self, r: float, x0: float = 0.0) -> float:
        """Newtonian potential ``phi`` in m^2/s^2."""
        if not r > 0.0:
            raise CoordinateSingularityError(f"potential is singular at r = {r!r}")
        return -self.constants.G * self.mass * self._amplitude(x0) / r

    def dimensionless_potential(self, r: float, x0: float = 0.0) -> float:
        """``2 phi / c^2``."""
        return 2.0 * self.potential(r, x0) / self.constants.c ** 2

    def is_weak_field(self, radii: Sequence[float], x0: float = 0.0) -> bool:
        return all(abs(self.dimensionless_potential(r, x0)) < WEAK_FIELD_LIMIT for r in radii)

    def _check_position(self, position) -> np.ndarray:
        p = np.asarray(position, dtype=float)
        if p.shape != (NDIM,):
            raise ValidationError(f"position needs {NDIM} coordinates")
        if not p[1] > 0.0:
            raise CoordinateSingularityError(f"r = {p[1]!r} is not positive")
        if not abs(math.sin(p[2])) > AXIS_TOL:
            raise CoordinateSingularityError(f"theta = {p[2]!r} is on the polar axis")
        return p

    def metric_diagonal(self, position) -> np.ndarray:
        x0, r, th = self._check_position(position)[:3]
        big_a = 1.0 + self.dimensionless_potential(r, x0)
        return np.array([-big_a, 1.0, r * r, (r * math.sin(th)) ** 2, -big_a])

    def metric(self, position) -> np.ndarray:
        return np.diag(self.metric_diagonal(position))

    def metric_derivatives(self, position) -> np.ndarray:
        """``d[k, m] = d g_mm / d x^k`` from analytic derivatives."""
        x0, r, th = self._check_position(position)[:3]
        two_pot = self.dimensionless_potential(r, x0)
        da0 = two_pot * self.inv_timescale
        da1 = -two_pot / r
        s, co = math.sin(th), math.cos(th)
        d = np.zeros((NDIM, NDIM))
        d[0, 0] = d[0, 4] = -da0
        d[1, 0] = d[1, 4] = -da1
        d[1, 2] = 2.0 * r
        d[1, 3] = 2.0 * r * s * s
        d[2, 3] = 2.0 * r * r * s * co
        return d


def christoffel_exact(model: MetricModel, position) -> np.ndarray:
    """All ``Gamma[mu, a, b]`` of the diagonal metric from the standard formula.

    ``Gamma^m_ab = (delta_ma dg_mm/dx^b + delta_mb dg_mm/dx^a - delta_ab dg_aa/dx^m) / (2 g_mm)``
    """
    g = model.metric_diagonal(position)
    d = model.metric_derivatives(position)
    gamma = np.zeros((NDIM, NDIM, NDIM))
    for m in range(NDIM):
        for a in range(NDIM):
            for b in range(NDIM):
                total = 0.0
                if m == a:
                    total += d[b, m]
                if m == b:
                    total += d[a, m]
                if a == b:
                    total -= d[m, a]
                gamma[m, a, b] = total / (2.0 * g[m])
    return gamma


class FirstOrderSymbols(NamedTuple):
    time: float
    space: tuple


def christoffel_first_order(model: MetricModel, position) -> FirstOrderSymbols:
    """``Gamma^0_00 = phi_,0 / c^2`` and ``Gamma^j_00 = phi_,j / c^2``, valid to first order."""
    x0, r, th = model._check_position(position)[:3]
    if abs(model.dimensionless_potential(r, x0)) >= WEAK_FIELD_LIMIT:
        raise StrongFieldError("first-order symbols need |2 phi/c^2| < 1e-3")
    c2 = model.constants.c ** 2
    phi = model.potential(r, x0)
    # derivatives with respect to x0 = c t and r; phi has no angular dependence
    return FirstOrderSymbols(phi * model.inv_timescale / c2, (-phi / r / c2, 0.0, 0.0))


def curved_event(dx: Sequence[float], dt: Sequence[float], potential: float,
                 constants: PhysicalConstants = DEFAULT_CONSTANTS) -> Multivector:
    """``sqrt(1 - 2phi/c^2) dx + I sqrt(1 + 2phi/c^2) c dt``."""
    dx, dt = as_vector(dx), as_vector(dt)
    eps = 2.0 * potential / constants.c ** 2
    if not abs(eps) < 1.0:
        raise StrongFieldError(f"|2 phi/c^2| = {abs(eps):.3g} is not below 1")
    _check_orthogonal(dx, dt)
    return Multivector.from_parts(
        vector=dx.scaled(math.sqrt(1.0 - eps)),
        bivector=dt.scaled(math.sqrt(1.0 + eps) * constants.c),
    )


@dataclass(frozen=True)
class GeodesicState:
    position: tuple
    velocity: tuple

    def __post_init__(self):
        p = tuple(float(v) for v in self.position)
        u = tuple(float(v) for v in self.velocity)
        if len(p) != NDIM or len(u) != NDIM:
            raise ValidationError(f"state needs {NDIM} coordinates and {NDIM} velocities")
        if not all(math.isfinite(v) for v in p + u):
            raise ValidationError("state has non-finite components")
        if not p[1] > 0.0:
            raise CoordinateSingularityError(f"r = {p[1]!r} is not positive")
        object.__setattr__(self, "position", p)
        object.__setattr__(self, "velocity", u)

    def as_array(self) -> np.ndarray:
        return np.array(self.position + self.velocity)


def circular_state(model: MetricModel, radius: float, speed: Optional[float] = None,
                   expansion_acceleration: float = 0.0,
                   inclination: float = 0.0) -> GeodesicState:
    """State on the equator at ``radius``, normalised so ``dx0/ds = 1``.

    ``speed`` is the coordinate-time orbital speed (default: the circular
    speed of the metric, see ``metric_circular_speed``), directed at
    ``inclination`` radians to the equatorial plane;
    ``expansion_acceleration`` sets ``dv/dt`` of the expansion coordinate.
    """
    if not radius > 0.0:
        raise ValidationError("radius must be positive")
    k = model.constants
    u4 = 0.0
    if expansion_acceleration:
        if not math.isfinite(k.tau):
            raise ValidationError("expansion needs H0 > 0")
        u4 = expansion_acceleration * k.tau / k.c
    if speed is None:
        speed = metric_circular_speed(model, radius, u4)
    omega = speed / (k.c * radius)
    return GeodesicState((0.0, radius, 0.5 * math.pi, 0.0, 0.0),
                         (1.0, 0.0, -omega * math.sin(inclination),
                          omega * math.cos(inclination), u4))


def metric_circular_speed(model: MetricModel, radius: float, u4: float = 0.0) -> float:
    """Speed of an exactly circular geodesic with ``dx0/ds = 1`` and ``dx4/ds = u4``.

    The radial equation balances ``r omega^2`` against the potential gradient
    sourced by both time-like velocities, so ``v^2 = (GM/r)(1 + u4^2)``.
    """
    return math.sqrt(model.constants.G * model.mass / radius * (1.0 + u4 * u4))


def geodesic_acceleration(model: MetricModel, state: GeodesicState,
                          backend=None) -> np.ndarray:
    kern = backend or _backend.kernels
    acc = kern.geodesic_acceleration(state.as_array(), model.mu, model.inv_timescale)
    if acc is None:
        raise CoordinateSingularityError("acceleration undefined at this position")
    return np.array(acc)


@dataclass
class Trajectory:
    s: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    steps_done: int
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def affine_norm(self, model: MetricModel) -> np.ndarray:
        """``g_mn u^m u^n`` at every sample."""
        return np.array([
            float(np.dot(model.metric_diagonal(p), u * u))
            for p, u in zip(self.positions, self.velocities)
        ])

    def norm_drift(self, model: MetricModel) -> float:
        n = self.affine_norm(model)
        return float(np.max(np.abs(n - n[0])) / abs(n[0])) if n[0] else float(np.max(np.abs(n)))

    def radius_drift(self) -> float:
        r = self.positions[:, 1]
        return float(np.max(np.abs(r - r[0])) / r[0])

    def expansion_velocity(self, model: MetricModel):
        """``(t, v)`` with ``t = x0/c`` and ``v = x4/tau``."""
        k = model.constants
        return self.positions[:, 0] / k.c, self.positions[:, 4] / k.tau

    def cartesian(self) -> np.ndarray:
        """Spatial positions ``(x, y, z)`` from ``(r, theta, rho)``, with ``rho`` the azimuth."""
        r, th, ph = self.positions[:, 1], self.positions[:, 2], self.positions[:, 3]
        return np.column_stack([r * np.sin(th) * np.cos(ph), r * np.sin(th) * np.sin(ph),
                                r * np.cos(th)])

    def header(self):
        return ["s", *COORDINATE_NAMES, *(f"u_{n}" for n in COORDINATE_NAMES)]

    def rows(self):
        return np.column_stack([self.s, self.positions, self.velocities])


def _status_error(status: int, steps_done: int) -> Optional[str]:
    if status == 0:
        return None
    return f"integration halted after step {steps_done}: {_STATUS_MESSAGES[status]}"


def _check_run(steps, step_size):
    if int(steps) != steps or steps < 1:
        raise ValidationError(f"steps must be a positive integer, got {steps!r}")
    if not (step_size > 0.0 and math.isfinite(step_size)):
        raise ValidationError(f"step size must be positive, got {step_size!r}")


def integrate_geodesic(state: GeodesicState, model: MetricModel, steps: int,
                       step_size: float, backend=None) -> Trajectory:
    """Classical RK4 on the first-order geodesic system in the affine parameter.

    Stops early at r <= 0, sin(theta) = 0 or a non-finite state; the partial
    trajectory is returned with ``error`` set.
    """
    _check_run(steps, step_size)
    kern = backend or _backend.kernels
    rows, status, done = kern.integrate_geodesic(
        state.as_array(), int(steps), float(step_size), model.mu, model.inv_timescale)
    s = step_size * np.arange(rows.shape[0])
    return Trajectory(s, rows[:, :NDIM], rows[:, NDIM:], done, _status_error(status, done))


def geodesic_step(state: GeodesicState, model: MetricModel, step_size: float) -> GeodesicState:
    traj = integrate_geodesic(state, model, 1, step_size)
    if not traj.ok:
        raise NumericalError(traj.error)
    return GeodesicState(tuple(traj.positions[-1]), tuple(traj.velocities[-1]))


# Nonrelativistic reduced dynamics


def nonrelativistic_acceleration(model: MetricModel):
    """Acceleration field ``-(GM/r^2) r_hat - a0 r_hat`` for 3D integration.

    The expansion term points inward so that circular orbits obey
    ``v^2 = GM/r + a0 r``.
    """
    gm = model.constants.G * model.mass
    a0 = model.constants.a0

    def field(x):
        x = np.asarray(x, dtype=float)
        r = float(np.linalg.norm(x))
        if not r > 0.0:
            raise CoordinateSingularityError("acceleration is singular at r = 0")
        return -(gm / r ** 3 + a0 / r) * x

    return field


def effective_potential_per_mass(model: MetricModel, r):
    """``-GM/r + a0 r``: the potential whose gradient is the reduced acceleration."""
    return -model.constants.G * model.mass / r + model.constants.a0 * r


@dataclass
class ReducedTrajectory:
    t: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    steps_done: int
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    @property
    def radii(self) -> np.ndarray:
        return np.linalg.norm(self.positions, axis=1)

    @property
    def speeds(self) -> np.ndarray:
        return np.linalg.norm(self.velocities, axis=1)

    def energy(self, model: MetricModel) -> np.ndarray:
        return 0.5 * self.speeds ** 2 + effective_potential_per_mass(model, self.radii)

    def energy_drift(self, model: MetricModel) -> float:
        e = self.energy(model)
        return float(np.max(np.abs(e - e[0])) / abs(e[0]))

    def radius_drift(self) -> float:
        r = self.radii
        return float(np.max(np.abs(r - r[0])) / r[0])

    def header(self):
        return ["t", "x", "y", "z", "vx", "vy", "vz"]

    def rows(self):
        return np.column_stack([self.t, self.positions, self.velocities])


def integrate_reduced(position: Sequence[float], velocity: Sequence[float],
                      model: MetricModel, steps: int, step_size: float,
                      backend=None) -> ReducedTrajectory:
    """RK4 integration of the nonrelativistic equations of motion in Cartesian form."""
    _check_run(steps, step_size)
    kern = backend or _backend.kernels
    y0 = [float(v) for v in (*position, *velocity)]
    if len(y0) != 6:
        raise ValidationError("reduced state needs 3 positions and 3 velocities")
    rows, status, done = kern.integrate_reduced(
        y0, int(steps), float(step_size), model.constants.G * model.mass, model.constants.a0)
    t = step_size * np.arange(rows.shape[0])
    return ReducedTrajectory(t, rows[:, :3], rows[:, 3:], done, _status_error(status, done))


def circular_speed(model: MetricModel, radius: float) -> float:
    """``sqrt(GM/r + a0 r)``: speed of a circular orbit in the reduced dynamics."""
    k = model.constants
    return math.sqrt(k.G * model.mass / radius + k.a0 * radius)


def orbital_period(t: np.ndarray, positions: np.ndarray, orbits: int) -> float:
    """Mean period from the time the swept angle first reaches ``2 pi orbits``.

    Angles are measured in the orbit plane, spanned by the first position and
    the normal ``x0 x (x1 - x0)``, so inclined orbits work too.
    """
    positions = np.asarray(positions, dtype=float)
    e1 = positions[0] / np.linalg.norm(positions[0])
    normal = np.cross(positions[0], positions[1] - positions[0])
    normal /= np.linalg.norm(normal)
    e2 = np.cross(normal, e1)
    angle = np.unwrap(np.arctan2(positions @ e2, positions @ e1))
    angle = np.abs(angle - angle[0])
    target = 2.0 * math.pi * orbits
    idx = int(np.searchsorted(angle, target))
    if idx == 0 or idx >= len(angle):
        raise NumericalError(f"trajectory does not complete {orbits} orbits")
    frac = (target - angle[idx - 1]) / (angle[idx] - angle[idx - 1])
    return float(t[idx - 1] + frac * (t[idx] - t[idx - 1])) / orbits


# Null geodesics and the Hubble law


def null_drdv(potential: float, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Exact ``dr/dv = tau sqrt(1 + 2 phi/c^2)`` along a present-time null path."""
    return constants.tau * math.sqrt(1.0 + 2.0 * potential / constants.c ** 2)


def null_drdv_first_order(potential: float, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    return constants.tau * (1.0 + potential / constants.c ** 2)


def hubble_radius(velocity: float, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """``r = v tau = v / H0``."""
    return velocity * constants.tau


@dataclass
class NullExpansion:
    r: np.ndarray
    v: np.ndarray
    drdv: np.ndarray
    drdv_first_order: np.ndarray


def null_geodesic_expansion(model: MetricModel, r_range: Sequence[float],
                            n_samples: int = 1001,
                            v_start: Optional[float] = None) -> NullExpansion:
    """Integrate ``dv/dr = 1 / (tau sqrt(1 + 2 phi/c^2))`` over ``r_range`` with RK4.

    ``v_start`` defaults to the flat-space Hubble value ``r_start / tau``.
    """
    r0, r1 = (float(x) for x in r_range)
    if not (0.0 <= r0 < r1) or n_samples < 2:
        raise ValidationError("need 0 <= r_start < r_end and n_samples >= 2")
    k = model.constants
    if not math.isfinite(k.tau):
        raise ValidationError("the Hubble law needs H0 > 0")
    if model.mass and r0 == 0.0:
        raise CoordinateSingularityError("a point-mass potential needs r_start > 0")

    def phi(r):
        return model.potential(r) if model.mass else 0.0

    if not all(abs(2.0 * phi(r) / k.c ** 2) < WEAK_FIELD_LIMIT for r in (r0, r1)):
        raise StrongFieldError("null path leaves the weak-field regime")

    def dvdr(r):
        return 1.0 / null_drdv(phi(r), k)

    r = np.linspace(r0, r1, n_samples)
    v = np.empty_like(r)
    v[0] = r0 / k.tau if v_start is None else v_start
    for i in range(n_samples - 1):
        h = r[i + 1] - r[i]
        f0, fm, f1 = dvdr(r[i]), dvdr(r[i] + 0.5 * h), dvdr(r[i + 1])
        v[i + 1] = v[i] + h / 6.0 * (f0 + 4.0 * fm + f1)
    drdv = np.array([null_drdv(phi(x), k) for x in r])
    first = np.array([null_drdv_first_order(phi(x), k) for x in r])
    return NullExpansion(r, v, drdv, first)
