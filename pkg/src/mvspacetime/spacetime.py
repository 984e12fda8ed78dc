"""Multivector spacetime events ``X = x + I c t`` and their Lorentz transforms."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from .algebra import (Multivector, Vector3, as_vector, clifford_conjugate,
                      exp_bivector, exp_vector)
from .errors import NumericalError, OrthogonalityError, ValidationError

SPEED_OF_LIGHT = 299_792_458.0
ORTHOGONALITY_TOL = 1e-9
GRADE_LEAK_TOL = 1e-10


def _check_orthogonal(x: Vector3, t: Vector3, tol: float = ORTHOGONALITY_TOL) -> None:
    nx, nt = x.norm(), t.norm()
    if nx == 0.0 or nt == 0.0:
        return
    violation = abs(x.dot(t)) / (nx * nt)
    if violation > tol:
        raise OrthogonalityError(violation, tol)


@dataclass(frozen=True)
class SpacetimeEvent:
    """Space vector in meters and time vector in seconds, with ``x . t = 0``."""

    space: Vector3
    time: Vector3
    c: float = SPEED_OF_LIGHT

    def __post_init__(self):
        object.__setattr__(self, "space", as_vector(self.space))
        object.__setattr__(self, "time", as_vector(self.time))
        if not self.c > 0.0:
            raise ValidationError(f"speed of light must be positive, got {self.c!r}")
        _check_orthogonal(self.space, self.time)

    def to_multivector(self) -> Multivector:
        return Multivector.from_parts(vector=self.space, bivector=self.time.scaled(self.c))

    @classmethod
    def from_multivector(cls, m: Multivector, c: float = SPEED_OF_LIGHT,
                         tol: float = GRADE_LEAK_TOL) -> "SpacetimeEvent":
        """Split ``m`` into space and time, insisting grades 0 and 3 are negligible."""
        scale = max(m.norm(), 1e-300)
        leak = max(abs(m.scalar), abs(m.trivector)) / scale
        if leak > tol:
            raise NumericalError(
                f"multivector is not a spacetime event: scalar/trivector leak {leak:.3e}")
        return cls(m.vector, m.bivector.scaled(1.0 / c), c)

    def interval_squared(self) -> float:
        return interval_squared(self)

    def __str__(self):
        return str(self.to_multivector())


def make_event(x: Sequence[float], t: Sequence[float], c: float = SPEED_OF_LIGHT) -> SpacetimeEvent:
    return SpacetimeEvent(as_vector(x), as_vector(t), c)


def interval_squared(event: SpacetimeEvent) -> float:
    """``x^2 - c^2 t^2`` in square meters."""
    ct = event.time.scaled(event.c)
    return event.space.dot(event.space) - ct.dot(ct)


@dataclass(frozen=True)
class LorentzOperator:
    """Boost along a unit direction composed with a rotation about a unit axis.

    ``as_multivector`` gives ``exp(rapidity v) exp(I w angle)``; events are
    transformed with the half-angle rotor from ``rotor``.
    """

    boost_direction: Vector3 = Vector3(1.0, 0.0, 0.0)
    rapidity: float = 0.0
    rotation_axis: Vector3 = Vector3(0.0, 0.0, 1.0)
    rotation_angle: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "boost_direction", as_vector(self.boost_direction))
        object.__setattr__(self, "rotation_axis", as_vector(self.rotation_axis))
        # validates unit norms
        exp_vector(self.boost_direction, 0.0)
        exp_bivector(self.rotation_axis, 0.0)

    @classmethod
    def identity(cls) -> "LorentzOperator":
        return cls()

    @classmethod
    def boost(cls, direction: Sequence[float], speed: float,
              c: float = SPEED_OF_LIGHT) -> "LorentzOperator":
        return cls(as_vector(direction), rapidity_from_velocity(speed, c))

    @classmethod
    def rotation(cls, axis: Sequence[float], angle: float) -> "LorentzOperator":
        return cls(rotation_axis=as_vector(axis), rotation_angle=angle)

    def as_multivector(self) -> Multivector:
        return (exp_vector(self.boost_direction, self.rapidity)
                * exp_bivector(self.rotation_axis, self.rotation_angle))

    def dagger(self) -> Multivector:
        return (exp_bivector(self.rotation_axis, -self.rotation_angle)
                * exp_vector(self.boost_direction, -self.rapidity))

    def rotor(self) -> Multivector:
        """Left factor ``exp(-I w angle/2) exp(-v rapidity/2)`` of the sandwich."""
        return (exp_bivector(self.rotation_axis, -0.5 * self.rotation_angle)
                * exp_vector(self.boost_direction, -0.5 * self.rapidity))


OperatorLike = Union[LorentzOperator, Multivector]


def _rotor(op: OperatorLike) -> Multivector:
    return op.rotor() if isinstance(op, LorentzOperator) else op


def compose(first: OperatorLike, second: OperatorLike) -> Multivector:
    """Rotor equivalent to applying ``first`` and then ``second``."""
    return _rotor(second) * _rotor(first)


def lorentz_transform(event: SpacetimeEvent, op: OperatorLike) -> SpacetimeEvent:
    """``X' = R X R^dagger`` computed in full multivector arithmetic."""
    r = _rotor(op)
    transformed = r * event.to_multivector() * clifford_conjugate(r)
    return SpacetimeEvent.from_multivector(transformed, event.c)


def rapidity_from_velocity(speed: float, c: float = SPEED_OF_LIGHT) -> float:
    """``artanh(v/c)``; odd and monotone, defined for ``|v| < c``."""
    if not abs(speed) < c:
        raise ValidationError(f"speed {speed!r} m/s is not below c = {c!r} m/s")
    return math.atanh(speed / c)


@dataclass(frozen=True)
class CausalSeparation:
    """Separation ``d e1 + I (s e2 + t e3)`` with time measured in meters."""

    d: float
    s: float
    t: float = 0.0

    def interval_squared(self) -> float:
        return self.d * self.d - self.s * self.s - self.t * self.t

    def to_event(self) -> SpacetimeEvent:
        return SpacetimeEvent(Vector3(self.d, 0.0, 0.0), Vector3(0.0, self.s, self.t), c=1.0)


def causal_null_time(d: float, instantaneous: bool = True, t: float = 0.0) -> float:
    """Time component ``s`` that puts a separation of length ``d`` on the light cone.

    Instantaneous viewing forces ``t = 0``, leaving ``d^2 - s^2 = 0``; otherwise
    ``s = sqrt(d^2 - t^2)``.
    """
    if not d >= 0.0:
        raise ValidationError(f"distance must be non-negative, got {d!r}")
    if instantaneous:
        if t != 0.0:
            raise ValidationError("instantaneous viewing requires t = 0")
        return float(d)
    if abs(t) > d:
        raise ValidationError(f"|t| = {abs(t)!r} exceeds d = {d!r}; no null separation")
    return math.sqrt(d * d - t * t)
