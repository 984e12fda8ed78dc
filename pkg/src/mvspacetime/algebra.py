"""Real Clifford algebra Cl(3,0).

Coefficients are stored in the fixed order::

    (1; e1, e2, e3; e23, e31, e12; e123)

so that multiplying a vector by the pseudoscalar ``I = e1 e2 e3`` copies its
three coefficients onto the bivector slots (``I e1 = e23`` and so on).
"""
from __future__ import annotations

import math
from typing import NamedTuple, Sequence

from . import _backend
from .errors import ValidationError

BLADE_NAMES = ("", "e1", "e2", "e3", "e23", "e31", "e12", "e123")
GRADES = (0, 1, 1, 1, 2, 2, 2, 3)

# Each stored blade as (bitmask over e1,e2,e3; orientation relative to the
# ascending-index product). e31 = -e1e3, hence the -1.
_BLADE_BITS = ((0b000, 1), (0b001, 1), (0b010, 1), (0b100, 1),
               (0b110, 1), (0b101, -1), (0b011, 1), (0b111, 1))
_BITS_TO_SLOT = {bits: (slot, orient) for slot, (bits, orient) in enumerate(_BLADE_BITS)}

UNIT_TOL = 1e-12
EXP_TOL = 1e-14


def _reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the concatenated basis-vector product of two bitmasks."""
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def build_basis_table() -> tuple[list[int], list[float]]:
    """Return the flat 8x8 (result slot, sign) table of basis products."""
    index, sign = [], []
    for bits_i, orient_i in _BLADE_BITS:
        for bits_j, orient_j in _BLADE_BITS:
            slot, orient_k = _BITS_TO_SLOT[bits_i ^ bits_j]
            index.append(slot)
            sign.append(float(orient_i * orient_j * orient_k * _reorder_sign(bits_i, bits_j)))
    return index, sign


def _basis(slot: int) -> tuple[float, ...]:
    c = [0.0] * 8
    c[slot] = 1.0
    return tuple(c)


def validate_table(table) -> list[tuple[str, float]]:
    """Check a product table against the Cl(3,0) axioms.

    Returns ``(identity, magnitude)`` pairs for every violated axiom; an empty
    list means the table is sound.
    """
    gp = table.product
    basis = [_basis(k) for k in range(8)]
    one, iota = basis[0], basis[7]
    failures: list[tuple[str, float]] = []

    def worst(pairs):
        return max((abs(x - y) for u, v in pairs for x, y in zip(u, v)), default=0.0)

    err = worst((gp(basis[k], basis[k]), one) for k in (1, 2, 3))
    if err:
        failures.append(("basis vectors square to one", err))
    err = worst(
        (gp(basis[j], basis[k]), tuple(-x for x in gp(basis[k], basis[j])))
        for j in (1, 2, 3) for k in (1, 2, 3) if j != k
    )
    if err:
        failures.append(("anticommutation ej ek = -ek ej", err))
    err = worst([(gp(iota, iota), tuple(-x for x in one))])
    if err:
        failures.append(("pseudoscalar squares to -1", err))
    err = worst((gp(iota, b), gp(b, iota)) for b in basis)
    if err:
        failures.append(("pseudoscalar is central", err))
    err = worst(
        (gp(gp(a, b), c), gp(a, gp(b, c)))
        for a in basis for b in basis for c in basis
    )
    if err:
        failures.append(("associativity of basis products", err))
    return failures


DEFAULT_TABLE = _backend.kernels.ProductTable(*build_basis_table())
_failures = validate_table(DEFAULT_TABLE)
if _failures:
    raise RuntimeError(f"Cl(3,0) basis table failed validation: {_failures}")
_gp = DEFAULT_TABLE.product


class Vector3(NamedTuple):
    x1: float
    x2: float
    x3: float

    def dot(self, other: Sequence[float]) -> float:
        return self.x1 * other[0] + self.x2 * other[1] + self.x3 * other[2]

    def norm(self) -> float:
        return math.sqrt(self.dot(self))

    def scaled(self, k: float) -> "Vector3":
        return Vector3(k * self.x1, k * self.x2, k * self.x3)

    def __add__(self, other):  # componentwise, unlike tuple concatenation
        return Vector3(self.x1 + other[0], self.x2 + other[1], self.x3 + other[2])

    def __sub__(self, other):
        return Vector3(self.x1 - other[0], self.x2 - other[1], self.x3 - other[2])

    def __neg__(self):
        return Vector3(-self.x1, -self.x2, -self.x3)

    def to_multivector(self) -> "Multivector":
        return Multivector.from_parts(vector=self)


def as_vector(v: Sequence[float]) -> Vector3:
    if len(v) != 3:
        raise ValidationError(f"expected 3 components, got {len(v)}")
    return Vector3(float(v[0]), float(v[1]), float(v[2]))


class Multivector:
    """Immutable element of Cl(3,0) with 8 float coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coefficients: Sequence[float] = (0.0,) * 8):
        c = tuple(float(x) for x in coefficients)
        if len(c) != 8:
            raise ValidationError(f"a multivector has 8 coefficients, got {len(c)}")
        object.__setattr__(self, "_c", c)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    @classmethod
    def from_parts(cls, scalar=0.0, vector=(0.0, 0.0, 0.0),
                   bivector=(0.0, 0.0, 0.0), trivector=0.0) -> "Multivector":
        """Build ``a + x + I t + I b``; ``bivector`` holds the dual vector ``t``."""
        return cls((scalar, *vector, *bivector, trivector))

    @property
    def coefficients(self) -> tuple[float, ...]:
        return self._c

    @property
    def scalar(self) -> float:
        return self._c[0]

    @property
    def vector(self) -> Vector3:
        return Vector3(*self._c[1:4])

    @property
    def bivector(self) -> Vector3:
        """Bivector coefficients on (e23, e31, e12), i.e. ``t`` in ``I t``."""
        return Vector3(*self._c[4:7])

    @property
    def trivector(self) -> float:
        return self._c[7]

    def grade(self, k: int) -> "Multivector":
        return grade_project(self, k)

    def reverse(self) -> "Multivector":
        return reverse(self)

    def conjugate(self) -> "Multivector":
        return clifford_conjugate(self)

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector."""
        return math.sqrt(sum(x * x for x in self._c))

    def isclose(self, other, rel_tol=1e-12, abs_tol=0.0) -> bool:
        other = _coerce(other)
        return all(math.isclose(x, y, rel_tol=rel_tol, abs_tol=abs_tol)
                   for x, y in zip(self._c, other._c))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Multivector(tuple(x + y for x, y in zip(self._c, other._c)))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Multivector(tuple(x - y for x, y in zip(self._c, other._c)))

    def __rsub__(self, other):
        return -self + other

    def __neg__(self):
        return Multivector(tuple(-x for x in self._c))

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Multivector(tuple(x * other for x in self._c))
        if isinstance(other, Multivector):
            return Multivector(_gp(self._c, other._c))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return Multivector(tuple(other * x for x in self._c))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Multivector(tuple(x / other for x in self._c))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self._c == other._c
        if isinstance(other, (int, float)):
            return self._c == (float(other),) + (0.0,) * 7
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Multivector({self._c!r})"


def _coerce(value):
    if isinstance(value, Multivector):
        return value
    if isinstance(value, (int, float)):
        return Multivector((value,) + (0.0,) * 7)
    return NotImplemented


def render(m: Multivector) -> str:
    """Debug text with every field printed, in fixed order, to 17 digits."""
    c = m.coefficients
    parts = [f"{c[0]:.17g}"]
    parts += [f"{x:.17g} {name}" for x, name in zip(c[1:], BLADE_NAMES[1:])]
    return " + ".join(parts)


ONE = Multivector(_basis(0))
E1, E2, E3 = (Multivector(_basis(k)) for k in (1, 2, 3))
E23, E31, E12 = (Multivector(_basis(k)) for k in (4, 5, 6))
I = Multivector(_basis(7))


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    return Multivector(_gp(a.coefficients, b.coefficients))


def dot(u: Sequence[float], v: Sequence[float]) -> float:
    """Symmetric part ``(uv + vu)/2`` of the product of two vectors."""
    uv = _gp(as_vector(u).to_multivector().coefficients, as_vector(v).to_multivector().coefficients)
    vu = _gp(as_vector(v).to_multivector().coefficients, as_vector(u).to_multivector().coefficients)
    return 0.5 * (uv[0] + vu[0])


def wedge(u: Sequence[float], v: Sequence[float]) -> Multivector:
    """Antisymmetric part ``(uv - vu)/2``; a pure bivector equal to ``I (u x v)``."""
    mu, mv = as_vector(u).to_multivector(), as_vector(v).to_multivector()
    return (mu * mv - mv * mu) * 0.5


def grade_project(m: Multivector, k: int) -> Multivector:
    if k not in (0, 1, 2, 3):
        raise ValidationError(f"grade must be 0, 1, 2 or 3, got {k!r}")
    return Multivector(tuple(x if g == k else 0.0 for x, g in zip(m.coefficients, GRADES)))


def reverse(m: Multivector) -> Multivector:
    """Reversion: negates grades 2 and 3."""
    return Multivector(tuple(-x if g >= 2 else x for x, g in zip(m.coefficients, GRADES)))


def clifford_conjugate(m: Multivector) -> Multivector:
    """Reversion composed with grade involution: negates grades 1 and 2.

    This is the dagger of a Lorentz operator: it reverses factor order and
    negates the exponent of both vector and bivector exponentials.
    """
    return Multivector(tuple(-x if g in (1, 2) else x for x, g in zip(m.coefficients, GRADES)))


def _unit(direction: Sequence[float], what: str) -> Vector3:
    v = as_vector(direction)
    n = v.norm()
    if not abs(n - 1.0) <= UNIT_TOL:
        raise ValidationError(f"{what} must have unit norm (got |v| = {n!r})")
    return v


def exp_vector(direction: Sequence[float], rapidity: float) -> Multivector:
    """``exp(rapidity * d) = cosh(rapidity) + d sinh(rapidity)`` for unit ``d``."""
    d = _unit(direction, "boost direction")
    return Multivector.from_parts(math.cosh(rapidity), d.scaled(math.sinh(rapidity)))


def exp_bivector(axis: Sequence[float], angle: float) -> Multivector:
    """``exp(I w angle) = cos(angle) + I w sin(angle)`` for unit ``w``."""
    w = _unit(axis, "rotation axis")
    return Multivector.from_parts(math.cos(angle), bivector=w.scaled(math.sin(angle)))


def exp(m: Multivector, tol: float = EXP_TOL) -> Multivector:
    """General exponential by scaling and squaring of the power series."""
    n = m.norm()
    squarings = 0
    while n > 0.5:
        n *= 0.5
        squarings += 1
    x = m / (2.0 ** squarings)
    total, term, k = ONE, ONE, 0
    while True:
        k += 1
        term = term * x / k
        total = total + term
        if term.norm() <= tol:
            break
    for _ in range(squarings):
        total = total * total
    return total


def vector_inverse(v: Sequence[float]) -> Vector3:
    """``v / v^2``; raises for the zero vector."""
    v = as_vector(v)
    sq = v.dot(v)
    if not sq > 0.0:
        raise ValidationError("the zero vector has no inverse")
    return Vector3(v.x1 / sq, v.x2 / sq, v.x3 / sq)
