"""Randomised identity and invariance suites for the algebra and spacetime layers."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebra
from .algebra import Vector3, clifford_conjugate
from .errors import NumericalError
from .spacetime import (SPEED_OF_LIGHT, LorentzOperator, SpacetimeEvent, compose,
                        interval_squared, lorentz_transform, rapidity_from_velocity)


@dataclass(frozen=True)
class CheckResult:
    name: str
    count: int
    max_violation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status}  {self.name:<40s} n={self.count:<5d} "
                f"max={self.max_violation:.3e}  tol={self.tolerance:.0e}")


def _norm(c):
    return math.sqrt(sum(x * x for x in c))


def _diff(a, b):
    return max(abs(x - y) for x, y in zip(a, b))


def random_multivector(rng, scale=1.0):
    return tuple(float(x) for x in rng.uniform(-scale, scale, 8))


def random_unit_vector(rng) -> Vector3:
    while True:
        v = rng.normal(size=3)
        n = float(np.linalg.norm(v))
        if n > 1e-3:
            return Vector3(*(float(x) for x in v / n))


def random_orthogonal_pair(rng, null=False):
    """Space vector and ``c t`` vector with ``x . ct = 0`` at unit scale."""
    x = rng.uniform(-1.0, 1.0, 3)
    ct = rng.uniform(-1.0, 1.0, 3)
    ct -= x * (ct @ x) / (x @ x)
    if null:
        ct *= np.linalg.norm(x) / np.linalg.norm(ct)
    return Vector3(*map(float, x)), Vector3(*map(float, ct))


def random_operator(rng, max_rapidity=3.0) -> LorentzOperator:
    return LorentzOperator(random_unit_vector(rng), float(rng.uniform(-max_rapidity, max_rapidity)),
                           random_unit_vector(rng), float(rng.uniform(0.0, 2.0 * math.pi)))


def algebra_suite(rng, n=1000, table=None) -> list[CheckResult]:
    """Axioms of the basis table plus randomised algebraic identities.

    Products go through ``table`` (default: the package table) so a corrupted
    table is detected.
    """
    table = table or algebra.DEFAULT_TABLE
    gp = table.product
    results = [CheckResult(f"axiom: {name}", 1, err, 0.0)
               for name, err in algebra.validate_table(table)]

    worst = 0.0
    for _ in range(n):
        a, b, c = (random_multivector(rng) for _ in range(3))
        scale = _norm(a) * _norm(b) * _norm(c)
        worst = max(worst, _diff(gp(gp(a, b), c), gp(a, gp(b, c))) / scale)
    results.append(CheckResult("associativity (unit scale)", n, worst, 1e-12))

    worst = 0.0
    for _ in range(n):
        a, b, c = (random_multivector(rng, 10.0 ** rng.uniform(-6, 6)) for _ in range(3))
        scale = _norm(a) * _norm(b) * _norm(c)
        worst = max(worst, _diff(gp(gp(a, b), c), gp(a, gp(b, c))) / scale)
    results.append(CheckResult("associativity (large magnitude)", n, worst, 1e-10))

    worst = 0.0
    for _ in range(n):
        j, k = rng.choice([1, 2, 3], size=2, replace=False)
        u, v = [0.0] * 8, [0.0] * 8
        u[j], v[k] = rng.uniform(-1, 1, 2)
        s = [x + y for x, y in zip(gp(u, v), gp(v, u))]
        worst = max(worst, _norm(s) / max(abs(u[j] * v[k]), 1e-300))
    results.append(CheckResult("anticommutation ej ek + ek ej = 0", n, worst, 1e-12))

    iota = (0.0,) * 7 + (1.0,)
    minus_one = (-1.0,) + (0.0,) * 7
    worst = _diff(gp(iota, iota), minus_one)
    for _ in range(n):
        m = random_multivector(rng)
        worst = max(worst, _diff(gp(iota, m), gp(m, iota)) / _norm(m))
    results.append(CheckResult("I^2 = -1 and I central", n, worst, 1e-12))

    worst = 0.0
    for _ in range(n):
        u, v = rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)
        uv = gp((0.0, *u, 0.0, 0.0, 0.0, 0.0), (0.0, *v, 0.0, 0.0, 0.0, 0.0))
        cross = np.cross(u, v)
        expected = (float(u @ v), 0.0, 0.0, 0.0, *map(float, cross), 0.0)
        worst = max(worst, _diff(uv, expected) / (np.linalg.norm(u) * np.linalg.norm(v)))
    results.append(CheckResult("uv = u.v + u^v", n, worst, 1e-12))
    return results


def _safe_transform(event, op):
    try:
        return lorentz_transform(event, op), 0.0
    except NumericalError:
        return None, math.inf


def spacetime_suite(rng, n=1000) -> list[CheckResult]:
    results = []

    worst = 0.0
    for _ in range(n):
        op = random_operator(rng)
        product = op.as_multivector() * op.dagger() - 1.0
        worst = max(worst, product.norm())
    results.append(CheckResult("L L^dagger = 1", n, worst, 1e-12))

    worst_interval, worst_leak = 0.0, 0.0
    for _ in range(n):
        x, ct = random_orthogonal_pair(rng)
        event = SpacetimeEvent(x, ct.scaled(1.0 / SPEED_OF_LIGHT), SPEED_OF_LIGHT)
        op = random_operator(rng)
        m = op.rotor() * event.to_multivector() * clifford_conjugate(op.rotor())
        worst_leak = max(worst_leak, max(abs(m.scalar), abs(m.trivector)) / m.norm())
        moved, _ = _safe_transform(event, op)
        if moved is None:
            worst_interval = math.inf
            continue
        before = interval_squared(event)
        worst_interval = max(worst_interval,
                             abs(interval_squared(moved) - before) / max(1.0, abs(before)))
    results.append(CheckResult("interval invariance", n, worst_interval, 1e-9))
    results.append(CheckResult("grades 0 and 3 vanish after transform", n, worst_leak, 1e-10))

    worst = 0.0
    for _ in range(n):
        x, ct = random_orthogonal_pair(rng, null=True)
        event = SpacetimeEvent(x, ct.scaled(1.0 / SPEED_OF_LIGHT))
        moved, fail = _safe_transform(event, random_operator(rng))
        worst = max(worst, fail if moved is None else abs(interval_squared(moved)))
    results.append(CheckResult("null events stay null", n, worst, 1e-10))

    worst = 0.0
    for _ in range(n):
        x, ct = random_orthogonal_pair(rng)
        event = SpacetimeEvent(x, ct.scaled(1.0 / SPEED_OF_LIGHT))
        first, second = random_operator(rng), random_operator(rng)
        stepwise = lorentz_transform(lorentz_transform(event, first), second).to_multivector()
        composed = lorentz_transform(event, compose(first, second)).to_multivector()
        worst = max(worst, (stepwise - composed).norm() / max(1.0, composed.norm()))
    results.append(CheckResult("composition of transforms", n, worst, 1e-9))

    event = SpacetimeEvent(Vector3(0.0, 1.0, 0.0), Vector3(0.0, 0.0, 1.0 / SPEED_OF_LIGHT))
    op = LorentzOperator(Vector3(1.0, 0.0, 0.0), rapidity_from_velocity(0.6, 1.0))
    moved = lorentz_transform(event, op).to_multivector()
    expected = event.to_multivector() * 0.5
    results.append(CheckResult("null boost at 0.6c scales by 0.5", 1,
                               (moved - expected).norm(), 1e-12))
    return results


def run_all(seed=0, n=1000, table=None) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    return algebra_suite(rng, n, table) + spacetime_suite(rng, n)


def faulty_table():
    """Copy of the package table with the sign of ``e1 e2`` flipped."""
    index, sign = algebra.build_basis_table()
    sign[8 * 1 + 2] = -sign[8 * 1 + 2]
    return type(algebra.DEFAULT_TABLE)(index, sign)
