import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mvspacetime import algebra
from mvspacetime.algebra import (E1, E2, E3, E12, E23, E31, I, ONE, Multivector, Vector3,
                                 clifford_conjugate, dot, exp, exp_bivector, exp_vector,
                                 geometric_product, grade_project, render, reverse,
                                 vector_inverse, wedge)
from mvspacetime.errors import ValidationError

GOLDEN = Path(__file__).parent / "golden"

# Independent oracle: Cl(3,0) is isomorphic to 2x2 complex matrices with e_k -> Pauli sigma_k.
SIGMA = [np.array([[0, 1], [1, 0]], complex),
         np.array([[0, -1j], [1j, 0]], complex),
         np.array([[1, 0], [0, -1]], complex)]
ID2 = np.eye(2, dtype=complex)


def to_matrix(c):
    a, x1, x2, x3, t1, t2, t3, b = c
    # e2e3 = i sigma1, e3e1 = i sigma2, e1e2 = i sigma3, e123 = i
    return ((a + 1j * b) * ID2 + (x1 + 1j * t1) * SIGMA[0]
            + (x2 + 1j * t2) * SIGMA[1] + (x3 + 1j * t3) * SIGMA[2])


def from_matrix(m):
    s = np.trace(m) / 2
    v = [np.trace(m @ sk) / 2 for sk in SIGMA]
    return (s.real, v[0].real, v[1].real, v[2].real, v[0].imag, v[1].imag, v[2].imag, s.imag)


def oracle_product(a, b):
    return from_matrix(to_matrix(a) @ to_matrix(b))


reals = st.floats(-1e3, 1e3, allow_nan=False)
multivectors = st.tuples(*[reals] * 8).map(Multivector)
vectors = st.tuples(reals, reals, reals).map(lambda t: Vector3(*t))


def close(a, b, tol=1e-12):
    a = a.coefficients if isinstance(a, Multivector) else a
    b = b.coefficients if isinstance(b, Multivector) else b
    scale = max(1.0, max(abs(x) for x in b))
    return max(abs(x - y) for x, y in zip(a, b)) <= tol * scale


class TestBasis:
    def test_squares(self):
        for e in (E1, E2, E3):
            assert e * e == ONE

    def test_anticommute(self):
        for a, b in ((E1, E2), (E2, E3), (E3, E1)):
            assert a * b == -(b * a)

    def test_bivector_names(self):
        assert E2 * E3 == E23 and E3 * E1 == E31 and E1 * E2 == E12

    def test_pseudoscalar(self):
        assert E1 * E2 * E3 == I
        assert I * I == -ONE

    def test_table_matches_oracle(self):
        basis = [Multivector(tuple(1.0 if k == j else 0.0 for k in range(8))) for j in range(8)]
        for a in basis:
            for b in basis:
                assert close(a * b, oracle_product(a.coefficients, b.coefficients), 0.0)

    def test_default_table_validates(self):
        assert all(err == 0.0 for _, err in algebra.validate_table(algebra.DEFAULT_TABLE))

    def test_time_duality_is_coefficient_copy(self):
        t = Vector3(1.5, -2.0, 0.25).to_multivector()
        assert (I * t).bivector == Vector3(1.5, -2.0, 0.25)


class TestProduct:
    def test_vector_pair_example(self):
        m = Vector3(1, 2, 3).to_multivector() * Vector3(4, 5, 6).to_multivector()
        assert m == Multivector.from_parts(32.0, bivector=(-3.0, 6.0, -3.0))

    @given(multivectors, multivectors)
    def test_matches_matrix_oracle(self, a, b):
        assert close(geometric_product(a, b), oracle_product(a.coefficients, b.coefficients), 1e-12)

    @given(multivectors, multivectors, multivectors)
    def test_associative(self, a, b, c):
        scale = a.norm() * b.norm() * c.norm() + 1.0
        diff = ((a * b) * c - a * (b * c)).coefficients
        assert max(map(abs, diff)) <= 1e-12 * scale

    @given(multivectors)
    def test_pseudoscalar_central(self, m):
        assert I * m == m * I

    @given(vectors, vectors)
    def test_dot_wedge_decomposition(self, u, v):
        uv = u.to_multivector() * v.to_multivector()
        assert close(uv, dot(u, v) + wedge(u, v), 1e-12)

    @given(vectors, vectors)
    def test_grade_closure(self, u, v):
        uv = u.to_multivector() * v.to_multivector()
        assert uv.vector == (0.0, 0.0, 0.0) and uv.trivector == 0.0

    @given(vectors, vectors)
    def test_dot_symmetric_wedge_antisymmetric(self, u, v):
        assert dot(u, v) == dot(v, u)
        assert wedge(u, v) == -wedge(v, u)

    def test_dot_examples(self):
        assert dot((1, 0, 0), (0, 1, 0)) == 0.0
        assert dot((1, 2, 3), (4, 5, 6)) == 32.0
        assert wedge((1, 2, 3), (4, 5, 6)) == I * Vector3(-3, 6, -3).to_multivector()

    @given(vectors)
    def test_wedge_self_zero(self, u):
        assert wedge(u, u) == Multivector()


class TestGrades:
    def test_project(self):
        assert grade_project(ONE + E1 + E12, 1) == E1

    @given(multivectors)
    def test_partition(self, m):
        parts = [grade_project(m, k) for k in range(4)]
        assert parts[0] + parts[1] + parts[2] + parts[3] == m

    @pytest.mark.parametrize("k", [-1, 4, 1.5])
    def test_invalid_grade(self, k):
        with pytest.raises(ValidationError):
            grade_project(ONE, k)

    def test_reverse_bivector(self):
        assert reverse(E12) == -E12

    @given(multivectors)
    def test_reverse_involution(self, m):
        assert reverse(reverse(m)) == m

    @given(multivectors, multivectors)
    def test_reverse_antiautomorphism(self, a, b):
        assert close(reverse(a * b), reverse(b) * reverse(a), 1e-12)

    @given(st.floats(-10, 10))
    def test_reverse_of_rotor(self, theta):
        assert close(reverse(exp_bivector(E3.vector, theta)), exp_bivector(E3.vector, -theta), 1e-15)

    @given(multivectors)
    def test_conjugate_negates_grades_one_and_two(self, m):
        c = clifford_conjugate(m)
        assert c.scalar == m.scalar and c.trivector == m.trivector
        assert c.vector == -m.vector and c.bivector == -m.bivector


class TestExponentials:
    def test_vector_zero(self):
        assert exp_vector((1, 0, 0), 0.0) == ONE

    def test_bivector_half_turn(self):
        assert close(exp_bivector((0, 0, 1), math.pi), -ONE, 1e-15)

    def test_vector_ln2(self):
        assert close(exp_vector((1, 0, 0), math.log(2.0)), (1.25, 0.75, 0, 0, 0, 0, 0, 0), 1e-15)

    @pytest.mark.parametrize("fn", [exp_vector, exp_bivector])
    def test_non_unit_rejected(self, fn):
        with pytest.raises(ValidationError):
            fn((1.0, 1e-5, 0.0), 0.3)

    @given(st.floats(-5, 5))
    def test_inverse_pairs(self, x):
        d = Vector3(0.6, 0.0, 0.8)
        # cancellation of cosh^2 - sinh^2 loses digits in proportion to cosh^2
        assert close(exp_vector(d, x) * exp_vector(d, -x), ONE, 1e-12 * math.cosh(x) ** 2)
        assert close(exp_bivector(d, x) * exp_bivector(d, -x), ONE, 1e-12)

    @given(st.floats(-4, 4), st.floats(-7, 7))
    def test_series_matches_closed_forms(self, phi, theta):
        d = Vector3(0.0, 0.6, 0.8)
        scale = math.cosh(phi)
        assert close(exp(d.to_multivector() * phi), exp_vector(d, phi), 1e-13 * scale)
        assert close(exp(I * d.to_multivector() * theta), exp_bivector(d, theta), 1e-13)

    def test_series_mixed_grades(self):
        # scalar part commutes with everything: exp(a + B) = e^a exp(B)
        b = I * Vector3(0, 0, 1).to_multivector() * 0.7
        assert close(exp(b + 0.5), exp_bivector((0, 0, 1), 0.7) * math.exp(0.5), 1e-14)

    def test_rotor_action(self):
        r = exp_bivector((0, 0, 1), -math.pi / 4)
        assert close(r * E1 * reverse(r), E2, 1e-12)
        assert close(r * r * E1 * reverse(r * r), -E1, 1e-12)


class TestInverse:
    def test_examples(self):
        assert vector_inverse((1, 0, 0)) == Vector3(1, 0, 0)
        assert vector_inverse((0, 2, 0)) == Vector3(0, 0.5, 0)
        assert vector_inverse((3, 4, 0)) == Vector3(0.12, 0.16, 0.0)

    @given(vectors.filter(lambda v: v.norm() > 1e-3))
    def test_product_is_one(self, v):
        assert close(v.to_multivector() * vector_inverse(v).to_multivector(), ONE, 1e-12)

    def test_zero_rejected(self):
        with pytest.raises(ValidationError):
            vector_inverse((0, 0, 0))


class TestValue:
    def test_immutable(self):
        with pytest.raises(AttributeError):
            E1.x = 3

    def test_wrong_length(self):
        with pytest.raises(ValidationError):
            Multivector((1.0, 2.0))

    @given(multivectors, st.floats(-100, 100))
    def test_linear(self, m, k):
        assert (m * k).coefficients == tuple(x * k for x in m.coefficients)

    def test_render_golden(self):
        values = [ONE, I, Multivector.from_parts(0.1, (1.0 / 3.0, -2.0, 1e-300), (6.02214076e23, 0.0, -0.5), math.pi)]
        expected = (GOLDEN / "render.txt").read_text(encoding="utf-8").splitlines()
        assert [render(m) for m in values] == expected

    def test_render_fields(self):
        assert str(E31) == "0 + 0 e1 + 0 e2 + 0 e3 + 0 e23 + 1 e31 + 0 e12 + 0 e123"
