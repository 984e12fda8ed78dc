import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mvspacetime import rotation
from mvspacetime.errors import BracketError, ValidationError
from mvspacetime.gravity import PhysicalConstants
from mvspacetime.rotation import (GalaxyModel, circular_orbit_radius, circular_velocity,
                                  crossover_radius, effective_potential,
                                  effective_potential_minimizer, newtonian_velocity,
                                  rotation_curve, rotation_curve_minimum,
                                  tully_fisher_slope, vc_fourth_power)

K = PhysicalConstants()
LY = K.light_year
MW = GalaxyModel.from_reference_orbit(1e11 * K.M_sun, K.M_sun, 240e3, 26_000 * LY, K)


def unit_model(gm=1.0, m=1.0, big_l=0.0, a0=0.0):
    """Model with G M, m, L and a0 set directly (G = 1 units)."""
    return GalaxyModel(gm, m, big_l, PhysicalConstants(G=1.0).with_a0(a0))


class TestEffectivePotential:
    def test_examples(self):
        assert effective_potential(1.0, unit_model()) == -1.0
        model = GalaxyModel(1.0, 1.0, 0.0, PhysicalConstants(G=1e-300).with_a0(1.0))
        assert effective_potential(2.0, model) == pytest.approx(2.0, rel=1e-15)

    @pytest.mark.parametrize("r", [0.0, -1.0, np.array([1.0, 0.0])])
    def test_nonpositive_radius(self, r):
        with pytest.raises(ValidationError):
            effective_potential(r, MW)

    def test_single_interior_minimum(self):
        r = np.linspace(5_000, 100_000, 20_001) * LY
        v = effective_potential(r, MW)
        k = int(np.argmin(v))
        assert 0 < k < len(r) - 1
        assert np.all(np.diff(v[:k + 1]) < 0) and np.all(np.diff(v[k:]) > 0)

    def test_modified_lies_above(self):
        r = np.geomspace(1_000, 200_000, 500) * LY
        assert np.all(effective_potential(r, MW) >= effective_potential(r, MW.with_a0(0.0)))


class TestCircularOrbit:
    def test_unit_newtonian(self):
        assert circular_orbit_radius(unit_model(big_l=1.0)) == pytest.approx(1.0, rel=1e-12)

    def test_newtonian_analytic(self):
        model = MW.with_a0(0.0)
        expected = model.angular_momentum ** 2 / (model.gm * model.test_mass ** 2)
        assert circular_orbit_radius(model) == pytest.approx(expected, rel=1e-9)

    def test_milky_way_values(self):
        # independent 40-digit root of dV/dr for L = m (240 km/s)(26000 ly)
        assert circular_orbit_radius(MW.with_a0(0.0)) / LY == pytest.approx(27751.74729080633, rel=1e-11)
        assert circular_orbit_radius(MW) / LY == pytest.approx(14311.02112083780, rel=1e-11)

    def test_tighter_with_expansion(self):
        assert circular_orbit_radius(MW) < circular_orbit_radius(MW.with_a0(0.0))

    def test_dense_scan_agrees(self):
        r = np.geomspace(2_000, 60_000, 200_001) * LY
        scan = r[np.argmin(effective_potential(r, MW))]
        assert circular_orbit_radius(MW) == pytest.approx(scan, rel=2e-5)

    @given(st.floats(0.0, 5e-9), st.floats(0.0, 5e-9))
    def test_monotone_in_a0(self, a, b):
        lo, hi = sorted((a, b))
        if hi - lo < 1e-13:
            return
        assert circular_orbit_radius(MW.with_a0(hi)) < circular_orbit_radius(MW.with_a0(lo))

    @given(st.floats(0.0, 3e-9))
    def test_minimizers_agree(self, a0):
        model = MW.with_a0(a0)
        root = circular_orbit_radius(model)
        golden = effective_potential_minimizer(model)
        assert golden == pytest.approx(root, rel=1e-9)

    def test_bracket_error(self):
        with pytest.raises(BracketError) as info:
            circular_orbit_radius(MW, bracket=(1e21, 2e21))
        assert info.value.interval == (1e21, 2e21)
        assert "1e+21" in str(info.value)

    def test_needs_angular_momentum(self):
        with pytest.raises(ValidationError):
            circular_orbit_radius(GalaxyModel(1e41))

    def test_golden_section_plain_floats(self):
        # no constant offset: with one, doubles cannot resolve the flat bottom below ~1e-8
        x = rotation.golden_section_minimize(lambda r: (r - 2.0) ** 2, 0.5, 7.0, 1e-10)
        assert x == pytest.approx(2.0, rel=1e-9)


class TestVelocity:
    def test_limits(self):
        model = unit_model(gm=4.0)
        assert circular_velocity(4.0, model) == 1.0 == newtonian_velocity(4.0, model)
        gm0 = GalaxyModel(1.0, constants=PhysicalConstants(G=1e-300).with_a0(2.0))
        assert circular_velocity(8.0, gm0) == pytest.approx(4.0, rel=1e-15)

    def test_milky_way_value(self):
        model = GalaxyModel(1e11 * K.M_sun, constants=K)
        r = 26_000 * LY
        assert newtonian_velocity(r, model) == pytest.approx(232301.8934278789, rel=1e-13)
        assert circular_velocity(r, model) == pytest.approx(470373.7916212069, rel=1e-13)

    @given(st.floats(1e18, 1e22), st.floats(1e38, 1e43))
    def test_fourth_power_identity(self, r, mass):
        model = GalaxyModel(mass, constants=K)
        assert vc_fourth_power(r, model) == pytest.approx(circular_velocity(r, model) ** 4, rel=1e-12)

    def test_fourth_power_at_crossover(self):
        model = GalaxyModel(1e11 * K.M_sun, constants=K)
        r = crossover_radius(model)
        assert r / LY == pytest.approx(14767.07795076752, rel=1e-13)
        assert vc_fourth_power(r, model) == pytest.approx(4 * model.gm * model.a0, rel=1e-14)
        assert circular_velocity(r, model) == pytest.approx(435920.3441373931, rel=1e-13)

    def test_crossover_needs_a0(self):
        with pytest.raises(ValidationError):
            crossover_radius(MW.with_a0(0.0))

    @given(st.floats(1e18, 1e22))
    def test_modified_dominates(self, r):
        model = GalaxyModel(1e11 * K.M_sun, constants=K)
        assert circular_velocity(r, model) > newtonian_velocity(r, model) > 0


class TestCurve:
    def test_no_expansion_columns_equal(self):
        curve = rotation_curve(MW.with_a0(0.0), 5e3 * LY, 1e5 * LY, 50)
        assert np.array_equal(curve.v_newtonian, curve.v_modified)

    def test_shape(self):
        model = GalaxyModel(1e11 * K.M_sun, constants=K)
        curve = rotation_curve(model, 5e3 * LY, 1e5 * LY, 200)
        assert curve.rows().shape == (200, 6)
        assert np.all(np.diff(curve.v_newtonian) < 0)
        assert np.all(curve.v_modified >= curve.v_newtonian)
        r_min = rotation_curve_minimum(curve, model)
        assert r_min == pytest.approx(crossover_radius(model), rel=1e-9)

    @given(st.floats(1e9, 1e13), st.sampled_from(["linear", "log"]))
    def test_flatness(self, solar_masses, spacing):
        model = GalaxyModel(solar_masses * K.M_sun, constants=K)
        r_star = crossover_radius(model)
        # both grids contain r* itself: the log centre, and node 133 of the linear grid
        n = 401 if spacing == "log" else 400
        curve = rotation_curve(model, r_star / 2, 2 * r_star, n, spacing)
        assert curve.flatness_ratio() == pytest.approx(math.sqrt(1.25), rel=1e-9)

    def test_boundary_minimum(self):
        model = GalaxyModel(1e11 * K.M_sun, constants=K)
        r_star = crossover_radius(model)
        assert rotation_curve_minimum(rotation_curve(model, 2 * r_star, 3 * r_star, 10), model) is None

    @pytest.mark.parametrize("args", [(0.0, 1.0, 5), (2.0, 1.0, 5), (1.0, math.inf, 5),
                                      (1.0, 2.0, 1), (1.0, 2.0, 2.5)])
    def test_invalid(self, args):
        with pytest.raises(ValidationError):
            rotation_curve(MW, *args)

    def test_invalid_spacing(self):
        with pytest.raises(ValidationError):
            rotation_curve(MW, 1.0, 2.0, 3, "cubic")


class TestTullyFisher:
    def test_unit_slope(self):
        masses = np.geomspace(1e9, 1e12, 7) * K.M_sun
        assert tully_fisher_slope(masses, K) == pytest.approx(1.0, abs=1e-6)

    def test_small_example(self):
        assert tully_fisher_slope(np.array([1, 2, 4]) * 1e10 * K.M_sun, K) == pytest.approx(1.0, abs=1e-6)

    def test_doubling(self):
        a = GalaxyModel(1e10 * K.M_sun, constants=K)
        b = GalaxyModel(2e10 * K.M_sun, constants=K)
        ratio = vc_fourth_power(crossover_radius(b), b) / vc_fourth_power(crossover_radius(a), a)
        assert ratio == pytest.approx(2.0, rel=1e-14)

    def test_fixed_radius_without_expansion(self):
        masses = np.geomspace(1e9, 1e12, 5) * K.M_sun
        slope = tully_fisher_slope(masses, K.with_a0(0.0), radius=3e20)
        assert slope == pytest.approx(2.0, abs=1e-9)

    @pytest.mark.parametrize("masses", [[1e40, 1e40, 1e40], [1e40, 2e40], [1e40, -1e40, 3e40]])
    def test_degenerate(self, masses):
        with pytest.raises(ValidationError):
            tully_fisher_slope(masses, K)


class TestModel:
    @pytest.mark.parametrize("kw", [{"mass": 0.0}, {"mass": 1.0, "test_mass": -1.0},
                                    {"mass": 1.0, "angular_momentum": -1.0}])
    def test_invalid(self, kw):
        with pytest.raises(ValidationError):
            GalaxyModel(**kw)

    def test_reference_orbit(self):
        assert MW.angular_momentum == K.M_sun * 240e3 * 26_000 * LY
