"""Effective potential, circular orbits and rotation curves with the expansion term.

A star of mass ``m`` and angular momentum ``L`` about a point mass ``M`` sees::

    V_e(r) = -G M m / r + L^2 / (2 m r^2) + m a0 r

and circular orbits obey ``v_c^2 = G M / r + a0 r``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import mpmath
import numpy as np
from scipy.optimize import brentq

from .errors import BracketError, ValidationError
from .gravity import PhysicalConstants

ROOT_RTOL = 1e-12
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class GalaxyModel:
    """Point-mass galaxy (all mass interior to the orbit) and a test star."""

    mass: float
    test_mass: float = 1.98892e30
    angular_momentum: float = 0.0
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    def __post_init__(self):
        if not self.mass > 0.0:
            raise ValidationError(f"galaxy mass must be positive, got {self.mass!r}")
        if not self.test_mass > 0.0:
            raise ValidationError(f"test mass must be positive, got {self.test_mass!r}")
        if not self.angular_momentum >= 0.0:
            raise ValidationError("angular momentum must be non-negative")

    @classmethod
    def from_reference_orbit(cls, mass, test_mass, speed, radius,
                             constants: Optional[PhysicalConstants] = None) -> "GalaxyModel":
        """Angular momentum ``L = m v r`` of a star moving at ``speed`` at ``radius``."""
        return cls(mass, test_mass, test_mass * speed * radius,
                   constants or PhysicalConstants())

    @property
    def gm(self) -> float:
        return self.constants.G * self.mass

    @property
    def a0(self) -> float:
        return self.constants.a0

    def with_a0(self, a0: float) -> "GalaxyModel":
        return GalaxyModel(self.mass, self.test_mass, self.angular_momentum,
                           self.constants.with_a0(a0))


def _positive_radius(r):
    r_arr = np.asarray(r, dtype=float)
    if not np.all(r_arr > 0.0):
        raise ValidationError("radius must be positive")
    return r_arr if r_arr.ndim else float(r_arr)


def effective_potential(r, model: GalaxyModel):
    """``V_e`` in joules; accepts scalars or arrays."""
    r = _positive_radius(r)
    m, big_l = model.test_mass, model.angular_momentum
    return -model.gm * m / r + big_l ** 2 / (2.0 * m * r ** 2) + m * model.a0 * r


def effective_potential_derivative(r, model: GalaxyModel):
    r = _positive_radius(r)
    m, big_l = model.test_mass, model.angular_momentum
    return model.gm * m / r ** 2 - big_l ** 2 / (m * r ** 3) + m * model.a0


def newtonian_orbit_radius(model: GalaxyModel) -> float:
    """``L^2 / (G M m^2)``: the circular orbit without the expansion term."""
    if not model.angular_momentum > 0.0:
        raise ValidationError("circular orbits need positive angular momentum")
    return model.angular_momentum ** 2 / (model.gm * model.test_mass ** 2)


def circular_orbit_radius(model: GalaxyModel, bracket: Optional[Sequence[float]] = None) -> float:
    """Root of ``dV_e/dr`` by Brent's bracketed method.

    The default bracket is ``[r_N/10, 10 r_N]`` around the Newtonian radius.
    """
    r_n = newtonian_orbit_radius(model)
    lo, hi = bracket if bracket is not None else (r_n / 10.0, 10.0 * r_n)
    f_lo = effective_potential_derivative(lo, model)
    f_hi = effective_potential_derivative(hi, model)
    if f_lo == 0.0:
        return float(lo)
    if f_hi == 0.0:
        return float(hi)
    if f_lo * f_hi > 0.0:
        raise BracketError(lo, hi)
    return brentq(effective_potential_derivative, lo, hi, args=(model,),
                  xtol=1e-300, rtol=ROOT_RTOL, maxiter=500)


def golden_section_minimize(f, lo, hi, rel_tol, ratio=_GOLDEN):
    """Minimise a unimodal ``f`` on ``[lo, hi]``; works with any real number type."""
    a, b = lo, hi
    c = b - ratio * (b - a)
    d = a + ratio * (b - a)
    fc, fd = f(c), f(d)
    while abs(b - a) > rel_tol * abs(a + b) / 2:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - ratio * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + ratio * (b - a)
            fd = f(d)
    return (a + b) / 2


def effective_potential_minimizer(model: GalaxyModel, bracket: Optional[Sequence[float]] = None,
                                  digits: int = 40) -> float:
    """Minimiser of ``V_e`` by golden-section search in extended precision.

    ``V_e`` is flat to second order at its minimum, so a double-precision search
    cannot locate it better than ~1e-8 relative; evaluating the potential with
    ``digits`` significant digits removes that floor.
    """
    r_n = newtonian_orbit_radius(model)
    lo, hi = bracket if bracket is not None else (r_n / 10.0, 10.0 * r_n)
    with mpmath.workdps(digits):
        gm = mpmath.mpf(model.gm)
        m = mpmath.mpf(model.test_mass)
        big_l = mpmath.mpf(model.angular_momentum)
        a0 = mpmath.mpf(model.a0)

        def v_e(r):
            return -gm * m / r + big_l ** 2 / (2 * m * r ** 2) + m * a0 * r

        ratio = (mpmath.sqrt(5) - 1) / 2
        r_min = golden_section_minimize(v_e, mpmath.mpf(lo), mpmath.mpf(hi),
                                        mpmath.mpf(10) ** (-(digits // 2)), ratio)
        return float(r_min)


def circular_velocity(r, model: GalaxyModel):
    """``sqrt(GM/r + a0 r)`` in m/s."""
    r = _positive_radius(r)
    return np.sqrt(model.gm / r + model.a0 * r) if isinstance(r, np.ndarray) \
        else math.sqrt(model.gm / r + model.a0 * r)


def newtonian_velocity(r, model: GalaxyModel):
    r = _positive_radius(r)
    return np.sqrt(model.gm / r) if isinstance(r, np.ndarray) else math.sqrt(model.gm / r)


def vc_fourth_power(r, model: GalaxyModel):
    """``(GM/r)^2 + 2 G M a0 + a0^2 r^2``."""
    r = _positive_radius(r)
    gm, a0 = model.gm, model.a0
    return (gm / r) ** 2 + 2.0 * gm * a0 + a0 ** 2 * r ** 2


def crossover_radius(model: GalaxyModel) -> float:
    """``sqrt(GM/a0)``, where the Newtonian and expansion terms of ``v_c^2`` are equal."""
    if not model.a0 > 0.0:
        raise ValidationError("the crossover radius needs a0 > 0")
    return math.sqrt(model.gm / model.a0)


@dataclass
class RotationCurve:
    radii: np.ndarray
    v_newtonian: np.ndarray
    v_modified: np.ndarray
    light_year: float = 9.4607304725808e15

    HEADER = ("r_m", "r_ly", "v_newton_m_s", "v_modified_m_s",
              "v_newton_km_s", "v_modified_km_s")

    def rows(self) -> np.ndarray:
        return np.column_stack([
            self.radii, self.radii / self.light_year,
            self.v_newtonian, self.v_modified,
            self.v_newtonian / 1e3, self.v_modified / 1e3,
        ])

    def flatness_ratio(self) -> float:
        return float(self.v_modified.max() / self.v_modified.min())


def rotation_curve(model: GalaxyModel, r_min: float, r_max: float, n_samples: int,
                   spacing: str = "linear") -> RotationCurve:
    if not (0.0 < r_min < r_max) or not math.isfinite(r_max):
        raise ValidationError(f"need 0 < r_min < r_max, got [{r_min!r}, {r_max!r}]")
    if int(n_samples) != n_samples or n_samples < 2:
        raise ValidationError(f"need at least 2 samples, got {n_samples!r}")
    if spacing == "linear":
        radii = np.linspace(r_min, r_max, int(n_samples))
    elif spacing == "log":
        radii = np.geomspace(r_min, r_max, int(n_samples))
    else:
        raise ValidationError(f"unknown spacing {spacing!r}")
    return RotationCurve(radii, newtonian_velocity(radii, model),
                         circular_velocity(radii, model), model.constants.light_year)


def rotation_curve_minimum(curve: RotationCurve, model: GalaxyModel) -> Optional[float]:
    """Radius of the interior minimum of the modified curve, refined by root finding.

    The sampled minimum brackets the root of ``d(v_c^2)/dr = -GM/r^2 + a0``.
    Returns None if the sampled minimum lies on the range boundary.
    """
    k = int(np.argmin(curve.v_modified))
    if k == 0 or k == len(curve.radii) - 1:
        return None
    lo, hi = curve.radii[k - 1], curve.radii[k + 1]

    def slope(r):
        return -model.gm / r ** 2 + model.a0

    return brentq(slope, lo, hi, xtol=1e-300, rtol=ROOT_RTOL)


def tully_fisher_slope(masses: Sequence[float], constants: Optional[PhysicalConstants] = None,
                       radius: Optional[float] = None) -> float:
    """Least-squares slope of ``log v_c^4`` against ``log M``.

    Each galaxy is evaluated at its own crossover radius unless a fixed
    ``radius`` is given (required when ``a0 = 0``).
    """
    constants = constants or PhysicalConstants()
    masses = np.asarray(masses, dtype=float)
    if masses.ndim != 1 or len(np.unique(masses)) < 3 or not np.all(masses > 0.0):
        raise ValidationError("need at least 3 distinct positive masses")
    v4 = []
    for mass in masses:
        model = GalaxyModel(float(mass), constants=constants)
        r = radius if radius is not None else crossover_radius(model)
        v4.append(vc_fourth_power(r, model))
    slope, _ = np.polyfit(np.log(masses), np.log(v4), 1)
    return float(slope)
