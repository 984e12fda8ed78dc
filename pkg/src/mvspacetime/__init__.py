"""Geometric-algebra spacetime, a five-dimensional weak-field metric and galaxy rotation curves."""
from ._backend import BACKEND
from .algebra import (E1, E2, E3, E12, E23, E31, I, ONE, Multivector, Vector3,
                      clifford_conjugate, exp, exp_bivector, exp_vector,
                      geometric_product, grade_project, reverse)
from .errors import (BracketError, CoordinateSingularityError, NumericalError,
                     OrthogonalityError, StrongFieldError, ValidationError)
from .gravity import (DEFAULT_CONSTANTS, GeodesicState, MetricModel, PhysicalConstants,
                      christoffel_exact, circular_state, integrate_geodesic,
                      integrate_reduced)
from .rotation import (GalaxyModel, circular_orbit_radius, circular_velocity,
                       crossover_radius, rotation_curve, tully_fisher_slope)
from .spacetime import (LorentzOperator, SpacetimeEvent, compose, interval_squared,
                        lorentz_transform, make_event)

__version__ = "0.1.0"
