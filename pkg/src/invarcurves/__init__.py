"""Numerical laboratory for invariant analytic curves of rational maps:
linearizers at repelling fixed points, Weierstrass elliptic data and the
degree-4 duplication map, semiconjugacy triples, and curve classification."""

__version__ = "0.1.0"

from .rational import (Polynomial, RationalMap, SpherePoint, FixedPointInfo,
                       INFINITY, chordal, compose, iterate, fixed_points,
                       critical_points, multiplier, poly_roots, maps_equal)
from .series import TruncatedPowerSeries, compose_rational
from .poincare import (PoincareSeries, solve_coefficients, evaluate,
                       trace_real_axis, injectivity_check, multiplier_real_check)
from .elliptic import (Lattice, EllipticInvariants, invariants_from_lattice,
                       reduce_to_fundamental, wp_eval, wp_prime_eval)
from .lattes import LattesSystem, lattes_from_invariants, lattes_from_lattice, verify_lattes
from .semiconj import (SemiconjTriple, make_ritt_triple, make_power_family,
                       chebyshev, verify_joukowski_identity, pakovich_example)
from .curves import (CurveTrace, FitReport, trace_wp_line, invariance_residual,
                     circle_fit, algebraic_fit, transcendence_scan,
                     lattice_commensurability, example1_xy_check)
