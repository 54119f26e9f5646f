"""An invariant curve that is transcendental, and what numerics can say.

On the skew lattice <1, sqrt(2)+i> the same one-third-line construction
gives a closed invariant Jordan curve.  Reflecting wp through the line now
produces an elliptic function whose lattice is *incommensurable* with the
original (the change-of-basis coordinates are 2*sqrt(2) and -1), and
algebraically dependent elliptic functions must have commensurable
lattices, so no polynomial equation can vanish on this curve.

The degree scan illustrates the limit of residual-based evidence: the curve
is analytic on a wide annulus, so low-degree algebraic curves approximate
it to machine depth even though none matches it exactly.  The
incommensurability verdict, not the scan, is the decisive certificate.
"""

import math

from invarcurves import Lattice, invariants_from_lattice
from invarcurves.curves import (circle_fit, invariance_residual, is_circle,
                                lattice_commensurability,
                                parametric_wp_invariance_residual,
                                trace_wp_line, transcendence_scan)
from invarcurves.lattes import lattes_from_invariants

tau = complex(math.sqrt(2.0), 1.0)
lat = Lattice(1.0, tau)
inv = invariants_from_lattice(lat)
system = lattes_from_invariants(inv)
offset = tau / 3.0

trace = trace_wp_line(inv, offset, n=1024)
print("invariance residual:",
      f"{invariance_residual(system.map, trace):.2e}")
print("parametric invariance:",
      f"{parametric_wp_invariance_residual(inv, system.map, offset):.2e}")
print("circle?", is_circle(circle_fit(trace)))

print("\ndegree scan (held-out residuals; approximation, not equations):")
scan = transcendence_scan(trace, 6)
for rep in scan.reports:
    print(f"  degree {rep.degree}: {rep.residual:.2e}")
print("threshold verdict 'transcendence evidence':", scan.transcendence_evidence)
print("  (approximants below threshold exist from degree 4 on, so the")
print("   threshold scan cannot distinguish this curve from an algebraic one)")

verdict = lattice_commensurability(lat, Lattice(1.0, tau.conjugate()), q_max=1000)
print("\nlattice of the reflected function vs original:", verdict)
print("change-of-basis coordinates:")
print(verdict.coordinates)
print("(2*sqrt(2) =", 2 * math.sqrt(2), "is irrational: no rational relation,")
print(" hence the curve satisfies no polynomial equation)")
