"""Normalize a randomly perturbed cusp, start to finish.

The unperturbed part is the Hamiltonian field of H = -x2^3/3, i.e. the cusp
field (x2^2, 0).  We throw a dense random rational perturbation at it, run
the two normalization passes, and show what survives:

  1. the intermediate stage, where each degree's Hamiltonian/Euler split
     parts are confined to the chosen resonant monomial spans, and
  2. the final normal form, where only the resonant coefficient set is left
     (one member of each either/or pair has been zeroed).

Everything is exact rational arithmetic, and the conjugacy between input and
output is re-verified independently at the end.
"""

import random
from fractions import Fraction

from qhnf import (
    HamiltonianSystem,
    PairPolicy,
    Polynomial,
    Qhp,
    Weight,
    build_y_set,
    compute_gphnf,
    random_perturbation,
    reduce_to_gnf,
    verify_conjugacy,
)

N = 10
w = Weight(1, 1)
h = Qhp(Polynomial.monomial((0, 3), Fraction(-1, 3)), 3, w)
chi = 1

rng = random.Random(42)
system = HamiltonianSystem(w, h, chi, random_perturbation(w, chi, N, rng))
print(f"input: cusp + dense random perturbation, truncated at g.d. {N}")
print(f"nonzero input coefficients: {len(system.support())}")

normal, tr, provider = compute_gphnf(system)
print(f"\nafter the first pass ({len(tr)} generators):")
for k in sorted(normal.perturbation.terms):
    t = normal.perturbation.terms[k]
    print(f"  degree {k}: ({t.comp1.poly.to_string()}, {t.comp2.poly.to_string()})")

y_set = build_y_set(h, provider, N)
gnf, tr2 = reduce_to_gnf(normal, y_set, PairPolicy(default="zero-first"))
tr = tr.extend(tr2)
print(f"\nnormal form ({len(tr)} generators in total):")
for k in sorted(gnf.perturbation.terms):
    t = gnf.perturbation.terms[k]
    print(f"  degree {k}: ({t.comp1.poly.to_string()}, {t.comp2.poly.to_string()})")

print(f"\nnonzero coefficients left: {len(gnf.support())}")
report = verify_conjugacy(system, tr, gnf)
print("independent conjugacy check:", "exact" if report.ok else "FAILED")
