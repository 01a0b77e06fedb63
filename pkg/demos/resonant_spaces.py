"""Walk through the resonant-space machinery on two unperturbed parts.

For a quasi-homogeneous Hamiltonian H the perturbation terms that survive
normalization are controlled by the kernel of the conjugate operator (the
adjoint of the Hamiltonian derivation under the apolar pairing).  This script
prints, degree by degree, a kernel basis, the reduced subspace, and the
minimal monomial sets the normalizer actually uses.
"""

from fractions import Fraction

from qhnf import Polynomial, Qhp, ResonantSetProvider, Weight

EXAMPLES = [
    ("cusp-like, H = -x2^3/3 (weight (1,1))",
     Qhp(Polynomial.monomial((0, 3), Fraction(-1, 3)), 3, Weight(1, 1))),
    ("hyperbolic umbilic, H = x1^3/3 - x2^2/2 (weight (2,3))",
     Qhp(Polynomial({(3, 0): Fraction(1, 3), (0, 2): Fraction(-1, 2)}), 6, Weight(2, 3))),
]

for title, h in EXAMPLES:
    chi = h.gdeg - h.weight.delta
    print(f"== {title}, chi = {chi} ==")
    provider = ResonantSetProvider(h)
    for k in range(chi + 1, chi + 9):
        basis = provider.basis(k)
        reduced = provider.basis(k, reduced=True)
        plain_set = provider.choice(k).monomials
        reduced_set = provider.choice(k, reduced=True).monomials
        print(f"degree {k}: dim = {basis.dim}, reduced dim = {reduced.dim}")
        for r in basis.basis:
            print(f"    kernel element: {r.poly.to_string()}")
        print(f"    minimal set: {list(plain_set)}  reduced: {list(reduced_set)}")
    print()
