"""Tests for the conjugate operator and the resonant space machinery."""

import random
from fractions import Fraction

import pytest

from qhnf import linalg
from qhnf.euler import ham_field
from qhnf.poly import Polynomial, Qhp, Weight, apply_field, inner
from qhnf.resonance import (
    ResonantSetProvider,
    SingularPairingError,
    SizeMismatchError,
    check_resonant_set,
    conj_apply,
    minimal_resonant_set,
    reduced_resonant_basis,
    resonant_basis,
)

# a few hand-picked unperturbed stream functions of varying chi
CASES = [
    Qhp(Polynomial.monomial((0, 3), Fraction(-1, 3)), 3, Weight(1, 1)),  # chi 1
    Qhp.monomial(Weight(1, 1), (2, 1)),                                  # chi 1
    Qhp.monomial(Weight(1, 1), (3, 2)),                                  # chi 3
    Qhp(Polynomial({(2, 2): Fraction(1, 2)}), 4, Weight(1, 1)),          # chi 2
    Qhp(Polynomial({(3, 0): Fraction(1, 3), (0, 2): Fraction(-1, 2)}),
        6, Weight(2, 3)),                                                # chi 1
    Qhp(Polynomial({(1, 1): 1}), 2, Weight(1, 1)),                       # chi 0
]


def _chi(h):
    return h.gdeg - h.weight.delta


def _rand_qhp(rng, w, k):
    return Qhp(
        Polynomial({p: Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for p in w.monomials(k)}),
        k, w,
    )


def test_conj_apply_lowers_degree():
    for h in CASES:
        w, chi = h.weight, _chi(h)
        for k in range(chi + 1, chi + 6):
            for p in w.monomials(k):
                image = conj_apply(h, Polynomial.monomial(p))
                for q in image.terms:
                    assert w.gdeg(q) == k - chi


def test_adjointness_of_conj_apply():
    # inner(conj_apply(h, p), q) == inner(p, apply_field(ham_field(h), q))
    rng = random.Random(41)
    for h in CASES:
        w, chi = h.weight, _chi(h)
        for _ in range(20):
            k = rng.randint(chi + 1, chi + 7)
            p = _rand_qhp(rng, w, k)
            q = _rand_qhp(rng, w, k - chi)
            lhs = inner(conj_apply(h, p), q.poly)
            rhs = inner(p.poly, apply_field(ham_field(h), q).poly)
            assert lhs == rhs


def test_resonant_basis_is_in_kernel():
    for h in CASES:
        chi = _chi(h)
        for k in range(chi + 1, chi + 7):
            basis = resonant_basis(h, k)
            for r in basis.basis:
                assert conj_apply(h, r).is_zero
            # dimension agrees with the rank-nullity count
            w = h.weight
            mons = w.monomials(k)
            rank = len(mons) - basis.dim
            images = [
                [conj_apply(h, Polynomial.monomial(p)).coeff(q) for q in w.monomials(k - chi)]
                for p in mons
            ]
            assert linalg.rank(images) == rank


def test_reduced_basis_contained_in_kernel_and_image():
    for h in CASES:
        w, chi = h.weight, _chi(h)
        for k in range(chi + 1, chi + 7):
            red = reduced_resonant_basis(h, k)
            full = resonant_basis(h, k)
            assert red.dim <= full.dim
            mons = sorted(w.monomials(k), key=lambda p: (p[1], p[0]))
            full_rows = [[r.poly.coeff(p) for p in mons] for r in full.basis]
            image_rows = [
                [conj_apply(h, Polynomial.monomial(q)).coeff(p) for p in mons]
                for q in w.monomials(k + chi)
            ]
            for r in red.basis:
                assert conj_apply(h, r).is_zero
                row = [r.poly.coeff(p) for p in mons]
                assert linalg.rank(full_rows + [row]) == linalg.rank(full_rows)
                assert linalg.rank(image_rows + [row]) == linalg.rank(image_rows)


def test_minimal_set_certificate_nonzero():
    for h in CASES:
        chi = _chi(h)
        for k in range(chi + 1, chi + 7):
            for reduced in (False, True):
                basis = (reduced_resonant_basis if reduced else resonant_basis)(h, k)
                choice = minimal_resonant_set(basis)
                assert choice.size == basis.dim
                assert choice.certificate != 0


def test_check_resonant_set_errors():
    h = CASES[0]  # chi 1, kernel at k=2 is {1-dim}: monomials with p2 <= m-2 = 1... use engine
    basis = resonant_basis(h, 3)
    assert basis.dim >= 2
    with pytest.raises(SizeMismatchError):
        check_resonant_set(basis, [(3, 0)])
    wrong_deg = [(0, 1)] * basis.dim
    with pytest.raises(SizeMismatchError):
        check_resonant_set(basis, wrong_deg)
    # a repeated monomial makes the pairing matrix singular
    good = list(minimal_resonant_set(basis).monomials)
    with pytest.raises(SingularPairingError):
        check_resonant_set(basis, [good[0]] * basis.dim)


def test_provider_caching_and_override():
    h = CASES[1]
    prov = ResonantSetProvider(h)
    b1 = prov.basis(4)
    assert prov.basis(4) is b1
    c1 = prov.choice(4)
    assert prov.choice(4) is c1
    # overriding with the same monomials revalidates and installs
    c2 = prov.override(4, False, list(c1.monomials))
    assert prov.choice(4) is c2
    with pytest.raises(SingularPairingError):
        prov.override(4, False, [c1.monomials[0]] * c1.size)


def test_provider_stream_space_switches_at_chi_zero():
    pos = ResonantSetProvider(CASES[1])
    assert pos.chi == 1
    assert pos.stream_reduced is True
    zero = ResonantSetProvider(CASES[-1])
    assert zero.chi == 0
    assert zero.stream_reduced is False
    # at chi = 0 the stream constraint uses the full kernel
    k = 4
    assert zero.stream_basis(k).dim == zero.basis(k).dim
    assert pos.stream_basis(5).reduced is True
