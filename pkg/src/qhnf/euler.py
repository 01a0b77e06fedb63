"""Unique splitting of a graded planar field into a Hamiltonian part and a
scalar multiple of the Euler field.

A VQHP f of g.d. k decomposes as f = (-d2 I, d1 I) + J * E where
J = div(f) / (k + delta) and I is the stream function of the divergence-free
remainder.  The splitting is exact and invertible; ``recompose`` undoes
``decompose`` bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import Polynomial, Qhp, Vqhp, Weight, divergence, scalar_times_euler


class DegreeTooSmallError(ValueError):
    """A nonzero stream function of g.d. below delta has no graded field."""


def ham_field(h: Qhp) -> Vqhp:
    """Hamiltonian field (-d2 h, d1 h) of the stream function h.

    h of g.d. k + delta yields a divergence-free VQHP of g.d. k.
    """
    w = h.weight
    if not h.is_zero and h.gdeg < w.delta:
        raise DegreeTooSmallError(
            f"stream function g.d. {h.gdeg} is below delta={w.delta}"
        )
    k = h.gdeg - w.delta if not h.is_zero else max(h.gdeg - w.delta, 0)
    return Vqhp.from_polys(w, k, -h.poly.diff(2), h.poly.diff(1))


@dataclass(frozen=True)
class EulerSplit:
    """Result of decomposing a VQHP of g.d. k: stream function ham_part of
    g.d. k + delta and Euler coefficient scalar_part of g.d. k."""

    ham_part: Qhp
    scalar_part: Qhp
    gdeg: int


def decompose(f: Vqhp) -> EulerSplit:
    """Split f = ham_field(I) + J * E with J = div(f) / (gdeg + delta).

    I is rebuilt monomial-wise from the divergence-free remainder: terms with
    a positive first exponent come from integrating the second component in
    x1, the pure-x2 terms from integrating the first component in x2.  The
    constant term of I is zero (grading forbids it for gdeg + delta > 0).
    """
    w = f.weight
    k = f.gdeg
    j = divergence(f).scale(Fraction(1, k + w.delta))
    resid = f - scalar_times_euler(j)
    terms: dict[tuple[int, int], Fraction] = {}
    for (a, b), c in resid.comp2.poly.terms.items():  # d1 I = resid_2
        terms[(a + 1, b)] = c / (a + 1)
    for (a, b), c in resid.comp1.poly.terms.items():  # -d2 I = resid_1
        if a == 0:
            terms[(0, b + 1)] = -c / (b + 1)
    i = Qhp(Polynomial(terms), k + w.delta, w)
    return EulerSplit(i, j, k)


def recompose(s: EulerSplit) -> Vqhp:
    """Reassemble ham_field(I) + J * E."""
    return ham_field(s.ham_part) + scalar_times_euler(s.scalar_part)
