"""Closed-form reference data for the four monomial-Hamiltonian families.

For each family this module knows the unperturbed data (stream function,
weight, grading offset), the per-degree resonant monomial sets, and the full
coefficient support pattern of the generalized normal form, straight from the
displayed formulas.  Nothing here calls the engine: the catalog is the
independent oracle the tests compare the engine against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .poly import Expo, Polynomial, Qhp, Weight

Slot = tuple[int, Expo]

TAGS = ("takens-like", "lm-monomial", "diagonal", "binomial")


class InvalidParamsError(ValueError):
    """Family parameters outside the admissible range."""


class OutOfRangeDegreeError(ValueError):
    """The closed form for this family only covers high enough degrees."""


@dataclass(frozen=True)
class CaseId:
    """One member of the four unperturbed-part families.

    takens-like: field (x2^(m-1), 0), m >= 2.
    lm-monomial: field (-m x1^l x2^(m-1), l x1^(l-1) x2^m), l > m >= 1.
    diagonal:    field (-x1^m x2^(m-1), x1^(m-1) x2^m), m >= 1.
    binomial:    field (sign * x2^(m-1), x1^(l-1)), l >= m >= 2.
    """

    tag: str
    params: tuple[int, ...]
    sign: int = 1

    def __post_init__(self):
        if self.tag not in TAGS:
            raise InvalidParamsError(f"unknown family tag {self.tag!r}")
        if self.sign not in (1, -1):
            raise InvalidParamsError("sign must be +1 or -1")
        if self.tag == "takens-like":
            (m,) = self.params
            if m < 2:
                raise InvalidParamsError("takens-like needs m >= 2")
        elif self.tag == "lm-monomial":
            l, m = self.params
            if not l > m >= 1:
                raise InvalidParamsError("lm-monomial needs l > m >= 1")
        elif self.tag == "diagonal":
            (m,) = self.params
            if m < 1:
                raise InvalidParamsError("diagonal needs m >= 1")
        else:
            l, m = self.params
            if not l >= m >= 2:
                raise InvalidParamsError("binomial needs l >= m >= 2")

    @property
    def d(self) -> int:
        if self.tag in ("lm-monomial", "binomial"):
            l, m = self.params
            return gcd(l, m)
        return 1


def unperturbed(case: CaseId) -> tuple[Qhp, Weight, int]:
    """Stream function, weight, and grading offset chi of the family member."""
    if case.tag == "takens-like":
        (m,) = case.params
        w = Weight(1, 1)
        h = Qhp(Polynomial.monomial((0, m), Fraction(-1, m)), m, w)
        return h, w, m - 2
    if case.tag == "lm-monomial":
        l, m = case.params
        w = Weight(1, 1)
        h = Qhp(Polynomial.monomial((l, m)), l + m, w)
        return h, w, l + m - 2
    if case.tag == "diagonal":
        (m,) = case.params
        w = Weight(1, 1)
        h = Qhp(Polynomial.monomial((m, m), Fraction(1, m)), 2 * m, w)
        return h, w, 2 * m - 2
    l, m = case.params
    d = case.d
    w = Weight(m // d, l // d)
    poly = Polynomial({(l, 0): Fraction(1, l), (0, m): Fraction(-case.sign, m)})
    h = Qhp(poly, l * m // d, w)
    return h, w, (l * m - l - m) // d


def predict_resonant(case: CaseId, k: int) -> set[Expo]:
    """Monomials of the displayed resonant set in generalized degree k.

    For the first three families these monomials span the resonant space;
    for the binomial family (only defined for k > l*m/d) they form the
    minimal resonant set with the canonical representative choice.
    """
    _, w, _ = unperturbed(case)
    mons = w.monomials(k)
    if case.tag == "takens-like":
        (m,) = case.params
        return {p for p in mons if p[1] <= m - 2}
    if case.tag == "lm-monomial":
        l, m = case.params
        return {
            p
            for p in mons
            if p[0] <= l - 2 or p[1] <= m - 2 or l * (p[1] + 1) == m * (p[0] + 1)
        }
    if case.tag == "diagonal":
        (m,) = case.params
        return {p for p in mons if p[0] <= m - 2 or p[1] <= m - 2 or p[0] == p[1]}
    l, m = case.params
    if k <= l * m // case.d:
        raise OutOfRangeDegreeError("binomial closed form needs k > l*m/d")
    return {p for p in mons if p[1] <= m - 2 and (p[0] + 1) % l != 0}


def predict_reduced(case: CaseId, k: int) -> set[Expo]:
    """Reduced analog of predict_resonant, on the degrees the closed form
    covers."""
    if case.tag == "takens-like":
        (m,) = case.params
        if k <= m:
            raise OutOfRangeDegreeError("takens-like reduced form needs k > m")
        return predict_resonant(case, k)
    if case.tag == "lm-monomial":
        l, m = case.params
        if k <= l + m:
            raise OutOfRangeDegreeError("lm-monomial reduced form needs k > l + m")
        return predict_resonant(case, k)
    if case.tag == "diagonal":
        (m,) = case.params
        if k <= 2 * m:
            raise OutOfRangeDegreeError("diagonal reduced form needs k > 2m")
        full = predict_resonant(case, k)
        return {p for p in full if p[0] != p[1]}
    l, m = case.params
    if k <= l * m // case.d:
        raise OutOfRangeDegreeError("binomial closed form needs k > l*m/d")
    _, w, _ = unperturbed(case)
    out = set()
    for p in w.monomials(k):
        p1, p2 = p
        if p2 == 0 and p1 % l != 0 and (p1 + 1) % l != 0:
            out.add(p)
        elif 1 <= p2 <= m - 2 and (p1 + 1) % l != 0:
            out.add(p)
    return out


@dataclass(frozen=True)
class SupportPattern:
    """Admissible nonzero coefficient slots of a normal form.

    ``free`` slots may carry any value; within each ``pairs`` entry at most
    one member may be nonzero.
    """

    free: frozenset[Slot]
    pairs: tuple[tuple[Slot, Slot], ...]

    def all_slots(self) -> set[Slot]:
        out = set(self.free)
        for a, b in self.pairs:
            out.add(a)
            out.add(b)
        return out

    def violations(self, support: dict[Slot, Fraction]) -> list[str]:
        """Human-readable findings; empty means the support conforms."""
        nonzero = {s for s, c in support.items() if c != 0}
        problems = [f"slot outside pattern: {s}" for s in sorted(nonzero - self.all_slots())]
        for a, b in self.pairs:
            if a in nonzero and b in nonzero:
                problems.append(f"both members of pair {a} / {b} are nonzero")
        return problems

    def ok(self, support: dict[Slot, Fraction]) -> bool:
        return not self.violations(support)


class _PatternBuilder:
    """Collects slots, dropping anything with negative exponents or with a
    term degree outside [chi + 1, n]; a pair with one admissible member
    degenerates to a free slot."""

    def __init__(self, w: Weight, chi: int, n: int):
        self.w, self.chi, self.n = w, chi, n
        self.free: set[Slot] = set()
        self.pairs: list[tuple[Slot, Slot]] = []

    def _ok(self, slot: Slot) -> bool:
        comp, (a, b) = slot
        if a < 0 or b < 0:
            return False
        g = self.w.gdeg((a, b)) - (self.w.gamma1 if comp == 1 else self.w.gamma2)
        return self.chi + 1 <= g <= self.n

    def add(self, slot: Slot):
        if self._ok(slot):
            self.free.add(slot)

    def add_pair(self, a: Slot, b: Slot):
        ok_a, ok_b = self._ok(a), self._ok(b)
        if ok_a and ok_b:
            self.pairs.append((a, b))
        elif ok_a:
            self.free.add(a)
        elif ok_b:
            self.free.add(b)

    def build(self) -> SupportPattern:
        return SupportPattern(frozenset(self.free), tuple(self.pairs))


def theta(k: int) -> int:
    """Unit step: 0 for negative arguments, 1 otherwise."""
    return 1 if k >= 0 else 0


def predict_support(case: CaseId, n: int) -> SupportPattern:
    """Coefficient support of the family's generalized normal form, truncated
    so every slot's term degree lies in [chi + 1, n]."""
    h, w, chi = unperturbed(case)
    b = _PatternBuilder(w, chi, n)
    bound = n + 2 * w.delta + sum(case.params) + 6
    if case.tag == "takens-like":
        (m,) = case.params
        for i in range(m, bound):
            for j in range(0, m - 2):
                b.add((1, (i - j, j)))
            for j in range(0, m - 1):
                b.add((2, (i - j, j)))
        for i in range(bound):
            b.add_pair((1, (i + 2, m - 2)), (2, (i + 1, m - 1)))
    elif case.tag == "lm-monomial":
        l, m = case.params
        d = case.d
        lp, mp = l // d, m // d
        for k in range(l + m, bound):
            for i in range(0, l - 1):
                b.add((1, (i, k - i)))
            for j in range(0, m - 2):
                b.add((1, (k - j, j)))
            for i in range(0, l - 2):
                b.add((2, (i, k - i)))
            for j in range(0, m - 1):
                b.add((2, (k - j, j)))
        for i in range(bound):
            b.add_pair((1, (i + l + 2, m - 2)), (2, (i + l + 1, m - 1)))
        for j in range(bound):
            b.add_pair((1, (l - 1, m + j + 1)), (2, (l - 2, m + j + 2)))
        for r in range(d + 1, bound):
            b.add_pair((1, (r * lp, r * mp - 1)), (2, (r * lp - 1, r * mp)))
        s0 = d + 1 + (3 * d - 1) // (l + m)
        for s in range(s0, bound):
            if m == 1:
                b.add((1, (s * lp - 1, s * mp - 2)))
            else:
                b.add_pair((1, (s * lp - 1, s * mp - 2)), (2, (s * lp - 2, s * mp - 1)))
    elif case.tag == "diagonal":
        (m,) = case.params
        for k in range(2 * m, bound):
            for i in range(0, m - 1):
                b.add((1, (i, k - i)))
            for j in range(0, m - 2):
                b.add((1, (k - j, j)))
            for i in range(0, m - 2):
                b.add((2, (i, k - i)))
            for j in range(0, m - 1):
                b.add((2, (k - j, j)))
        for i in range(bound):
            b.add_pair((1, (i + m + 2, m - 2)), (2, (i + m + 1, m - 1)))
        for j in range(bound):
            b.add_pair((1, (m - 1, m + j + 1)), (2, (m - 2, m + j + 2)))
        for r in range(bound):
            b.add_pair((1, (r + m + 1, r + m)), (2, (r + m, r + m + 1)))
    else:
        l, m = case.params
        for j in range(1, m - 1):
            for i in range(bound):
                if i % l in (0, l - 1) or i * m <= l * (m - j):
                    continue
                b.add((1, (i, j - 1)))
                b.add((2, (i - 1, j)))
            for r in range(1 + theta(m - j * l), bound):
                b.add_pair((1, (r * l - 1, j - 1)), (2, (r * l - 2, j)))
            for s in range(1, bound):
                if l == m and j == m - 2:
                    # The Euler-generator trick cannot touch the second slot
                    # here; the first is forced to zero instead.
                    b.add((2, (s * l - 1, j)))
                else:
                    b.add_pair((1, (s * l, j - 1)), (2, (s * l - 1, j)))
        for i in range(bound):
            if i % l != 0 and i * m > l:
                b.add_pair((1, (i, m - 2)), (2, (i - 1, m - 1)))
        for i in range(bound):
            if i % l not in (0, l - 1) and i > l:
                b.add((2, (i - 1, 0)))
    return b.build()
