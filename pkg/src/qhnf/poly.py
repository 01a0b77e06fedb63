"""Sparse exact-rational polynomial algebra in two variables, graded by a weight.

Everything downstream (the Euler splitting, the resonant spaces, the
normalization loop) runs on the types defined here: ``Weight``, ``Polynomial``,
the graded wrappers ``Qhp`` / ``Vqhp``, and the truncated ``VectorSeries``.
Coefficients are always ``fractions.Fraction``; no floating point anywhere.

All values are immutable after construction and all operations are pure, so
they are safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd

# Exponent pair (p1, p2) of a monomial x1^p1 * x2^p2.
Expo = tuple[int, int]

Coeff = Fraction | int


class GradingError(ValueError):
    """A polynomial does not carry the generalized degree it was declared with."""


@dataclass(frozen=True)
class Weight:
    """Grading vector (gamma1, gamma2): x_i gets degree gamma_i."""

    gamma1: int
    gamma2: int

    def __post_init__(self):
        if self.gamma1 < 1 or self.gamma2 < 1:
            raise ValueError("weight components must be positive integers")
        if gcd(self.gamma1, self.gamma2) != 1:
            raise ValueError("weight components must be coprime")

    @property
    def delta(self) -> int:
        return self.gamma1 + self.gamma2

    def gdeg(self, p: Expo) -> int:
        """Generalized degree p1*gamma1 + p2*gamma2 of the monomial x^p."""
        return p[0] * self.gamma1 + p[1] * self.gamma2

    def monomials(self, k: int) -> list[Expo]:
        """All exponent pairs of generalized degree k, in lex order by (p1, p2)."""
        if k < 0:
            return []
        out = []
        for p1 in range(k // self.gamma1 + 1):
            rest = k - p1 * self.gamma1
            if rest % self.gamma2 == 0:
                out.append((p1, rest // self.gamma2))
        return out


class Polynomial:
    """Sparse polynomial in x1, x2 over the rationals.

    Stored as a mapping from exponent pairs to nonzero Fractions; zero
    coefficients are dropped on construction and after every operation.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Expo, Coeff] | None = None):
        clean: dict[Expo, Fraction] = {}
        if terms:
            for p, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[p] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def monomial(cls, p: Expo, c: Coeff = 1) -> "Polynomial":
        return cls({p: c})

    @classmethod
    def constant(cls, c: Coeff) -> "Polynomial":
        return cls({(0, 0): c})

    def coeff(self, p: Expo) -> Fraction:
        return self.terms.get(p, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Expo, Fraction]]:
        return sorted(self.terms.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, Fraction(0)) + c
        return Polynomial(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial({p: -c for p, c in self.terms.items()})

    def scale(self, c: Coeff) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return Polynomial()
        return Polynomial({p: a * c for p, a in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: dict[Expo, Fraction] = {}
        for p, a in self.terms.items():
            for q, b in other.terms.items():
                key = (p[0] + q[0], p[1] + q[1])
                out[key] = out.get(key, Fraction(0)) + a * b
        return Polynomial(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def diff(self, i: int) -> "Polynomial":
        """Partial derivative with respect to x1 (i=1) or x2 (i=2)."""
        out: dict[Expo, Fraction] = {}
        for (p1, p2), c in self.terms.items():
            if i == 1 and p1 > 0:
                out[(p1 - 1, p2)] = c * p1
            elif i == 2 and p2 > 0:
                out[(p1, p2 - 1)] = c * p2
        return Polynomial(out)

    def gdegs(self, w: Weight) -> set[int]:
        """The set of generalized degrees occurring among the terms."""
        return {w.gdeg(p) for p in self.terms}

    def graded_parts(self, w: Weight) -> dict[int, "Polynomial"]:
        parts: dict[int, dict[Expo, Fraction]] = {}
        for p, c in self.terms.items():
            parts.setdefault(w.gdeg(p), {})[p] = c
        return {k: Polynomial(t) for k, t in sorted(parts.items())}

    def truncate_gdeg(self, w: Weight, bound: int) -> "Polynomial":
        """Drop all monomials of generalized degree above ``bound``."""
        return Polynomial({p: c for p, c in self.terms.items() if w.gdeg(p) <= bound})

    def to_string(self, names: tuple[str, str] = ("x1", "x2")) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for (p1, p2), c in self.sorted_terms():
            factors = []
            if p1:
                factors.append(names[0] if p1 == 1 else f"{names[0]}^{p1}")
            if p2:
                factors.append(names[1] if p2 == 1 else f"{names[1]}^{p2}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        s = parts[0]
        for piece in parts[1:]:
            s += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return s

    def __repr__(self):
        return f"Polynomial({self.to_string()})"


def inner(p: Polynomial, q: Polynomial) -> Fraction:
    """Apolar pairing p(D) q evaluated at the origin.

    On monomials: <<x^p, x^q>> = p1! * p2! if p == q, else 0.  Symmetric and
    positive definite; coefficients are rational, so conjugation is a no-op.
    """
    total = Fraction(0)
    small, large = (p.terms, q.terms) if len(p.terms) <= len(q.terms) else (q.terms, p.terms)
    for expo, a in small.items():
        b = large.get(expo)
        if b is not None:
            total += a * b * factorial(expo[0]) * factorial(expo[1])
    return total


def apply_diff_operator(op: Polynomial, target: Polynomial) -> Polynomial:
    """Apply the differential operator op(D) = sum_q c_q d1^q1 d2^q2 to target."""
    out = Polynomial()
    for (q1, q2), c in op.terms.items():
        term = target
        for _ in range(q1):
            term = term.diff(1)
        for _ in range(q2):
            term = term.diff(2)
        out = out + term.scale(c)
    return out


@dataclass(frozen=True)
class Qhp:
    """Quasi-homogeneous polynomial: a Polynomial all of whose monomials share
    generalized degree ``gdeg``.  The zero polynomial is allowed at any gdeg."""

    poly: Polynomial
    gdeg: int
    weight: Weight

    def __post_init__(self):
        for p in self.poly.terms:
            if self.weight.gdeg(p) != self.gdeg:
                raise GradingError(
                    f"monomial {p} has g.d. {self.weight.gdeg(p)}, expected {self.gdeg}"
                )

    @classmethod
    def zero(cls, w: Weight, k: int) -> "Qhp":
        return cls(Polynomial(), k, w)

    @classmethod
    def monomial(cls, w: Weight, p: Expo, c: Coeff = 1) -> "Qhp":
        return cls(Polynomial.monomial(p, c), w.gdeg(p), w)

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def __add__(self, other: "Qhp") -> "Qhp":
        if other.gdeg != self.gdeg:
            raise GradingError("cannot add QHPs of different g.d.")
        return Qhp(self.poly + other.poly, self.gdeg, self.weight)

    def __sub__(self, other: "Qhp") -> "Qhp":
        return self + (-other)

    def __neg__(self) -> "Qhp":
        return Qhp(-self.poly, self.gdeg, self.weight)

    def scale(self, c: Coeff) -> "Qhp":
        return Qhp(self.poly.scale(c), self.gdeg, self.weight)

    def __mul__(self, other: "Qhp") -> "Qhp":
        return Qhp(self.poly * other.poly, self.gdeg + other.gdeg, self.weight)

    def diff(self, i: int) -> "Qhp":
        gi = self.weight.gamma1 if i == 1 else self.weight.gamma2
        d = self.poly.diff(i)
        # The derivative is zero whenever gdeg < gamma_i; keep gdeg nonnegative.
        return Qhp(d, self.gdeg - gi if not d.is_zero else max(self.gdeg - gi, 0), self.weight)

    def coeff(self, p: Expo) -> Fraction:
        return self.poly.coeff(p)

    def __repr__(self):
        return f"Qhp({self.poly.to_string()}, gdeg={self.gdeg})"


@dataclass(frozen=True)
class Vqhp:
    """Vector quasi-homogeneous polynomial of g.d. k: components are QHPs of
    g.d. k+gamma1 and k+gamma2, identified with the planar vector field
    comp1 * d1 + comp2 * d2."""

    comp1: Qhp
    comp2: Qhp
    gdeg: int
    weight: Weight

    def __post_init__(self):
        w = self.weight
        if self.comp1.gdeg != self.gdeg + w.gamma1 or self.comp2.gdeg != self.gdeg + w.gamma2:
            raise GradingError("component g.d. must be gdeg + gamma_i")
        if self.comp1.weight != w or self.comp2.weight != w:
            raise GradingError("components must share the field weight")

    @classmethod
    def zero(cls, w: Weight, k: int) -> "Vqhp":
        return cls(Qhp.zero(w, k + w.gamma1), Qhp.zero(w, k + w.gamma2), k, w)

    @classmethod
    def from_polys(cls, w: Weight, k: int, f1: Polynomial, f2: Polynomial) -> "Vqhp":
        return cls(Qhp(f1, k + w.gamma1, w), Qhp(f2, k + w.gamma2, w), k, w)

    @property
    def is_zero(self) -> bool:
        return self.comp1.is_zero and self.comp2.is_zero

    def component(self, i: int) -> Qhp:
        return self.comp1 if i == 1 else self.comp2

    def __add__(self, other: "Vqhp") -> "Vqhp":
        if other.gdeg != self.gdeg:
            raise GradingError("cannot add VQHPs of different g.d.")
        return Vqhp(self.comp1 + other.comp1, self.comp2 + other.comp2, self.gdeg, self.weight)

    def __sub__(self, other: "Vqhp") -> "Vqhp":
        return self + (-other)

    def __neg__(self) -> "Vqhp":
        return Vqhp(-self.comp1, -self.comp2, self.gdeg, self.weight)

    def scale(self, c: Coeff) -> "Vqhp":
        return Vqhp(self.comp1.scale(c), self.comp2.scale(c), self.gdeg, self.weight)

    def __repr__(self):
        return (
            f"Vqhp(({self.comp1.poly.to_string()}, {self.comp2.poly.to_string()}),"
            f" gdeg={self.gdeg})"
        )


def euler(w: Weight) -> Vqhp:
    """The Euler field (gamma1*x1, gamma2*x2), a VQHP of g.d. 0."""
    return Vqhp.from_polys(
        w, 0,
        Polynomial.monomial((1, 0), w.gamma1),
        Polynomial.monomial((0, 1), w.gamma2),
    )


def scalar_times_euler(q: Qhp) -> Vqhp:
    """The field q * (Euler field), a VQHP of g.d. q.gdeg."""
    w = q.weight
    e = euler(w)
    return Vqhp(
        Qhp(q.poly * e.comp1.poly, q.gdeg + w.gamma1, w),
        Qhp(q.poly * e.comp2.poly, q.gdeg + w.gamma2, w),
        q.gdeg,
        w,
    )


def apply_field_poly(f1: Polynomial, f2: Polynomial, g: Polynomial) -> Polynomial:
    return f1 * g.diff(1) + f2 * g.diff(2)


def apply_field(f: Vqhp, g: Qhp | Polynomial) -> Qhp | Polynomial:
    """Action of the field f on g: f1 * d1(g) + f2 * d2(g).

    Graded input gives graded output: a QHP of g.d. l maps to one of g.d.
    l + f.gdeg.
    """
    if isinstance(g, Qhp):
        res = apply_field_poly(f.comp1.poly, f.comp2.poly, g.poly)
        return Qhp(res, g.gdeg + f.gdeg, f.weight)
    return apply_field_poly(f.comp1.poly, f.comp2.poly, g)


def lie_bracket(f: Vqhp, g: Vqhp) -> Vqhp:
    """Lie bracket [f, g] = (f(g1) - g(f1), f(g2) - g(f2)), g.d. adds."""
    if f.weight != g.weight:
        raise GradingError("bracket operands must share the weight")
    k = f.gdeg + g.gdeg
    c1 = apply_field_poly(f.comp1.poly, f.comp2.poly, g.comp1.poly) - \
        apply_field_poly(g.comp1.poly, g.comp2.poly, f.comp1.poly)
    c2 = apply_field_poly(f.comp1.poly, f.comp2.poly, g.comp2.poly) - \
        apply_field_poly(g.comp1.poly, g.comp2.poly, f.comp2.poly)
    return Vqhp.from_polys(f.weight, k, c1, c2)


def divergence(f: Vqhp) -> Qhp:
    """d1(f1) + d2(f2), a QHP of the same g.d. as f."""
    return Qhp(f.comp1.poly.diff(1) + f.comp2.poly.diff(2), f.gdeg, f.weight)


INFINITE_ORDER = None


@dataclass(frozen=True)
class VectorSeries:
    """Graded vector field truncated at generalized degree N: a map from g.d.
    k (0 <= k <= N) to the VQHP term of that degree."""

    weight: Weight
    truncation: int
    terms: dict[int, Vqhp]

    def __post_init__(self):
        if self.truncation < 1:
            raise ValueError("truncation must be positive")
        clean = {}
        for k, f in self.terms.items():
            if f.gdeg != k or f.weight != self.weight:
                raise GradingError("series term tagged with wrong g.d. or weight")
            if 0 <= k <= self.truncation and not f.is_zero:
                clean[k] = f
        object.__setattr__(self, "terms", clean)

    def term(self, k: int) -> Vqhp:
        return self.terms.get(k, Vqhp.zero(self.weight, k))

    def order(self) -> int | None:
        """Least g.d. with a nonzero term; None for the zero series."""
        return min(self.terms) if self.terms else INFINITE_ORDER

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def with_term(self, f: Vqhp) -> "VectorSeries":
        terms = dict(self.terms)
        terms[f.gdeg] = f
        return VectorSeries(self.weight, self.truncation, terms)

    def __eq__(self, other):
        if not isinstance(other, VectorSeries):
            return NotImplemented
        return (self.weight, self.truncation, self.terms) == (other.weight, other.truncation, other.terms)
