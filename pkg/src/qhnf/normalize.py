"""Normalization pipeline for planar systems with a Hamiltonian
quasi-homogeneous unperturbed part.

The loop runs degree by degree: split the current perturbation term into a
Hamiltonian part and an Euler-direction part, project both onto the chosen
resonant monomial sets, solve the homological equation exactly for a
near-identity generator that removes the rest, and push the whole field
forward through the substitution.  A second pass trims the result down to a
generalized normal form whose nonzero coefficients all sit in a resonant
coefficient set built by three combinatorial rules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .euler import decompose, ham_field
from .poly import (
    Expo,
    GradingError,
    Polynomial,
    Qhp,
    VectorSeries,
    Vqhp,
    Weight,
    inner,
    lie_bracket,
    scalar_times_euler,
)
from .resonance import ResonantSetChoice, ResonantSetProvider

# A coefficient slot of the perturbation: component index and exponent pair.
Slot = tuple[int, Expo]


class InconsistentSolveError(RuntimeError):
    """A homological solve that theory guarantees consistent failed: a bug."""


class SingularJointSystemError(RuntimeError):
    """The per-degree elimination system for the GNF step is unsolvable."""


class WitnessNotFoundError(RuntimeError):
    """No admissible exponent certifies a rule-iii coefficient pair."""


@dataclass(frozen=True)
class HamiltonianSystem:
    """A field ham_field(H) + perturbation, truncated at g.d. ``truncation``.

    H is a QHP of g.d. chi + delta; every perturbation term has g.d. in
    [chi + 1, truncation].
    """

    weight: Weight
    hamiltonian: Qhp
    chi: int
    perturbation: VectorSeries

    def __post_init__(self):
        w = self.weight
        if self.hamiltonian.is_zero:
            raise ValueError("the unperturbed Hamiltonian must be nonzero")
        if self.hamiltonian.gdeg != self.chi + w.delta:
            raise GradingError("Hamiltonian g.d. must equal chi + delta")
        if ham_field(self.hamiltonian).is_zero:
            raise ValueError("the unperturbed field vanishes")
        order = self.perturbation.order()
        if order is not None and order <= self.chi:
            raise GradingError("perturbation order must exceed chi")
        if self.perturbation.weight != w:
            raise GradingError("perturbation weight mismatch")

    @property
    def truncation(self) -> int:
        return self.perturbation.truncation

    def unperturbed_field(self) -> Vqhp:
        return ham_field(self.hamiltonian)

    def field_polys(self) -> tuple[Polynomial, Polynomial]:
        """Both components of the full field as plain polynomials."""
        h = self.unperturbed_field()
        f1, f2 = h.comp1.poly, h.comp2.poly
        for term in self.perturbation.terms.values():
            f1 = f1 + term.comp1.poly
            f2 = f2 + term.comp2.poly
        return f1, f2

    def support(self) -> dict[Slot, Fraction]:
        """Nonzero perturbation coefficients keyed by (component, exponents)."""
        out: dict[Slot, Fraction] = {}
        for term in self.perturbation.terms.values():
            for p, c in term.comp1.poly.terms.items():
                out[(1, p)] = c
            for p, c in term.comp2.poly.terms.items():
                out[(2, p)] = c
        return out

    def with_perturbation(self, series: VectorSeries) -> "HamiltonianSystem":
        return HamiltonianSystem(self.weight, self.hamiltonian, self.chi, series)


@dataclass(frozen=True)
class FgSplit:
    """Per-degree Euler splitting of the perturbation: for index k >= 1 the
    term of g.d. k + chi equals ham_field(f[k]) + g[k] * E."""

    f: dict[int, Qhp]
    g: dict[int, Qhp]


@dataclass(frozen=True)
class Transformation:
    """Near-identity generators x = y + Q(y), in application order."""

    generators: tuple[Vqhp, ...]

    def __post_init__(self):
        for q in self.generators:
            if q.gdeg < 1:
                raise GradingError("every generator must have g.d. >= 1")

    def __len__(self):
        return len(self.generators)

    def extend(self, other: "Transformation") -> "Transformation":
        return Transformation(self.generators + other.generators)


def split_perturbation(sys: HamiltonianSystem) -> FgSplit:
    """Euler-split every perturbation term; reassembly is exact because the
    splitting is unique."""
    f: dict[int, Qhp] = {}
    g: dict[int, Qhp] = {}
    for gd, term in sorted(sys.perturbation.terms.items()):
        s = decompose(term)
        k = gd - sys.chi
        f[k] = s.ham_part
        g[k] = s.scalar_part
    return FgSplit(f, g)


def coeffs_from_fg(f: Qhp, g: Qhp, w: Weight) -> dict[Slot, Fraction]:
    """Coefficient slots of the field ham_field(f) + g * E.

    Interior exponents follow the two bilinear formulas relating the slot
    values to the coefficients of f and g; monomials of f with a zero exponent
    feed only the component the differentiation permits.
    """
    y1 = -f.poly.diff(2) + Polynomial.monomial((1, 0), w.gamma1) * g.poly
    y2 = f.poly.diff(1) + Polynomial.monomial((0, 1), w.gamma2) * g.poly
    out: dict[Slot, Fraction] = {}
    for p, c in y1.terms.items():
        out[(1, p)] = c
    for p, c in y2.terms.items():
        out[(2, p)] = c
    return out


def _vqhp_slots(w: Weight, k: int) -> list[Slot]:
    """Standard basis slots of the VQHP space of g.d. k, component 1 first."""
    return [(1, p) for p in w.monomials(k + w.gamma1)] + [
        (2, p) for p in w.monomials(k + w.gamma2)
    ]


def vqhp_dim(w: Weight, k: int) -> int:
    return len(_vqhp_slots(w, k))


def _slot_field(w: Weight, k: int, slot: Slot) -> Vqhp:
    comp, p = slot
    one = Polynomial.monomial(p)
    if comp == 1:
        return Vqhp.from_polys(w, k, one, Polynomial.zero())
    return Vqhp.from_polys(w, k, Polynomial.zero(), one)


def _vqhp_coords(f: Vqhp, slots: list[Slot]) -> list[Fraction]:
    return [f.component(c).poly.coeff(p) for c, p in slots]


def _vqhp_from_coords(w: Weight, k: int, slots: list[Slot], coords) -> Vqhp:
    t1: dict[Expo, Fraction] = {}
    t2: dict[Expo, Fraction] = {}
    for (comp, p), c in zip(slots, coords):
        if c:
            (t1 if comp == 1 else t2)[p] = c
    return Vqhp.from_polys(w, k, Polynomial(t1), Polynomial(t2))


def bracket_matrix(h: Qhp, m: int) -> tuple[list[list[Fraction]], list[Slot], list[Slot]]:
    """Matrix of Q -> [ham_field(h), Q] from VQHPs of g.d. m to g.d. m + chi,
    over the standard slot bases."""
    w = h.weight
    chi = h.gdeg - w.delta
    hf = ham_field(h)
    src = _vqhp_slots(w, m)
    dst = _vqhp_slots(w, m + chi)
    matrix = [[Fraction(0)] * len(src) for _ in dst]
    for j, slot in enumerate(src):
        image = lie_bracket(hf, _slot_field(w, m, slot))
        col = _vqhp_coords(image, dst)
        for i, v in enumerate(col):
            matrix[i][j] = v
    return matrix, src, dst


def gphnf_step(
    sys: HamiltonianSystem,
    m: int,
    s_choice: ResonantSetChoice,
    s_tilde_choice: ResonantSetChoice,
    provider: ResonantSetProvider | None = None,
) -> tuple[Vqhp, Qhp, Qhp]:
    """One normalization step at generator degree m.

    Solves, jointly and exactly, for a near-identity generator of g.d. m and
    a replacement term whose Euler part lies in span(s_choice) and whose
    stream part lies in span(s_tilde_choice).  The replacement coefficients
    are unique (the resonant-set columns are independent modulo the bracket
    image); the generator carries the usual kernel freedom, resolved by
    zeroing free coordinates.  Returns (generator, replacement stream part,
    replacement Euler part).
    """
    w, chi = sys.weight, sys.chi
    term = sys.perturbation.term(m + chi)
    matrix, src, dst = bracket_matrix(sys.hamiltonian, m)
    # Unknown columns beyond the generator: minus one Euler-direction field
    # per plain resonant monomial, minus one Hamiltonian field per reduced
    # resonant monomial, so that bracket(Q) - Y = term - Y_target rearranges
    # to bracket(Q) + columns * y = term.
    extra_fields: list[Vqhp] = []
    for s in s_choice.monomials:
        extra_fields.append(scalar_times_euler(Qhp.monomial(w, s)))
    for s in s_tilde_choice.monomials:
        extra_fields.append(ham_field(Qhp.monomial(w, s)))
    for fld in extra_fields:
        for row, v in zip(matrix, _vqhp_coords(fld, dst)):
            row.append(v)
    sol = linalg.solve(matrix, _vqhp_coords(term, dst))
    if sol is None:
        # The Fredholm alternative guarantees consistency for valid sets.
        raise InconsistentSolveError(f"homological solve failed at degree m={m}")
    q = _vqhp_from_coords(w, m, src, sol[: len(src)])
    ys = sol[len(src):]
    ng = len(s_choice.monomials)
    g_new = Qhp(
        Polynomial({s: c for s, c in zip(s_choice.monomials, ys[:ng])}),
        m + chi, w,
    )
    f_new = Qhp(
        Polynomial({s: c for s, c in zip(s_tilde_choice.monomials, ys[ng:])}),
        m + chi + w.delta, w,
    )
    return q, f_new, g_new


def push_forward(sys: HamiltonianSystem, q: Vqhp) -> HamiltonianSystem:
    """Exact truncated pushforward of the field under x = y + q(y).

    Substitutes the change of variables into the field, multiplies by the
    truncated Neumann inverse of the Jacobian factor, and regrades.  Degrees
    below q.gdeg + chi are untouched; the degree-(q.gdeg + chi) term changes
    by minus the bracket with the unperturbed part.
    """
    if q.gdeg < 1:
        raise GradingError("generator must be near-identity (g.d. >= 1)")
    if q.is_zero:
        return sys
    w = sys.weight
    n = sys.truncation
    cutoff = n + w.delta

    def trunc(p: Polynomial) -> Polynomial:
        return p.truncate_gdeg(w, cutoff)

    sub1 = Polynomial.monomial((1, 0)) + q.comp1.poly
    sub2 = Polynomial.monomial((0, 1)) + q.comp2.poly

    pow_cache: dict[tuple[int, int], Polynomial] = {}

    def sub_power(which: int, e: int) -> Polynomial:
        key = (which, e)
        if key not in pow_cache:
            if e == 0:
                pow_cache[key] = Polynomial.constant(1)
            else:
                base = sub1 if which == 1 else sub2
                pow_cache[key] = trunc(sub_power(which, e - 1) * base)
        return pow_cache[key]

    def compose(p: Polynomial) -> Polynomial:
        out = Polynomial.zero()
        for (a, b), c in p.terms.items():
            out = out + trunc(sub_power(1, a) * sub_power(2, b)).scale(c)
        return out

    v1, v2 = sys.field_polys()
    w1, w2 = compose(v1), compose(v2)

    # Neumann series for (I + dQ)^{-1}; terminates under truncation because
    # every matrix product gains at least q.gdeg in generalized degree.
    a11, a12 = q.comp1.poly.diff(1), q.comp1.poly.diff(2)
    a21, a22 = q.comp2.poly.diff(1), q.comp2.poly.diff(2)
    b = [[Polynomial.constant(1), Polynomial.zero()],
         [Polynomial.zero(), Polynomial.constant(1)]]
    term = [[-a11, -a12], [-a21, -a22]]
    while any(not term[i][j].is_zero for i in range(2) for j in range(2)):
        for i in range(2):
            for j in range(2):
                b[i][j] = b[i][j] + term[i][j]
        nxt = [
            [
                trunc(term[i][0] * (-a11) + term[i][1] * (-a21)),
                trunc(term[i][0] * (-a12) + term[i][1] * (-a22)),
            ]
            for i in range(2)
        ]
        term = nxt

    z1 = trunc(b[0][0] * w1 + b[0][1] * w2)
    z2 = trunc(b[1][0] * w1 + b[1][1] * w2)
    return _regrade(sys, z1, z2)


def _regrade(sys: HamiltonianSystem, z1: Polynomial, z2: Polynomial) -> HamiltonianSystem:
    """Split a raw field back into graded terms and rebuild the system."""
    w, chi, n = sys.weight, sys.chi, sys.truncation
    parts1 = z1.graded_parts(w)
    parts2 = z2.graded_parts(w)
    degrees = {d - w.gamma1 for d in parts1} | {d - w.gamma2 for d in parts2}
    terms: dict[int, Vqhp] = {}
    for k in degrees:
        if k > n:
            continue
        c1 = parts1.get(k + w.gamma1, Polynomial.zero())
        c2 = parts2.get(k + w.gamma2, Polynomial.zero())
        if c1.is_zero and c2.is_zero:
            continue
        if k < chi:
            raise InconsistentSolveError("pushforward produced terms below chi")
        terms[k] = Vqhp.from_polys(w, k, c1, c2)
    unperturbed = terms.pop(chi, Vqhp.zero(w, chi))
    if unperturbed != sys.unperturbed_field():
        raise InconsistentSolveError("pushforward altered the unperturbed part")
    series = VectorSeries(w, n, terms)
    return sys.with_perturbation(series)


def compute_gphnf(
    sys: HamiltonianSystem,
    provider: ResonantSetProvider | None = None,
) -> tuple[HamiltonianSystem, Transformation, ResonantSetProvider]:
    """Iterate gphnf_step and push_forward over all generator degrees.

    On return, every degree-(k + chi) perturbation term has its stream part in
    span of the reduced choice and its Euler part in span of the plain choice.
    """
    if provider is None:
        provider = ResonantSetProvider(sys.hamiltonian)
    w, chi = sys.weight, sys.chi
    gens: list[Vqhp] = []
    cur = sys
    for m in range(1, sys.truncation - chi + 1):
        s_choice = provider.choice(m + chi)
        s_tilde = provider.stream_choice(m + chi + w.delta)
        q, _, _ = gphnf_step(cur, m, s_choice, s_tilde, provider)
        if not q.is_zero:
            cur = push_forward(cur, q)
            gens.append(q)
    return cur, Transformation(tuple(gens)), provider


# ---------------------------------------------------------------------------
# Resonant coefficient set (the GNF bookkeeping) and the reduction pass.


@dataclass(frozen=True)
class YSlot:
    """One perturbation coefficient admitted into the resonant set."""

    component: int
    expo: Expo
    rule: str  # 'i' | 'ii' | 'iii'
    witness: Expo | None = None  # rule iii: exponent whose Euler generator
    #                              zeroes the partner coefficient


@dataclass(frozen=True)
class YGroup:
    """Slots contributed by one source monomial at perturbation index k:
    either unconditionally kept slots or an either/or pair."""

    k: int
    rule: str
    slots: tuple[YSlot, ...] = ()
    pair: tuple[YSlot | None, YSlot | None] | None = None  # (keep-1, keep-2)

    def count(self) -> int:
        return len(self.slots) + (1 if self.pair is not None else 0)


@dataclass(frozen=True)
class PairPolicy:
    """Which member of each either/or pair is zeroed.

    ``default``: 'zero-first' zeroes the component-1 slot, 'zero-second' the
    component-2 slot.  ``overrides`` maps a pair's component-1 exponent pair
    to a per-pair policy.
    """

    default: str = "zero-first"
    overrides: dict[Expo, str] = field(default_factory=dict)

    def choice_for(self, pair_expo1: Expo) -> str:
        return self.overrides.get(pair_expo1, self.default)


@dataclass(frozen=True)
class YSet:
    """The resonant coefficient set, grouped by perturbation index."""

    weight: Weight
    chi: int
    truncation: int
    groups: tuple[YGroup, ...]

    def groups_at(self, k: int) -> list[YGroup]:
        return [g for g in self.groups if g.k == k]

    def count_at(self, k: int) -> int:
        return sum(g.count() for g in self.groups_at(k))

    def resolve(self, policy: PairPolicy) -> dict[int, list[YSlot]]:
        """Kept slots per perturbation index under the pair policy."""
        kept: dict[int, list[YSlot]] = {}
        for g in self.groups:
            bucket = kept.setdefault(g.k, [])
            bucket.extend(g.slots)
            if g.pair is not None:
                keep1, keep2 = g.pair
                preferred = keep2 if policy_prefers_zero_first(policy, g) else keep1
                chosen = preferred if preferred is not None else (keep1 or keep2)
                bucket.append(chosen)
        return kept


def policy_prefers_zero_first(policy: PairPolicy, group: YGroup) -> bool:
    keep1, keep2 = group.pair
    expo1 = keep1.expo if keep1 is not None else (keep2.expo[0] + 1, keep2.expo[1] - 1)
    return policy.choice_for(expo1) == "zero-first"


def build_y_set(h: Qhp, provider: ResonantSetProvider, n: int) -> YSet:
    """Apply the three admission rules to the minimal monomial sets.

    Per index k the kept-slot count equals r_k + r~_k, the sizes of the plain
    and reduced monomial sets; rule-iii pairs carry the exponent witnessing
    that the partner coefficient can be removed by a scalar-times-Euler
    generator.
    """
    w = h.weight
    chi = h.gdeg - w.delta
    hf = ham_field(h)
    groups: list[YGroup] = []
    for k in range(1, n - chi + 1):
        s_mons = set(provider.choice(k + chi).monomials)
        st_mons = set(provider.stream_choice(k + chi + w.delta).monomials)
        for p in sorted(s_mons):
            p1, p2 = p
            up = (p1 + 1, p2 + 1)
            slot1 = (1, (p1 + 1, p2))
            slot2 = (2, (p1, p2 + 1))
            if up in st_mons:
                groups.append(
                    YGroup(k, "i", slots=(YSlot(*slot1, "i"), YSlot(*slot2, "i")))
                )
            else:
                groups.append(
                    YGroup(k, "ii", pair=(YSlot(*slot1, "ii"), YSlot(*slot2, "ii")))
                )
        for u in sorted(st_mons):
            u1, u2 = u
            p = (u1 - 1, u2 - 1)
            if u1 == 0 or u2 == 0:
                # Boundary monomial of the stream part: only one component
                # coefficient exists; it is kept unconditionally.
                slot = YSlot(1, (0, u2 - 1), "i") if u1 == 0 else YSlot(2, (u1 - 1, 0), "i")
                groups.append(YGroup(k, "i", slots=(slot,)))
            elif p not in s_mons:
                keep1, keep2 = _rule_iii_pair(w, chi, hf, k, p)
                if keep1 is None and keep2 is None:
                    raise WitnessNotFoundError(
                        f"no Euler-generator witness for pair at p={p}"
                    )
                groups.append(YGroup(k, "iii", pair=(keep1, keep2)))
    return YSet(w, chi, n, tuple(groups))


def _rule_iii_pair(
    w: Weight, chi: int, hf: Vqhp, k: int, p: Expo
) -> tuple[YSlot | None, YSlot | None]:
    """Witness search for a rule-iii pair anchored at exponent p.

    Scans candidate exponents q of generator degree k in lex order; keeping
    the component-1 slot needs a generator whose bracket hits the component-2
    partner coefficient, and vice versa.
    """
    p1, p2 = p
    keep1 = keep2 = None
    for q in sorted(w.monomials(k)):
        gen = scalar_times_euler(Qhp.monomial(w, q))
        br = lie_bracket(hf, gen)
        if keep1 is None and br.comp2.poly.coeff((p1, p2 + 1)) != 0:
            keep1 = YSlot(1, (p1 + 1, p2), "iii", witness=q)
        if keep2 is None and br.comp1.poly.coeff((p1 + 1, p2)) != 0:
            keep2 = YSlot(2, (p1, p2 + 1), "iii", witness=q)
        if keep1 is not None and keep2 is not None:
            break
    return keep1, keep2


def reduce_to_gnf(
    gphnf_sys: HamiltonianSystem,
    y_set: YSet,
    policy: PairPolicy | None = None,
) -> tuple[HamiltonianSystem, Transformation]:
    """Eliminate every coefficient outside the resolved resonant set.

    Degree by degree, solves the joint linear system in the generator
    coefficients and the admitted slot values whose solution reproduces the
    current term with support inside the admitted slots, then pushes forward.
    """
    if policy is None:
        policy = PairPolicy()
    w, chi, n = gphnf_sys.weight, gphnf_sys.chi, gphnf_sys.truncation
    kept = y_set.resolve(policy)
    gens: list[Vqhp] = []
    cur = gphnf_sys
    for m in range(1, n - chi + 1):
        allowed = [(s.component, s.expo) for s in kept.get(m, [])]
        term = cur.perturbation.term(m + chi)
        matrix, src, dst = bracket_matrix(cur.hamiltonian, m)
        # Unknowns: generator coordinates, then one value per admitted slot.
        slot_index = {s: i for i, s in enumerate(dst)}
        for s in allowed:
            col = [Fraction(0)] * len(dst)
            col[slot_index[s]] = Fraction(1)
            for row, v in zip(matrix, col):
                row.append(v)
        sol = linalg.solve(matrix, _vqhp_coords(term, dst))
        if sol is None:
            raise SingularJointSystemError(
                f"cannot confine degree {m + chi} support to the resonant set"
            )
        q = _vqhp_from_coords(w, m, src, sol[: len(src)])
        if not q.is_zero:
            cur = push_forward(cur, q)
            gens.append(q)
        new_support = {
            s for s, c in _term_support(cur.perturbation.term(m + chi)).items() if c != 0
        }
        if not new_support <= set(allowed):
            raise SingularJointSystemError(
                f"support leak at degree {m + chi}: {sorted(new_support - set(allowed))}"
            )
    return cur, Transformation(tuple(gens))


def _term_support(term: Vqhp) -> dict[Slot, Fraction]:
    out: dict[Slot, Fraction] = {}
    for p, c in term.comp1.poly.terms.items():
        out[(1, p)] = c
    for p, c in term.comp2.poly.terms.items():
        out[(2, p)] = c
    return out


@dataclass(frozen=True)
class ConjugacyReport:
    """Per-degree residuals between a pushed-forward field and a claimed
    normal form; empty residuals mean exact conjugacy."""

    residuals: dict[int, Vqhp]

    @property
    def ok(self) -> bool:
        return not self.residuals


def verify_conjugacy(
    original: HamiltonianSystem,
    transformation: Transformation,
    result: HamiltonianSystem,
    n: int | None = None,
) -> ConjugacyReport:
    """Push the original field through every generator in order and compare
    with the claimed result, degree by degree, in exact rational arithmetic."""
    if n is None:
        n = original.truncation
    cur = original
    for q in transformation.generators:
        cur = push_forward(cur, q)
    residuals: dict[int, Vqhp] = {}
    for k in range(original.chi, n + 1):
        got = cur.perturbation.term(k) if k > original.chi else cur.unperturbed_field()
        want = result.perturbation.term(k) if k > result.chi else result.unperturbed_field()
        diff = got - want
        if not diff.is_zero:
            residuals[k] = diff
    return ConjugacyReport(residuals)


def random_perturbation(
    w: Weight, chi: int, n: int, rng, max_den: int = 5
) -> VectorSeries:
    """Dense perturbation with random nonzero rationals on every slot of every
    admissible degree; used by tests and the preset driver."""
    terms: dict[int, Vqhp] = {}
    for k in range(chi + 1, n + 1):
        t1: dict[Expo, Fraction] = {}
        t2: dict[Expo, Fraction] = {}
        for p in w.monomials(k + w.gamma1):
            t1[p] = _random_nonzero(rng, max_den)
        for p in w.monomials(k + w.gamma2):
            t2[p] = _random_nonzero(rng, max_den)
        if t1 or t2:
            terms[k] = Vqhp.from_polys(w, k, Polynomial(t1), Polynomial(t2))
    return VectorSeries(w, n, terms)


def _random_nonzero(rng, max_den: int) -> Fraction:
    num = rng.choice([i for i in range(-9, 10) if i != 0])
    return Fraction(num, rng.randint(1, max_den))
