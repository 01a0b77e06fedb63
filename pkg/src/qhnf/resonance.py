"""Resonant polynomial spaces of a quasi-homogeneous Hamiltonian field.

The conjugate operator of the Hamiltonian derivation with respect to the
apolar pairing is ``conj_apply``; its kernel in each generalized degree is the
resonant space, and intersecting with the operator's image gives the reduced
resonant space.  Both are computed by exact elimination on the monomial
basis.  ``minimal_resonant_set`` picks out a deterministic monomial set whose
pairing with a kernel basis has nonzero determinant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .poly import Expo, Polynomial, Qhp, Weight, apply_diff_operator, inner


class SizeMismatchError(ValueError):
    """Candidate set size or degree does not match the basis."""


class SingularPairingError(ValueError):
    """The pairing determinant of the candidate set vanishes."""


@dataclass(frozen=True)
class ResonantBasis:
    """Basis of the (reduced) resonant space in one generalized degree."""

    gdeg: int
    basis: tuple[Qhp, ...]
    reduced: bool

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class ResonantSetChoice:
    """A chosen monomial set pairing nonsingularly with a resonant basis."""

    gdeg: int
    monomials: tuple[Expo, ...]
    reduced: bool
    certificate: Fraction

    @property
    def size(self) -> int:
        return len(self.monomials)


def conj_apply(h: Qhp, p: Polynomial | Qhp) -> Polynomial:
    """The operator conjugate to the Hamiltonian field of h under the apolar
    pairing: x2 * (d1 h)(D) p - x1 * (d2 h)(D) p.

    Lowers generalized degree by chi = h.gdeg - delta on graded input.
    """
    poly = p.poly if isinstance(p, Qhp) else p
    x1 = Polynomial.monomial((1, 0))
    x2 = Polynomial.monomial((0, 1))
    return (
        x2 * apply_diff_operator(h.poly.diff(1), poly)
        - x1 * apply_diff_operator(h.poly.diff(2), poly)
    )


def _chi(h: Qhp) -> int:
    return h.gdeg - h.weight.delta


def _pivot_order(w: Weight, k: int) -> list[Expo]:
    # Pivot search runs through monomials with the second exponent increasing
    # first; this makes the greedy choice land on the lowest-x2 member of each
    # kernel chain, matching the closed-form minimal sets of the catalog.
    return sorted(w.monomials(k), key=lambda p: (p[1], p[0]))


def _coords(poly: Polynomial, mons: list[Expo]) -> list[Fraction]:
    return [poly.coeff(p) for p in mons]


def _from_coords(coords, mons: list[Expo], w: Weight, k: int) -> Qhp:
    return Qhp(Polynomial({p: c for p, c in zip(mons, coords)}), k, w)


def _operator_matrix(h: Qhp, k: int) -> tuple[list[list[Fraction]], list[Expo], list[Expo]]:
    """Matrix of conj_apply from g.d. k to g.d. k - chi over monomial bases."""
    w = h.weight
    src = _pivot_order(w, k)
    dst = _pivot_order(w, k - _chi(h))
    matrix = [[Fraction(0)] * len(src) for _ in dst]
    for j, p in enumerate(src):
        image = conj_apply(h, Polynomial.monomial(p))
        for i, q in enumerate(dst):
            matrix[i][j] = image.coeff(q)
    return matrix, src, dst


def resonant_basis(h: Qhp, k: int) -> ResonantBasis:
    """Exact kernel of conj_apply restricted to the QHPs of g.d. k."""
    w = h.weight
    mons = _pivot_order(w, k)
    if not mons:
        return ResonantBasis(k, (), False)
    matrix, src, _ = _operator_matrix(h, k)
    kernel = linalg.nullspace(matrix, ncols=len(src))
    kernel = linalg.row_space(kernel) if kernel else []
    basis = tuple(_from_coords(v, src, w, k) for v in kernel)
    return ResonantBasis(k, basis, False)


def reduced_resonant_basis(h: Qhp, k: int) -> ResonantBasis:
    """Basis of kernel(conj_apply) at g.d. k intersected with the image of
    conj_apply on g.d. k + chi."""
    w = h.weight
    mons = _pivot_order(w, k)
    if not mons:
        return ResonantBasis(k, (), True)
    full = resonant_basis(h, k)
    kernel_rows = [_coords(q.poly, mons) for q in full.basis]
    image_rows = [
        _coords(conj_apply(h, Polynomial.monomial(p)), mons)
        for p in w.monomials(k + _chi(h))
    ]
    image_rows = [r for r in image_rows if any(c != 0 for c in r)]
    inter = linalg.intersect_row_spaces(kernel_rows, image_rows, len(mons))
    basis = tuple(_from_coords(v, mons, w, k) for v in inter)
    return ResonantBasis(k, basis, True)


def check_resonant_set(basis: ResonantBasis, mons: list[Expo]) -> Fraction:
    """Pairing determinant det(<<R_i, x^mons_j>>); raises if it vanishes.

    The verdict does not depend on the basis chosen for the space: a change of
    basis multiplies the determinant by a nonzero factor.
    """
    if len(mons) != basis.dim:
        raise SizeMismatchError(
            f"{len(mons)} monomials against a basis of dimension {basis.dim}"
        )
    if basis.dim == 0:
        return Fraction(1)
    w = basis.basis[0].weight
    for p in mons:
        if w.gdeg(p) != basis.gdeg:
            raise SizeMismatchError(f"monomial {p} has wrong g.d.")
    matrix = [
        [inner(r.poly, Polynomial.monomial(p)) for p in mons]
        for r in basis.basis
    ]
    d = linalg.det(matrix)
    if d == 0:
        raise SingularPairingError("pairing determinant is zero")
    return d


def minimal_resonant_set(basis: ResonantBasis) -> ResonantSetChoice:
    """Deterministic minimal (monomial) set: greedy pivot search over the
    kernel coordinate matrix.  The empty basis yields the empty choice."""
    if basis.dim == 0:
        return ResonantSetChoice(basis.gdeg, (), basis.reduced, Fraction(1))
    w = basis.basis[0].weight
    mons = _pivot_order(w, basis.gdeg)
    matrix = [_coords(q.poly, mons) for q in basis.basis]
    _, pivots = linalg.rref(matrix)
    chosen = tuple(sorted(mons[c] for c in pivots))
    cert = check_resonant_set(basis, list(chosen))
    return ResonantSetChoice(basis.gdeg, chosen, basis.reduced, cert)


class ResonantSetProvider:
    """Per-degree cache of resonant data for one unperturbed Hamiltonian.

    Supplies kernel bases, reduced bases, and their minimal monomial sets;
    user-supplied monomial choices can be installed with ``override``.
    """

    def __init__(self, h: Qhp):
        self.h = h
        self._bases: dict[tuple[int, bool], ResonantBasis] = {}
        self._sets: dict[tuple[int, bool], ResonantSetChoice] = {}

    @property
    def chi(self) -> int:
        return _chi(self.h)

    @property
    def stream_reduced(self) -> bool:
        """Whether stream parts are constrained by the reduced space.

        The corrections that let a normalization step absorb resonant stream
        terms lying in the image of the conjugate operator come from
        Euler-direction generators and carry a factor of chi; at chi = 0 they
        vanish, so the full resonant space constrains the stream part there.
        """
        return self.chi > 0

    def stream_basis(self, k: int) -> ResonantBasis:
        return self.basis(k, reduced=self.stream_reduced)

    def stream_choice(self, k: int) -> ResonantSetChoice:
        return self.choice(k, reduced=self.stream_reduced)

    def basis(self, k: int, reduced: bool = False) -> ResonantBasis:
        key = (k, reduced)
        if key not in self._bases:
            self._bases[key] = (
                reduced_resonant_basis(self.h, k) if reduced else resonant_basis(self.h, k)
            )
        return self._bases[key]

    def choice(self, k: int, reduced: bool = False) -> ResonantSetChoice:
        key = (k, reduced)
        if key not in self._sets:
            self._sets[key] = minimal_resonant_set(self.basis(k, reduced))
        return self._sets[key]

    def override(self, k: int, reduced: bool, mons: list[Expo]) -> ResonantSetChoice:
        """Install a user-supplied monomial set after validating its pairing."""
        basis = self.basis(k, reduced)
        cert = check_resonant_set(basis, mons)
        choice = ResonantSetChoice(k, tuple(mons), reduced, cert)
        self._sets[(k, reduced)] = choice
        return choice
