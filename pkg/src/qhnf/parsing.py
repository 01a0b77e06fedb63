"""Input documents: a small polynomial expression language plus the system
header (weight, optional chi, truncation).

Grammar for expressions: integer and fraction literals, variables x1/x2 (x, y
accepted as aliases), +, -, *, /, ^ with the usual precedence, parentheses.
Division is only allowed by a numeric constant.  Hand-rolled recursive
descent; errors carry the offending position.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Polynomial, Qhp, VectorSeries, Vqhp, Weight
from .normalize import HamiltonianSystem


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class ValidationError(ValueError):
    """The document parsed but describes an inadmissible system."""


class WeightNotCoprimeError(ValidationError):
    pass


class NotQuasiHomogeneousError(ValidationError):
    pass


class PerturbationOrderError(ValidationError):
    pass


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def next_number(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected a number", start)
        return int(self.text[start:self.pos])

    def next_name(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start:self.pos]

    def expect(self, ch: str):
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1


_VAR_INDEX = {"x1": 0, "x": 0, "x2": 1, "y": 1, "y1": 0, "y2": 1}


def parse_polynomial(text: str) -> Polynomial:
    """Parse one polynomial expression into exact rational form."""
    tok = _Tokenizer(text)
    poly = _parse_expr(tok)
    if tok.peek() is not None:
        raise ParseError(f"unexpected {tok.peek()!r}", tok.pos)
    return poly


def _parse_expr(tok: _Tokenizer) -> Polynomial:
    sign = 1
    ch = tok.peek()
    if ch in ("+", "-"):
        tok.pos += 1
        sign = -1 if ch == "-" else 1
    poly = _parse_term(tok).scale(sign)
    while tok.peek() in ("+", "-"):
        op = tok.peek()
        tok.pos += 1
        rhs = _parse_term(tok)
        poly = poly + rhs if op == "+" else poly - rhs
    return poly


def _parse_term(tok: _Tokenizer) -> Polynomial:
    poly = _parse_factor(tok)
    while tok.peek() in ("*", "/"):
        op = tok.peek()
        pos = tok.pos
        tok.pos += 1
        rhs = _parse_factor(tok)
        if op == "*":
            poly = poly * rhs
        else:
            if len(rhs.terms) != 1 or (0, 0) not in rhs.terms:
                raise ParseError("division only by a numeric constant", pos)
            poly = poly.scale(Fraction(1) / rhs.coeff((0, 0)))
    return poly


def _parse_factor(tok: _Tokenizer) -> Polynomial:
    base = _parse_atom(tok)
    if tok.peek() == "^":
        tok.pos += 1
        pos = tok.pos
        if tok.peek() is None or not tok.peek().isdigit():
            raise ParseError("expected an integer exponent", pos)
        e = tok.next_number()
        out = Polynomial.constant(1)
        for _ in range(e):
            out = out * base
        return out
    return base


def _parse_atom(tok: _Tokenizer) -> Polynomial:
    ch = tok.peek()
    if ch is None:
        raise ParseError("unexpected end of expression", tok.pos)
    if ch == "(":
        tok.pos += 1
        inner = _parse_expr(tok)
        tok.expect(")")
        return inner
    if ch == "-":
        tok.pos += 1
        return -_parse_factor(tok)
    if ch.isdigit():
        return Polynomial.constant(tok.next_number())
    if ch.isalpha():
        pos = tok.pos
        name = tok.next_name()
        if name not in _VAR_INDEX:
            raise ParseError(f"unknown variable {name!r}", pos)
        expo = (1, 0) if _VAR_INDEX[name] == 0 else (0, 1)
        return Polynomial.monomial(expo)
    raise ParseError(f"unexpected character {ch!r}", tok.pos)


def parse_system(text: str) -> HamiltonianSystem:
    """Parse a system document into a validated HamiltonianSystem.

    Statements are separated by semicolons or newlines: ``weight G1 G2``,
    optional ``chi C``, ``H = expr``, ``P1 = expr``, ``P2 = expr``,
    ``N = int``.
    """
    fields: dict[str, str] = {}
    weight_parts: list[int] | None = None
    chi_declared: int | None = None
    offset = 0
    for raw in text.replace(";", "\n").split("\n"):
        stmt = raw.strip()
        pos = offset
        offset += len(raw) + 1
        if not stmt or stmt.startswith("#"):
            continue
        head = stmt.split()[0].lower()
        if head == "weight":
            parts = stmt.split()[1:]
            if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
                raise ParseError("weight needs two integers", pos)
            weight_parts = [int(p) for p in parts]
        elif head == "chi":
            parts = stmt.split()[1:]
            if len(parts) != 1 or not parts[0].isdigit():
                raise ParseError("chi needs one nonnegative integer", pos)
            chi_declared = int(parts[0])
        elif "=" in stmt:
            name, _, rhs = stmt.partition("=")
            key = name.strip().upper()
            if key not in ("H", "P1", "P2", "N"):
                raise ParseError(f"unknown field {name.strip()!r}", pos)
            fields[key] = rhs.strip()
        else:
            raise ParseError(f"cannot parse statement {stmt!r}", pos)
    if weight_parts is None:
        raise ParseError("missing weight declaration", 0)
    for key in ("H", "N"):
        if key not in fields:
            raise ParseError(f"missing {key} declaration", 0)
    try:
        w = Weight(*weight_parts)
    except ValueError as exc:
        if "coprime" in str(exc):
            raise WeightNotCoprimeError(str(exc)) from exc
        raise ValidationError(str(exc)) from exc
    try:
        n = int(fields["N"])
    except ValueError as exc:
        raise ParseError("N must be an integer", 0) from exc
    h_poly = parse_polynomial(fields["H"])
    degs = h_poly.gdegs(w)
    if len(degs) != 1:
        raise NotQuasiHomogeneousError(
            f"Hamiltonian mixes generalized degrees {sorted(degs)}"
        )
    (hdeg,) = degs
    if hdeg < w.delta:
        raise NotQuasiHomogeneousError(
            f"Hamiltonian g.d. {hdeg} is below delta={w.delta}"
        )
    chi = hdeg - w.delta
    if chi_declared is not None and chi_declared != chi:
        raise NotQuasiHomogeneousError(
            f"declared chi {chi_declared} but Hamiltonian g.d. gives {chi}"
        )
    h = Qhp(h_poly, hdeg, w)
    p1 = parse_polynomial(fields.get("P1", "0") or "0")
    p2 = parse_polynomial(fields.get("P2", "0") or "0")
    series = regrade_perturbation(w, chi, n, p1, p2)
    try:
        return HamiltonianSystem(w, h, chi, series)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def regrade_perturbation(
    w: Weight, chi: int, n: int, p1: Polynomial, p2: Polynomial
) -> VectorSeries:
    """Split raw perturbation components into graded terms; degrees above the
    truncation are discarded, degrees at or below chi are rejected."""
    parts1 = p1.graded_parts(w)
    parts2 = p2.graded_parts(w)
    degrees = {d - w.gamma1 for d in parts1} | {d - w.gamma2 for d in parts2}
    terms: dict[int, Vqhp] = {}
    for k in sorted(degrees):
        c1 = parts1.get(k + w.gamma1, Polynomial.zero())
        c2 = parts2.get(k + w.gamma2, Polynomial.zero())
        if c1.is_zero and c2.is_zero:
            continue
        if k <= chi:
            raise PerturbationOrderError(
                f"perturbation term of g.d. {k} is not above chi={chi}"
            )
        if k > n:
            continue
        terms[k] = Vqhp.from_polys(w, k, c1, c2)
    return VectorSeries(w, n, terms)


def render_system(sys: HamiltonianSystem) -> str:
    """Deterministic textual form; parsing it back reproduces the system."""
    p1, p2 = Polynomial.zero(), Polynomial.zero()
    for term in sys.perturbation.terms.values():
        p1 = p1 + term.comp1.poly
        p2 = p2 + term.comp2.poly
    lines = [
        f"weight {sys.weight.gamma1} {sys.weight.gamma2}",
        f"chi {sys.chi}",
        f"N = {sys.truncation}",
        f"H = {sys.hamiltonian.poly.to_string()}",
        f"P1 = {p1.to_string()}",
        f"P2 = {p2.to_string()}",
    ]
    return "\n".join(lines) + "\n"
