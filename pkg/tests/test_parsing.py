"""Tests for the expression and system-document parsers."""

from fractions import Fraction

import pytest

from qhnf.parsing import (
    NotQuasiHomogeneousError,
    ParseError,
    PerturbationOrderError,
    ValidationError,
    WeightNotCoprimeError,
    parse_polynomial,
    parse_system,
    render_system,
)
from qhnf.poly import Polynomial


def test_parse_polynomial_basics():
    assert parse_polynomial("x1^2 - x2") == Polynomial({(2, 0): 1, (0, 1): -1})
    assert parse_polynomial("3*x1*x2") == Polynomial({(1, 1): 3})
    assert parse_polynomial("x^2/2") == Polynomial({(2, 0): Fraction(1, 2)})
    assert parse_polynomial("-(x1 - x2)^2") == Polynomial(
        {(2, 0): -1, (1, 1): 2, (0, 2): -1}
    )
    assert parse_polynomial("0").is_zero
    # y aliases x2, y1/y2 alias x1/x2
    assert parse_polynomial("y") == Polynomial.monomial((0, 1))
    assert parse_polynomial("y1*y2") == Polynomial.monomial((1, 1))


def test_parse_polynomial_precedence():
    assert parse_polynomial("1 + 2*x1^3*x2") == Polynomial({(0, 0): 1, (3, 1): 2})
    assert parse_polynomial("2^3") == Polynomial.constant(8)
    assert parse_polynomial("6/4") == Polynomial.constant(Fraction(3, 2))


def test_parse_polynomial_errors():
    with pytest.raises(ParseError):
        parse_polynomial("x3")
    with pytest.raises(ParseError):
        parse_polynomial("x1 +")
    with pytest.raises(ParseError):
        parse_polynomial("x1 / x2")
    with pytest.raises(ParseError):
        parse_polynomial("(x1")
    with pytest.raises(ParseError):
        parse_polynomial("x1^x2")
    with pytest.raises(ParseError):
        parse_polynomial("x1 @ x2")


def test_parse_system_roundtrip():
    doc = """
    # a perturbed cusp-like example
    weight 1 1
    H = -x2^3/3
    P1 = x1^3 + x1^2*x2/2
    P2 = x1^4
    N = 6
    """
    sys_ = parse_system(doc)
    assert sys_.chi == 1
    assert sys_.truncation == 6
    again = parse_system(render_system(sys_))
    assert again.weight == sys_.weight
    assert again.hamiltonian == sys_.hamiltonian
    assert again.perturbation == sys_.perturbation


def test_parse_system_semicolons():
    sys_ = parse_system("weight 2 3; H = x1^3/3 - x2^2/2; N = 8")
    assert sys_.chi == 1
    assert sys_.perturbation.is_zero


def test_parse_system_missing_fields():
    with pytest.raises(ParseError):
        parse_system("H = x1*x2; N = 5")
    with pytest.raises(ParseError):
        parse_system("weight 1 1; N = 5")
    with pytest.raises(ParseError):
        parse_system("weight 1 1; H = x1*x2")
    with pytest.raises(ParseError):
        parse_system("weight 1 1; H = x1*x2; N = 5; garbage here")


def test_parse_system_validation_errors():
    with pytest.raises(WeightNotCoprimeError):
        parse_system("weight 2 4; H = x1^2*x2; N = 8")
    with pytest.raises(NotQuasiHomogeneousError):
        parse_system("weight 1 1; H = x1^2 + x2^3; N = 8")
    with pytest.raises(NotQuasiHomogeneousError):
        parse_system("weight 1 1; H = x1; N = 8")  # g.d. below delta
    with pytest.raises(NotQuasiHomogeneousError):
        parse_system("weight 1 1; chi 2; H = x1*x2^2; N = 8")  # chi is 1
    with pytest.raises(PerturbationOrderError):
        parse_system("weight 1 1; H = x1*x2^2; P1 = x1^2; N = 8")  # term g.d. 1 = chi
    assert issubclass(WeightNotCoprimeError, ValidationError)


def test_parse_system_discards_terms_above_truncation():
    sys_ = parse_system("weight 1 1; H = x1*x2; P1 = x1^3 + x1^9; N = 4")
    assert set(sys_.perturbation.terms) == {2}


def test_declared_chi_accepted_when_consistent():
    sys_ = parse_system("weight 1 1; chi 1; H = x1*x2^2; P2 = x1^4; N = 6")
    assert sys_.chi == 1
