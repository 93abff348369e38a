from fractions import Fraction

import pytest

from config import config
from duflo import (
    StarProductKind,
    bernoulli_coefficient,
    c1_operator,
    duflo_closed_form_series,
    duflo_element,
    equivalence_operator,
    iso_from_uea,
    iso_to_uea,
    isomorphism_operator,
    log_closed_form_series,
    log_element,
    order_component,
    series_coefficients,
    star,
    trace_operator,
)
from errors import DegreeCapExceededError, DimensionMismatchError, DomainError, ParseError
from ring import evaluate_complex, lambda_generator
from sym import Poly, apply_operator, compose_operators, parse_poly

STANDARD = StarProductKind.STANDARD
LOG = StarProductKind.LOGARITHMIC
GUTT = StarProductKind.GUTT


def p(L, text):
    return parse_poly(text, L.basis_names)


def test_bernoulli_coefficients():
    assert bernoulli_coefficient(1) == Fraction(1, 48)
    assert bernoulli_coefficient(2) == Fraction(-1, 5760)


def test_duflo_series_matches_closed_form():
    assert duflo_closed_form_series(4) == [0, Fraction(-1, 4), Fraction(1, 48), 0, Fraction(-1, 5760)]
    ours = series_coefficients(STANDARD, 8)
    exact = duflo_closed_form_series(8)
    assert [c.rational_value() for c in ours] == exact


def test_log_series_matches_gamma_expansion():
    ours = series_coefficients(LOG, 7)
    numeric = log_closed_form_series(7)
    for n in range(2, 8):
        assert abs(evaluate_complex(ours[n]) - numeric[n]) < 1e-10
    assert ours[3] == lambda_generator(3)
    assert ours[4].is_rational()


def test_gutt_series_is_zero():
    assert all(c.is_zero() for c in series_coefficients(GUTT, 5))


def test_kind_names():
    assert StarProductKind.from_name("log") is LOG
    assert StarProductKind.from_name(" Standard ") is STANDARD
    with pytest.raises(ParseError):
        StarProductKind.from_name("moyal")


class TestAff1Products:
    def test_first_order_fixtures(self, aff1):
        assert str(star(aff1, STANDARD, p(aff1, "x"), p(aff1, "y"))) == "x*y + 1/2*y"
        assert str(star(aff1, STANDARD, p(aff1, "y"), p(aff1, "x"))) == "x*y - 1/2*y"

    def test_quadratic_fixtures(self, aff1):
        assert str(star(aff1, STANDARD, p(aff1, "x"), p(aff1, "x"))) == "x^2 - 1/24"
        assert star(aff1, STANDARD, p(aff1, "x^2"), p(aff1, "y")) == p(aff1, "x^2*y + x*y + 1/6*y")

    def test_log_discrepancy(self, aff1):
        assert str(star(aff1, STANDARD, p(aff1, "x"), p(aff1, "x^2"))) == "x^3 - 1/12*x"
        assert str(star(aff1, LOG, p(aff1, "x"), p(aff1, "x^2"))) == "x^3 - 1/12*x - 6*l3"

    def test_central_shift_cancels(self, aff1):
        expected = "x^3*y + 3/2*x^2*y + 1/2*x*y"
        assert str(star(aff1, STANDARD, p(aff1, "x^3"), p(aff1, "y"))) == expected
        assert str(star(aff1, LOG, p(aff1, "x^3"), p(aff1, "y"))) == expected

    def test_intertwining(self, aff1):
        T = equivalence_operator(aff1)
        for f_text, g_text in [("x", "x^2"), ("x^2", "x*y"), ("x^3", "x^2"), ("y^2", "x^2*y")]:
            f, g = p(aff1, f_text), p(aff1, g_text)
            lhs = apply_operator(T, star(aff1, LOG, f, g))
            rhs = star(aff1, STANDARD, apply_operator(T, f), apply_operator(T, g))
            assert lhs == rhs

    def test_c1_coefficient_does_not_change_products(self, aff1):
        f, g = p(aff1, "x"), p(aff1, "x^2")
        before = star(aff1, LOG, f, g)
        config.c1_coefficient = Fraction(0)
        assert star(aff1, LOG, f, g) == before
        config.c1_coefficient = Fraction(1, 3)
        assert star(aff1, STANDARD, f, g) == p(aff1, "x^3 - 1/12*x")


def test_heisenberg_products(heisenberg3):
    assert str(star(heisenberg3, STANDARD, p(heisenberg3, "x"), p(heisenberg3, "y"))) == "x*y + 1/2*z"
    f, g = p(heisenberg3, "x^2"), p(heisenberg3, "y^2")
    product = star(heisenberg3, STANDARD, f, g)
    assert order_component(f, g, product, 2) == p(heisenberg3, "1/2*z^2")
    assert order_component(f, g, product, 1) == p(heisenberg3, "2*x*y*z")
    assert product == star(heisenberg3, LOG, f, g) == star(heisenberg3, GUTT, f, g)


@pytest.mark.parametrize("kind", list(StarProductKind))
def test_unit(sl2, kind):
    f = p(sl2, "e*f - 2*h^2 + 3")
    assert star(sl2, kind, p(sl2, "1"), f) == f
    assert star(sl2, kind, f, p(sl2, "1")) == f


def test_duflo_elements(heisenberg3, aff1, sl2):
    assert duflo_element(heisenberg3, 6).is_identity()
    assert log_element(heisenberg3, 6).is_identity()
    assert equivalence_operator(sl2, 6).is_identity()
    composed = compose_operators(duflo_element(aff1, 6), equivalence_operator(aff1, 6))
    assert composed == log_element(aff1, 6)


def test_order_two_of_duflo_element(sl2, t2):
    assert duflo_element(sl2, 4).homogeneous_component(2) == trace_operator(sl2, 2, 4).scale(Fraction(1, 48))
    c1 = c1_operator(t2, 4)
    expected = trace_operator(t2, 2, 4).scale(Fraction(1, 48)) + compose_operators(c1, c1).scale(Fraction(1, 32))
    assert duflo_element(t2, 4).homogeneous_component(2) == expected.homogeneous_component(2)


@pytest.mark.parametrize("kind", list(StarProductKind))
def test_isomorphism_round_trip(t2, kind):
    f = p(t2, "e11^2*e12 - e22 + 1/3")
    assert iso_from_uea(t2, kind, iso_to_uea(t2, kind, f)) == f
    if kind is GUTT:
        assert isomorphism_operator(t2, kind).is_identity()


def test_errors(aff1, heisenberg3):
    with pytest.raises(DegreeCapExceededError):
        star(aff1, STANDARD, p(aff1, "x^4"), p(aff1, "y^3"), 6)
    with pytest.raises(DimensionMismatchError):
        star(aff1, STANDARD, p(heisenberg3, "x"), p(aff1, "y"))
    with pytest.raises(DomainError):
        order_component(p(aff1, "x + 1"), p(aff1, "y"), p(aff1, "x*y"), 0)


def test_degree_cap_above_weight_cap(aff1):
    config.degree_cap = 12
    config.lambda_weight_cap = 8
    assert str(star(aff1, LOG, p(aff1, "x"), p(aff1, "y"))) == "x*y + 1/2*y"
    assert str(star(aff1, LOG, p(aff1, "x"), p(aff1, "x^2"))) == "x^3 - 1/12*x - 6*l3"
    assert star(aff1, STANDARD, p(aff1, "1"), p(aff1, "1")) == p(aff1, "1")
