from fractions import Fraction

import pytest
from hypothesis import given, settings

from config import config
from errors import DomainError, NumericOverflowError, ParseError, TruncationOverflowError
from ring import (
    Coefficient,
    coeff_arith,
    evaluate_numeric,
    format_complex,
    lambda_generator,
    lambda_value,
    parse_coefficient,
)
from strategies import coefficients


@pytest.fixture(autouse=True)
def wide_weight_cap(monkeypatch):
    # products of three generated coefficients reach weight 24
    monkeypatch.setattr(config, "lambda_weight_cap", 30)


class TestRingAxioms:
    @given(coefficients(), coefficients(), coefficients())
    def test_addition_associative(self, a, b, c):
        assert (a + b) + c == a + (b + c)

    @given(coefficients(), coefficients())
    def test_commutative(self, a, b):
        assert a + b == b + a
        assert a * b == b * a

    @given(coefficients(), coefficients(), coefficients())
    @settings(max_examples=50)
    def test_multiplication_associative(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @given(coefficients(), coefficients(), coefficients())
    @settings(max_examples=50)
    def test_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(coefficients())
    def test_additive_inverse(self, a):
        assert (a - a).is_zero()
        assert a + (-a) == 0

    @given(coefficients())
    def test_canonical_string_parses_back(self, a):
        assert parse_coefficient(str(a)) == a


def test_lambda_generators():
    assert str(lambda_generator(3)) == "l3"
    assert lambda_generator(5).weight() == 5
    for n in (1, 2, 4):
        with pytest.raises(DomainError):
            lambda_generator(n)


def test_formatting():
    assert str(Coefficient.rational(Fraction(1, 48))) == "1/48"
    assert str(Coefficient()) == "0"
    l3, l5 = lambda_generator(3), lambda_generator(5)
    assert str(l3 * l5 * Fraction(-3, 2)) == "(-3/2)*l3*l5"
    assert str(1 + l3 * 2) == "1 + 2*l3"
    assert str(Fraction(1, 2) - l3 * 6) == "1/2 - 6*l3"


def test_parse_coefficient():
    l3, l5 = lambda_generator(3), lambda_generator(5)
    assert parse_coefficient("(-3/2)*l3*l5") == l3 * l5 * Fraction(-3, 2)
    assert parse_coefficient("l3^2 - 1") == l3 * l3 - 1
    with pytest.raises(ParseError):
        parse_coefficient("l4")
    with pytest.raises(ParseError):
        parse_coefficient("x")


def test_weight_cap_raises_instead_of_truncating():
    config.lambda_weight_cap = 8
    l3, l5 = lambda_generator(3), lambda_generator(5)
    assert (l3 * l5).weight() == 8
    with pytest.raises(TruncationOverflowError):
        l5 * l5
    with pytest.raises(ArithmeticError):
        l3 * l3 * l3


def test_rational_helpers():
    c = Coefficient.rational(Fraction(2, 3))
    assert c.is_rational()
    assert c.rational_value() == Fraction(2, 3)
    assert not lambda_generator(3).is_rational()
    with pytest.raises(DomainError):
        lambda_generator(3).rational_value()
    assert (lambda_generator(3) + 5).constant_term() == 5
    assert coeff_arith(c, c, "mul") == Coefficient.rational(Fraction(4, 9))
    with pytest.raises(DomainError):
        coeff_arith(c, c, "pow")


def test_lambda_numeric_value():
    value = lambda_value(3)
    assert value.real == pytest.approx(0.0, abs=1e-12)
    assert value.imag == pytest.approx(0.0016153, abs=1e-6)
    assert abs(lambda_value(5)) < abs(value)


def test_lambda_value_follows_precision():
    precise = lambda_value(3)
    config.zeta_precision_digits = 5
    coarse = lambda_value(3)
    assert coarse != precise
    assert abs(coarse - precise) < 1e-6
    config.zeta_precision_digits = 30
    assert lambda_value(3) == precise


def test_rational_coefficients_hash_like_numbers():
    assert hash(Coefficient.rational(1)) == hash(1)
    assert hash(Coefficient.rational(Fraction(-2, 3))) == hash(Fraction(-2, 3))
    assert hash(Coefficient.rational(0)) == hash(0)
    table = {Coefficient.rational(1): "one", lambda_generator(3): "l3"}
    assert table[1] == "one"
    assert table[Fraction(1)] == "one"
    assert {Coefficient.rational(2), 2} == {2}


def test_evaluate_numeric():
    value = evaluate_numeric(Coefficient.rational(Fraction(1, 4)) + lambda_generator(3))
    assert value.real == pytest.approx(0.25)
    assert value.imag == pytest.approx(lambda_value(3).imag)
    with pytest.raises(NumericOverflowError):
        evaluate_numeric(Coefficient.rational(10 ** 400))


def test_format_complex():
    assert format_complex(0.5 + 0j) == "0.5+0i"
    assert format_complex(complex(0, -1.5)) == "0-1.5i"
