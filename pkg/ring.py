"""
Exact coefficient ring Q[l3, l5, l7, ...].

The symbol ln stands for zeta(n) / (n * (2*pi*i)^n) with n odd and n >= 3.
Odd zeta values are treated as algebraically independent formal symbols;
evaluate_numeric restores their numeric meaning. Even zeta values never
appear here: they are rational multiples of powers of pi and enter the
Duflo element through Bernoulli numbers.

A Coefficient is a sparse map from lambda monomials to Fractions. A monomial
is a tuple of (n, power) pairs sorted by n, the empty tuple being 1. The
weight of a monomial is sum(n * power); weights above
config.lambda_weight_cap raise TruncationOverflowError instead of being
dropped.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

import mpmath

from config import config
from errors import DomainError, NumericOverflowError, ParseError, TruncationOverflowError
from expression_parser import ExpressionBuilder, lambda_index, parse_expression

Rational = Fraction
Monomial = Tuple[Tuple[int, int], ...]
Scalar = Union[int, Fraction]

UNIT_MONOMIAL: Monomial = ()


def monomial_weight(monomial: Monomial) -> int:
    return sum(n * power for n, power in monomial)


def _monomial_product(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    powers = dict(a)
    for n, power in b:
        powers[n] = powers.get(n, 0) + power
    return tuple(sorted(powers.items()))


def _check_weight(monomial: Monomial) -> None:
    weight = monomial_weight(monomial)
    if weight > config.lambda_weight_cap:
        raise TruncationOverflowError(
            f"Lambda monomial {_format_monomial(monomial)} has weight {weight} > "
            f"lambda_weight_cap={config.lambda_weight_cap}; raise config.lambda_weight_cap"
        )


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _format_monomial(monomial: Monomial) -> str:
    return "*".join(f"l{n}" if power == 1 else f"l{n}^{power}" for n, power in monomial)


class Coefficient:
    """Immutable element of Q[l3, l5, ...] in canonical form (no stored zeros)"""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        cleaned: Dict[Monomial, Fraction] = {}
        for monomial, value in (terms or {}).items():
            value = Fraction(value)
            if value == 0:
                continue
            monomial = tuple(sorted((int(n), int(p)) for n, p in monomial if p))
            _check_weight(monomial)
            cleaned[monomial] = cleaned.get(monomial, Fraction(0)) + value
        self._terms = {m: v for m, v in cleaned.items() if v != 0}

    @classmethod
    def _from_clean(cls, terms: Dict[Monomial, Fraction]) -> "Coefficient":
        instance = cls.__new__(cls)
        instance._terms = terms
        return instance

    @classmethod
    def rational(cls, value: Scalar) -> "Coefficient":
        value = Fraction(value)
        return cls._from_clean({UNIT_MONOMIAL: value} if value else {})

    @classmethod
    def coerce(cls, value: Union["Coefficient", Scalar]) -> "Coefficient":
        if isinstance(value, Coefficient):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.rational(value)
        raise TypeError(f"Cannot use {type(value).__name__} as a Coefficient")

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    def terms(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(not m for m in self._terms)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"{self} is not a rational number")
        return self._terms.get(UNIT_MONOMIAL, Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get(UNIT_MONOMIAL, Fraction(0))

    def weight(self) -> int:
        """Largest lambda weight among stored monomials (0 for rationals and zero)"""
        return max((monomial_weight(m) for m in self._terms), default=0)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Coefficient.rational(other)
        if not isinstance(other, Coefficient):
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        result = dict(self._terms)
        for monomial, value in other._terms.items():
            total = result.get(monomial, 0) + value
            if total:
                result[monomial] = total
            else:
                result.pop(monomial, None)
        return Coefficient._from_clean(result)

    __radd__ = __add__

    def __neg__(self):
        return Coefficient._from_clean({m: -v for m, v in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Coefficient.rational(other)
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            return Coefficient._from_clean({m: v * other for m, v in self._terms.items()})
        if not isinstance(other, Coefficient):
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        if other.is_rational():
            return self * other.constant_term()
        if self.is_rational():
            return other * self.constant_term()
        result: Dict[Monomial, Fraction] = {}
        for m1, v1 in self._terms.items():
            for m2, v2 in other._terms.items():
                monomial = _monomial_product(m1, m2)
                _check_weight(monomial)
                result[monomial] = result.get(monomial, 0) + v1 * v2
        return Coefficient._from_clean({m: v for m, v in result.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("Coefficient division by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Coefficient.rational(other)
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        # equal ints and Fractions must hash alike
        if self.is_rational():
            return hash(self.constant_term())
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    # ------------------------------------------------------------------
    # Formatting
    # ------------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda item: (monomial_weight(item[0]), item[0]))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for monomial, value in self.sorted_terms():
            if not monomial:
                parts.append(format_rational(value))
            elif value == 1:
                parts.append(_format_monomial(monomial))
            elif value == -1:
                parts.append("-" + _format_monomial(monomial))
            elif value.denominator == 1:
                parts.append(f"{value.numerator}*{_format_monomial(monomial)}")
            else:
                parts.append(f"({format_rational(value)})*{_format_monomial(monomial)}")
        text = parts[0]
        for part in parts[1:]:
            text += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return text

    def __repr__(self):
        return f"Coefficient({str(self)!r})"

    def needs_parentheses(self) -> bool:
        """True when printing as a factor needs brackets (sums)"""
        return len(self._terms) > 1


ZERO = Coefficient()
ONE = Coefficient.rational(1)


def coeff_arith(a: Coefficient, b: Coefficient, op: str) -> Coefficient:
    """Exact ring operation `op` in {"add", "sub", "mul"}"""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise DomainError(f"Unknown coefficient operation {op!r}")


def lambda_generator(n: int) -> Coefficient:
    """The formal symbol ln = zeta(n) / (n * (2*pi*i)^n) for odd n >= 3"""
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise DomainError(
            f"Lambda generators exist for odd n >= 3 only, got {n!r}; "
            "even zeta values are rational multiples of pi^n (Bernoulli numbers)"
        )
    return Coefficient({((n, 1),): 1})


# ============================================================================
# NUMERIC EVALUATION
# ============================================================================

@dataclass(frozen=True)
class NumericValue:
    real: float
    imag: float

    def __complex__(self):
        return complex(self.real, self.imag)

    def __str__(self):
        return format_complex(complex(self))


def format_complex(value: complex) -> str:
    """Render as "a+bi" with 12 significant digits"""
    return f"{value.real:.12g}{value.imag:+.12g}i"


def lambda_value(n: int) -> complex:
    """zeta(n) / (n * (2*pi*i)^n) to double precision, at config.zeta_precision_digits"""
    return _lambda_value(n, config.zeta_precision_digits)


@lru_cache(maxsize=None)
def _lambda_value(n: int, digits: int) -> complex:
    with mpmath.workdps(digits):
        value = mpmath.zeta(n) / (n * (2j * mpmath.pi) ** n)
        return complex(value)


def _rational_to_float(value: Fraction) -> float:
    try:
        return float(value)
    except OverflowError as e:
        raise NumericOverflowError(f"Rational {value} does not fit a double") from e


def evaluate_complex(c: Coefficient) -> complex:
    total = 0j
    for monomial, value in c.terms():
        term = complex(_rational_to_float(value))
        for n, power in monomial:
            term *= lambda_value(n) ** power
        total += term
    if not (math.isfinite(total.real) and math.isfinite(total.imag)):
        raise NumericOverflowError(f"Numeric value of {c} is not finite")
    return total


def evaluate_numeric(c: Coefficient) -> NumericValue:
    """Substitute ln -> zeta(n)/(n(2 pi i)^n) and return the complex value"""
    value = evaluate_complex(c)
    return NumericValue(value.real, value.imag)


# ============================================================================
# PARSING
# ============================================================================

class CoefficientBuilder(ExpressionBuilder[Coefficient]):
    def constant(self, value: Fraction) -> Coefficient:
        return Coefficient.rational(value)

    def symbol(self, name: str) -> Coefficient:
        n = lambda_index(name)
        if n is None:
            raise ParseError(f"Unknown symbol {name!r} in coefficient")
        try:
            return lambda_generator(n)
        except DomainError as e:
            raise ParseError(str(e)) from None


def parse_coefficient(text: str) -> Coefficient:
    """Parse the canonical string form, e.g. "1/48" or "(-3/2)*l3*l5" """
    return parse_expression(text, CoefficientBuilder())
