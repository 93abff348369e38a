"""
Duflo-type elements and the star products obtained by transfer.

    sqrt(j)(d) = exp(c1coef * c1(d) + sum_{n>=1} B_2n / (4n (2n)!) * c_2n(d))
    j_log(d)   = exp(c1coef * c1(d) + sum_{n>=1} B_2n / (4n (2n)!) * c_2n(d)
                                    + sum_{n>=1} l_{2n+1} * c_{2n+1}(d))
    T(d)       = exp(sum_{n>=1} l_{2n+1} * c_{2n+1}(d))

with c1coef = config.c1_coefficient (-1/4). The one-variable series are the
Taylor expansions of log sqrt((1 - e^-z)/z) and of
c1coef*z - log Gamma(1 + z/(2 pi i)) - gamma*z/(2 pi i).

Isomorphisms S(g) -> U(g):
    STANDARD     f -> PBW(sqrt(j)(d) f)
    LOGARITHMIC  f -> PBW(j_log(d) f)
    GUTT         f -> PBW(f)
and f * g := iso^-1(iso(f) iso(g)). Then T(f *_log g) = T(f) * T(g).
"""
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import List, Optional, Tuple

import mpmath
import sympy

from config import config
from errors import DegreeCapExceededError, DimensionMismatchError, DomainError, ParseError
from lie import LieAlgebra, trace_polynomial
from ring import Coefficient, lambda_generator
from sym import ConstOp, Poly, apply_operator, exp_operator, invert_operator
from uea import UeaElement, pbw_inverse, pbw_symmetrize


class StarProductKind(Enum):
    STANDARD = "standard"
    LOGARITHMIC = "logarithmic"
    GUTT = "gutt"

    @classmethod
    def from_name(cls, name: str) -> "StarProductKind":
        aliases = {"log": cls.LOGARITHMIC, "kontsevich": cls.STANDARD}
        key = name.strip().lower()
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            choices = ", ".join(kind.value for kind in cls)
            raise ParseError(f"Unknown star product kind {name!r}; choose from {choices}") from None


def bernoulli_coefficient(n: int) -> Fraction:
    """B_2n / (4n (2n)!), the coefficient of c_2n in the Duflo exponent"""
    b = sympy.bernoulli(2 * n)
    return Fraction(int(b.p), int(b.q)) / (4 * n * factorial(2 * n))


def _resolve_order(order: Optional[int]) -> int:
    order = config.degree_cap if order is None else order
    if order < 0:
        raise DomainError(f"Truncation order must be >= 0, got {order}")
    return order


def trace_operator(L: LieAlgebra, n: int, order: int) -> ConstOp:
    """c_n(d): substitute d_i for x_i* in the trace polynomial"""
    return ConstOp.from_poly(trace_polynomial(L, n).poly, order)


def c1_operator(L: LieAlgebra, order: Optional[int] = None) -> ConstOp:
    return trace_operator(L, 1, _resolve_order(order))


def duflo_exponent(L: LieAlgebra, order: Optional[int] = None) -> ConstOp:
    order = _resolve_order(order)
    exponent = trace_operator(L, 1, order).scale(config.c1_coefficient)
    n = 1
    while 2 * n <= order:
        exponent = exponent + trace_operator(L, 2 * n, order).scale(bernoulli_coefficient(n))
        n += 1
    return exponent


def odd_trace_exponent(L: LieAlgebra, order: Optional[int] = None) -> ConstOp:
    order = _resolve_order(order)
    exponent = ConstOp(L.dim, order)
    n = 1
    while 2 * n + 1 <= order:
        exponent = exponent + trace_operator(L, 2 * n + 1, order).scale(lambda_generator(2 * n + 1))
        n += 1
    return exponent


def log_exponent(L: LieAlgebra, order: Optional[int] = None) -> ConstOp:
    order = _resolve_order(order)
    return duflo_exponent(L, order) + odd_trace_exponent(L, order)


def duflo_element(L: LieAlgebra, order: Optional[int] = None) -> ConstOp:
    """sqrt(j)(d) truncated at `order`; all coefficients rational"""
    order = _resolve_order(order)
    return exp_operator(duflo_exponent(L, order), order)


def log_element(L: LieAlgebra, order: Optional[int] = None) -> ConstOp:
    """j_log(d) truncated at `order`; equals duflo_element composed with equivalence_operator"""
    order = _resolve_order(order)
    return exp_operator(log_exponent(L, order), order)


def equivalence_operator(L: LieAlgebra, order: Optional[int] = None) -> ConstOp:
    """T(d) = exp(sum l_{2n+1} c_{2n+1}(d)) truncated at `order`"""
    order = _resolve_order(order)
    return exp_operator(odd_trace_exponent(L, order), order)


@lru_cache(maxsize=128)
def _isomorphism_operators(L: LieAlgebra, kind: StarProductKind, order: int, c1_coefficient: Fraction) -> Tuple[ConstOp, ConstOp]:
    if kind is StarProductKind.GUTT:
        identity = ConstOp.identity(L.dim, order)
        return identity, identity
    if kind is StarProductKind.STANDARD:
        op = duflo_element(L, order)
    else:
        op = log_element(L, order)
    return op, invert_operator(op)


def isomorphism_operator(L: LieAlgebra, kind: StarProductKind, order: Optional[int] = None) -> ConstOp:
    order = _resolve_order(order)
    return _isomorphism_operators(L, kind, order, config.c1_coefficient)[0]


def _check_poly(L: LieAlgebra, f: Poly):
    if f.dim != L.dim:
        raise DimensionMismatchError(f"Polynomial of dimension {f.dim} for algebra {L.name} of dimension {L.dim}")


def iso_to_uea(L: LieAlgebra, kind: StarProductKind, f: Poly, order: Optional[int] = None) -> UeaElement:
    """PBW(op(d) f) with op = sqrt(j), j_log or the identity"""
    _check_poly(L, f)
    order = _resolve_order(order)
    if f.degree() > order:
        raise DegreeCapExceededError(f"deg f = {f.degree()} exceeds cap {order}; pass a larger --cap")
    op, _ = _isomorphism_operators(L, kind, order, config.c1_coefficient)
    return pbw_symmetrize(L, apply_operator(op, f))


def iso_from_uea(L: LieAlgebra, kind: StarProductKind, u: UeaElement, order: Optional[int] = None) -> Poly:
    """Inverse of iso_to_uea: op^-1(d) PBW^-1(u)"""
    order = _resolve_order(order)
    _, inverse = _isomorphism_operators(L, kind, order, config.c1_coefficient)
    return apply_operator(inverse, pbw_inverse(u))


def star(L: LieAlgebra, kind: StarProductKind, f: Poly, g: Poly, order: Optional[int] = None) -> Poly:
    """
    Star product by transfer of the UEA product.

    Args:
        L: Lie algebra
        kind: STANDARD, LOGARITHMIC or GUTT
        f, g: polynomials with deg f + deg g <= order
        order: cap on deg f + deg g (default config.degree_cap)

    Returns:
        iso^-1(iso(f) * iso(g)), exact
    """
    _check_poly(L, f)
    _check_poly(L, g)
    order = _resolve_order(order)
    total = max(f.degree(), 0) + max(g.degree(), 0)
    if total > order:
        raise DegreeCapExceededError(
            f"deg f + deg g = {total} exceeds cap {order}; pass a larger --cap"
        )
    # operators beyond the product degree act as zero
    effective = max(total, 1)
    product = iso_to_uea(L, kind, f, effective) * iso_to_uea(L, kind, g, effective)
    return iso_from_uea(L, kind, product, effective)


def order_component(f: Poly, g: Poly, result: Poly, k: int) -> Poly:
    """Order-k part of a star product f * g: its component of degree deg f + deg g - k"""
    if not f.is_homogeneous() or not g.is_homogeneous():
        raise DomainError("order_component needs homogeneous inputs")
    if f.is_zero() or g.is_zero():
        return Poly.zero(result.dim, result.names)
    degree = f.degree() + g.degree() - k
    if degree < 0:
        return Poly.zero(result.dim, result.names)
    return result.homogeneous_component(degree)


# ============================================================================
# ONE-VARIABLE GENERATING SERIES
# ============================================================================

def series_coefficients(kind: StarProductKind, order: int) -> List[Coefficient]:
    """Coefficients a_0..a_order of the exponent sum a_n z^n (a_n multiplies c_n)"""
    coefficients = [Coefficient.rational(0) for _ in range(order + 1)]
    if kind is StarProductKind.GUTT:
        return coefficients
    if order >= 1:
        coefficients[1] = Coefficient.rational(config.c1_coefficient)
    for n in range(2, order + 1):
        if n % 2 == 0:
            coefficients[n] = Coefficient.rational(bernoulli_coefficient(n // 2))
        elif kind is StarProductKind.LOGARITHMIC:
            coefficients[n] = lambda_generator(n)
    return coefficients


def duflo_closed_form_series(order: int) -> List[Fraction]:
    """Exact Taylor coefficients of log sqrt((1 - e^-z)/z) up to z^order"""
    z = sympy.Symbol("z")
    expansion = sympy.series(sympy.log((1 - sympy.exp(-z)) / z) / 2, z, 0, order + 1).removeO()
    polynomial = sympy.Poly(sympy.expand(expansion), z)
    result = [Fraction(0)] * (order + 1)
    for (power,), value in polynomial.terms():
        value = sympy.Rational(value)
        result[power] = Fraction(int(value.p), int(value.q))
    return result


def log_closed_form_series(order: int) -> List[complex]:
    """Numeric Taylor coefficients of -log Gamma(1 + z/(2 pi i)) - gamma z/(2 pi i), up to z^order"""
    with mpmath.workdps(config.zeta_precision_digits):
        scale = 2j * mpmath.pi

        def fn(z):
            return -mpmath.loggamma(1 + z / scale) - mpmath.euler * z / scale

        return [complex(c) for c in mpmath.taylor(fn, 0, order)]
