"""
Sparse polynomials over Coefficient and truncated constant-coefficient
differential operators.

Poly is an element of S(g): a map exponent-vector -> Coefficient in the basis
variables of a Lie algebra. ConstOp is an element of the completed S(g*)
acting on S(g) by plain differentiation: the monomial with exponent alpha
stands for d^alpha with NO 1/alpha! normalization. For example the ConstOp
{(2,): 1/2} applied to x^3 gives 1/2 * 6x = 3x, not 1/2 * 3x.

A ConstOp carries a truncation order N; all stored |alpha| <= N and the
operator may only be applied to polynomials of degree <= N, where the
truncation is exact.
"""
import math
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple, Union

from errors import DegreeCapExceededError, DimensionMismatchError, DomainError, ParseError
from expression_parser import ExpressionBuilder, lambda_index, parse_expression
from ring import ONE, ZERO, Coefficient, evaluate_complex, lambda_generator

Exponent = Tuple[int, ...]
CoefficientLike = Union[Coefficient, int, Fraction]


def default_names(dim: int) -> Tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(dim))


def exponent_add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def graded_lex_key(exponent: Exponent):
    """Higher total degree first, then lexicographically larger exponents first"""
    return (-sum(exponent), tuple(-e for e in exponent))


def _accumulate(terms: Dict[Exponent, Coefficient], exponent: Exponent, value: Coefficient):
    total = terms.get(exponent, ZERO) + value
    if total:
        terms[exponent] = total
    else:
        terms.pop(exponent, None)


def format_terms(terms: Mapping[Exponent, Coefficient], names: Sequence[str]) -> str:
    """Graded-lex rendering in the shared expression grammar"""
    if not terms:
        return "0"
    pieces = []
    for exponent in sorted(terms, key=graded_lex_key):
        coefficient = terms[exponent]
        variables = "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(names, exponent) if e
        )
        if not variables:
            pieces.append(str(coefficient) if not coefficient.needs_parentheses() else f"({coefficient})")
            continue
        if coefficient == 1:
            pieces.append(variables)
        elif coefficient == -1:
            pieces.append(f"-{variables}")
        elif coefficient.needs_parentheses() or str(coefficient).startswith("("):
            pieces.append(f"({coefficient})*{variables}")
        else:
            pieces.append(f"{coefficient}*{variables}")
    text = pieces[0]
    for piece in pieces[1:]:
        text += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
    return text


class Poly:
    """Immutable sparse polynomial in `dim` variables over Coefficient"""

    __slots__ = ("dim", "names", "_terms")

    def __init__(
        self,
        dim: int,
        terms: Optional[Mapping[Exponent, CoefficientLike]] = None,
        names: Optional[Sequence[str]] = None,
    ):
        self.dim = dim
        self.names = tuple(names) if names is not None else default_names(dim)
        if len(self.names) != dim:
            raise DimensionMismatchError(f"{len(self.names)} names for dimension {dim}")
        cleaned: Dict[Exponent, Coefficient] = {}
        for exponent, value in (terms or {}).items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != dim:
                raise DimensionMismatchError(f"Exponent {exponent} has length != {dim}")
            if any(e < 0 for e in exponent):
                raise DomainError(f"Negative exponent {exponent}")
            _accumulate(cleaned, exponent, Coefficient.coerce(value))
        self._terms = cleaned

    @classmethod
    def _from_clean(cls, dim: int, terms: Dict[Exponent, Coefficient], names: Tuple[str, ...]):
        instance = cls.__new__(cls)
        instance.dim = dim
        instance.names = names
        instance._terms = terms
        return instance

    # Constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim: int, names: Optional[Sequence[str]] = None) -> "Poly":
        return cls(dim, {}, names)

    @classmethod
    def constant(cls, dim: int, value: CoefficientLike, names: Optional[Sequence[str]] = None) -> "Poly":
        return cls(dim, {(0,) * dim: value}, names)

    @classmethod
    def variable(cls, dim: int, index: int, names: Optional[Sequence[str]] = None) -> "Poly":
        exponent = tuple(1 if i == index else 0 for i in range(dim))
        return cls(dim, {exponent: 1}, names)

    @classmethod
    def monomial(cls, exponent: Exponent, value: CoefficientLike = 1, names: Optional[Sequence[str]] = None) -> "Poly":
        return cls(len(exponent), {tuple(exponent): value}, names)

    # Inspection --------------------------------------------------------

    def terms(self) -> Iterator[Tuple[Exponent, Coefficient]]:
        return iter(self._terms.items())

    def coefficient(self, exponent: Exponent) -> Coefficient:
        return self._terms.get(tuple(exponent), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial"""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous_component(self, degree: int) -> "Poly":
        return Poly._from_clean(
            self.dim, {e: c for e, c in self._terms.items() if sum(e) == degree}, self.names
        )

    def __len__(self):
        return len(self._terms)

    # Arithmetic --------------------------------------------------------

    def _check_dim(self, other: "Poly"):
        if other.dim != self.dim:
            raise DimensionMismatchError(f"Polynomials of dimension {self.dim} and {other.dim}")

    def _coerce(self, other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            self._check_dim(other)
            return other
        if isinstance(other, (Coefficient, int, Fraction)):
            return Poly.constant(self.dim, other, self.names)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        result = dict(self._terms)
        for exponent, value in other._terms.items():
            _accumulate(result, exponent, value)
        return Poly._from_clean(self.dim, result, self.names)

    __radd__ = __add__

    def __neg__(self):
        return Poly._from_clean(self.dim, {e: -c for e, c in self._terms.items()}, self.names)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor: CoefficientLike) -> "Poly":
        factor = Coefficient.coerce(factor)
        if not factor:
            return Poly.zero(self.dim, self.names)
        result = {}
        for exponent, value in self._terms.items():
            product = value * factor
            if product:
                result[exponent] = product
        return Poly._from_clean(self.dim, result, self.names)

    def __mul__(self, other):
        if isinstance(other, (Coefficient, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_dim(other)
        result: Dict[Exponent, Coefficient] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                _accumulate(result, exponent_add(e1, e2), c1 * c2)
        return Poly._from_clean(self.dim, result, self.names)

    def __rmul__(self, other):
        if isinstance(other, (Coefficient, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise DomainError("Negative polynomial power")
        result = Poly.constant(self.dim, 1, self.names)
        for _ in range(exponent):
            result = result * self
        return result

    def derivative(self, index: int, times: int = 1) -> "Poly":
        """d^times / dx_index^times"""
        result: Dict[Exponent, Coefficient] = {}
        for exponent, value in self._terms.items():
            e = exponent[index]
            if e < times:
                continue
            factor = math.perm(e, times)
            lowered = exponent[:index] + (e - times,) + exponent[index + 1:]
            _accumulate(result, lowered, value * factor)
        return Poly._from_clean(self.dim, result, self.names)

    def map_coefficients(self, fn) -> "Poly":
        return Poly(self.dim, {e: fn(c) for e, c in self._terms.items()}, self.names)

    def with_names(self, names: Sequence[str]) -> "Poly":
        return Poly._from_clean(self.dim, dict(self._terms), tuple(names))

    def evaluate_coefficients(self) -> Dict[Exponent, complex]:
        """Numeric value of every coefficient (lambda symbols substituted)"""
        return {e: evaluate_complex(c) for e, c in self._terms.items()}

    # Comparison / formatting --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (Coefficient, int, Fraction)):
            other = Poly.constant(self.dim, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        return hash((self.dim, frozenset(self._terms.items())))

    def __str__(self):
        return format_terms(self._terms, self.names)

    def __repr__(self):
        return f"Poly({str(self)!r})"


def poly_arith(f: Poly, g: Poly, op: str) -> Poly:
    """Exact polynomial operation `op` in {"add", "sub", "mul"}"""
    if f.dim != g.dim:
        raise DimensionMismatchError(f"Polynomials of dimension {f.dim} and {g.dim}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise DomainError(f"Unknown polynomial operation {op!r}")


class PolyBuilder(ExpressionBuilder[Poly]):
    """Parses basis names as variables and lN as lambda coefficients"""

    def __init__(self, names: Sequence[str]):
        self.names = tuple(names)
        self.index = {name: i for i, name in enumerate(self.names)}

    def constant(self, value: Fraction) -> Poly:
        return Poly.constant(len(self.names), value, self.names)

    def symbol(self, name: str) -> Poly:
        if name in self.index:
            return Poly.variable(len(self.names), self.index[name], self.names)
        n = lambda_index(name)
        if n is not None:
            try:
                return Poly.constant(len(self.names), lambda_generator(n), self.names)
            except DomainError as e:
                raise ParseError(str(e)) from None
        raise ParseError(f"Unknown variable {name!r}; expected one of {', '.join(self.names)}")

    def power(self, a: Poly, exponent: int) -> Poly:
        return a ** exponent


def parse_poly(text: str, names: Sequence[str]) -> Poly:
    """Parse e.g. "x*y + 1/2*z" over the given basis names"""
    return parse_expression(text, PolyBuilder(names))


# ============================================================================
# CONSTANT-COEFFICIENT OPERATORS
# ============================================================================

class ConstOp:
    """Truncated element of the completed S(g*): sum of c_alpha * d^alpha, |alpha| <= order"""

    __slots__ = ("dim", "order", "_terms")

    def __init__(self, dim: int, order: int, terms: Optional[Mapping[Exponent, CoefficientLike]] = None):
        if order < 0:
            raise DomainError(f"Truncation order must be >= 0, got {order}")
        self.dim = dim
        self.order = order
        cleaned: Dict[Exponent, Coefficient] = {}
        for exponent, value in (terms or {}).items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != dim:
                raise DimensionMismatchError(f"Exponent {exponent} has length != {dim}")
            if sum(exponent) > order:
                continue
            _accumulate(cleaned, exponent, Coefficient.coerce(value))
        self._terms = cleaned

    @classmethod
    def _from_clean(cls, dim: int, order: int, terms: Dict[Exponent, Coefficient]) -> "ConstOp":
        instance = cls.__new__(cls)
        instance.dim = dim
        instance.order = order
        instance._terms = terms
        return instance

    @classmethod
    def identity(cls, dim: int, order: int) -> "ConstOp":
        return cls(dim, order, {(0,) * dim: 1})

    @classmethod
    def partial(cls, dim: int, index: int, order: int, value: CoefficientLike = 1) -> "ConstOp":
        exponent = tuple(1 if i == index else 0 for i in range(dim))
        return cls(dim, order, {exponent: value})

    @classmethod
    def from_poly(cls, poly: Poly, order: int) -> "ConstOp":
        """Substitute d_i for the i-th (dual) coordinate of `poly`"""
        return cls(poly.dim, order, dict(poly.terms()))

    def terms(self) -> Iterator[Tuple[Exponent, Coefficient]]:
        return iter(self._terms.items())

    def coefficient(self, exponent: Exponent) -> Coefficient:
        return self._terms.get(tuple(exponent), ZERO)

    def constant_term(self) -> Coefficient:
        return self._terms.get((0,) * self.dim, ZERO)

    def homogeneous_component(self, degree: int) -> "ConstOp":
        return ConstOp._from_clean(
            self.dim, self.order, {e: c for e, c in self._terms.items() if sum(e) == degree}
        )

    def is_identity(self) -> bool:
        return self._terms == {(0,) * self.dim: ONE}

    def truncate(self, order: int) -> "ConstOp":
        return ConstOp._from_clean(
            self.dim, min(order, self.order), {e: c for e, c in self._terms.items() if sum(e) <= order}
        )

    def _check(self, other: "ConstOp"):
        if other.dim != self.dim:
            raise DimensionMismatchError(f"Operators of dimension {self.dim} and {other.dim}")

    def __add__(self, other: "ConstOp") -> "ConstOp":
        self._check(other)
        order = min(self.order, other.order)
        result = {e: c for e, c in self._terms.items() if sum(e) <= order}
        for exponent, value in other._terms.items():
            if sum(exponent) <= order:
                _accumulate(result, exponent, value)
        return ConstOp._from_clean(self.dim, order, result)

    def __neg__(self) -> "ConstOp":
        return ConstOp._from_clean(self.dim, self.order, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "ConstOp") -> "ConstOp":
        return self + (-other)

    def scale(self, factor: CoefficientLike) -> "ConstOp":
        factor = Coefficient.coerce(factor)
        result = {}
        for exponent, value in self._terms.items():
            product = value * factor
            if product:
                result[exponent] = product
        return ConstOp._from_clean(self.dim, self.order, result)

    def __eq__(self, other):
        if not isinstance(other, ConstOp):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        return hash((self.dim, frozenset(self._terms.items())))

    def __str__(self):
        names = tuple(f"d{i + 1}" for i in range(self.dim))
        return format_terms(self._terms, names)

    def __repr__(self):
        return f"ConstOp({str(self)!r}, order={self.order})"


def apply_operator(D: ConstOp, f: Poly) -> Poly:
    """sum_alpha c_alpha d^alpha f, exact for deg f <= D.order"""
    if D.dim != f.dim:
        raise DimensionMismatchError(f"Operator of dimension {D.dim} applied to polynomial of dimension {f.dim}")
    if f.degree() > D.order:
        raise DegreeCapExceededError(
            f"Polynomial of degree {f.degree()} exceeds operator truncation order {D.order}; "
            "raise config.degree_cap / --cap"
        )
    result: Dict[Exponent, Coefficient] = {}
    for exponent, value in f.terms():
        for alpha, c in D.terms():
            if any(a > e for a, e in zip(alpha, exponent)):
                continue
            factor = 1
            for a, e in zip(alpha, exponent):
                if a:
                    factor *= math.perm(e, a)
            lowered = tuple(e - a for e, a in zip(exponent, alpha))
            _accumulate(result, lowered, value * c * factor)
    return Poly._from_clean(f.dim, result, f.names)


def compose_operators(D1: ConstOp, D2: ConstOp) -> ConstOp:
    """Product in S(g*) truncated at min(N1, N2); commutative"""
    D1._check(D2)
    order = min(D1.order, D2.order)
    result: Dict[Exponent, Coefficient] = {}
    for e1, c1 in D1.terms():
        if sum(e1) > order:
            continue
        for e2, c2 in D2.terms():
            exponent = exponent_add(e1, e2)
            if sum(exponent) > order:
                continue
            _accumulate(result, exponent, c1 * c2)
    return ConstOp._from_clean(D1.dim, order, result)


def exp_operator(D: ConstOp, order: Optional[int] = None) -> ConstOp:
    """sum_k D^k / k! truncated at `order` (default D.order); D must have no constant term"""
    if D.constant_term():
        raise DomainError(f"exp_operator needs a zero constant term, got {D.constant_term()}")
    order = D.order if order is None else min(order, D.order)
    D = D.truncate(order)
    result = ConstOp.identity(D.dim, order)
    power = ConstOp.identity(D.dim, order)
    for k in range(1, order + 1):
        power = compose_operators(power, D)
        if not power._terms:
            break
        result = result + power.scale(Fraction(1, math.factorial(k)))
    return result


def invert_operator(D: ConstOp) -> ConstOp:
    """E with compose(D, E) = identity up to D.order; constant term must be a nonzero rational"""
    c0 = D.constant_term()
    if not c0 or not c0.is_rational():
        raise DomainError(f"Operator is not invertible: constant term {c0} is not a nonzero rational")
    inverse_c0 = 1 / c0.rational_value()
    # D = c0 * (1 + R) with R of order >= 1, so D^-1 = c0^-1 * sum (-R)^k
    R = D.scale(inverse_c0) - ConstOp.identity(D.dim, D.order)
    minus_R = -R
    result = ConstOp.identity(D.dim, D.order)
    power = ConstOp.identity(D.dim, D.order)
    for _ in range(D.order):
        power = compose_operators(power, minus_R)
        if not power._terms:
            break
        result = result + power
    return result.scale(inverse_c0)

