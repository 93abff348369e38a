"""
Finite-dimensional Lie algebras from structure constants.

Conventions:
    [x_i, x_j] = sum_k f_ij^k x_k
    ad(a) has column j equal to [a, x_j]
    c_n(a) = tr(ad(a)^n), a polynomial on g (dual coordinates x_i*)
    {x_i, x_j} = sum_k f_ij^k x_k (Kirillov-Kostant, no factor 1/2)

Input format (JSON file or dict):
    {"dim": d, "basis": [...],
     "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "c": "1"}]}, ...]}
with 1-based indices and i < j only; the antisymmetric completion is
automatic. The alternative "table" key lists ordered pairs explicitly,
{"i", "j", "k", "c"} per entry, and is checked for antisymmetry.
"""
import hashlib
import json
import logging
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from builtin_algebras import BUILTIN_ALGEBRAS
from errors import (
    AntisymmetryViolation,
    DimensionMismatchError,
    JacobiViolation,
    ParseError,
)
from sym import Poly

logger = logging.getLogger(__name__)

BracketTable = Tuple[Tuple[Tuple[Tuple[int, Fraction], ...], ...], ...]


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Validated Lie algebra; table[i][j] lists (k, f_ij^k) with 0-based indices"""

    name: str
    basis_names: Tuple[str, ...]
    table: BracketTable

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    @property
    def uea_names(self) -> Tuple[str, ...]:
        return tuple(name.upper() for name in self.basis_names)

    @property
    def dual_names(self) -> Tuple[str, ...]:
        return tuple(f"{name}*" for name in self.basis_names)

    def bracket_terms(self, i: int, j: int) -> Tuple[Tuple[int, Fraction], ...]:
        return self.table[i][j]

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        for index, value in self.table[i][j]:
            if index == k:
                return value
        return Fraction(0)

    def bracket(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
        """[a, b] for coordinate vectors"""
        result = [Fraction(0)] * self.dim
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                for k, f in self.table[i][j]:
                    result[k] += ai * bj * f
        return result

    def variable(self, index: int) -> Poly:
        return Poly.variable(self.dim, index, self.basis_names)

    def to_json(self) -> Dict:
        """Canonical input-format dict"""
        brackets = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                terms = [{"k": k + 1, "c": str(c)} for k, c in self.table[i][j]]
                if terms:
                    brackets.append({"i": i + 1, "j": j + 1, "terms": terms})
        return {
            "name": self.name,
            "dim": self.dim,
            "basis": list(self.basis_names),
            "brackets": brackets,
        }

    def digest(self) -> str:
        """SHA-256 of the canonical description (name excluded)"""
        cached = self.__dict__.get("_digest")
        if cached is None:
            payload = json.dumps({k: v for k, v in self.to_json().items() if k != "name"}, sort_keys=True)
            cached = hashlib.sha256(payload.encode("utf-8")).hexdigest()
            object.__setattr__(self, "_digest", cached)
        return cached

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim})"


# ============================================================================
# LOADING AND VALIDATION
# ============================================================================

def _parse_rational(value) -> Fraction:
    try:
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"Malformed rational {value!r}: {e}") from None
    raise ParseError(f"Rationals must be strings \"p/q\" or integers, got {value!r}")


def _index(entry: Mapping, key: str, dim: int) -> int:
    if key not in entry:
        raise ParseError(f"Bracket entry {entry!r} lacks key {key!r}")
    value = entry[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"Index {key}={value!r} must be an integer")
    if not 1 <= value <= dim:
        raise DimensionMismatchError(f"Index {key}={value} outside 1..{dim}")
    return value - 1


def _empty_constants(dim: int) -> List[List[Dict[int, Fraction]]]:
    return [[{} for _ in range(dim)] for _ in range(dim)]


def _read_brackets(description: Mapping, dim: int) -> List[List[Dict[int, Fraction]]]:
    constants = _empty_constants(dim)
    for entry in description.get("brackets", []):
        i = _index(entry, "i", dim)
        j = _index(entry, "j", dim)
        if i >= j:
            raise ParseError(f"Only i < j bracket entries are accepted, got i={i + 1}, j={j + 1}")
        for term in entry.get("terms", []):
            k = _index(term, "k", dim)
            c = _parse_rational(term.get("c"))
            constants[i][j][k] = constants[i][j].get(k, Fraction(0)) + c
            constants[j][i][k] = -constants[i][j][k]
    return constants


def _read_table(description: Mapping, dim: int) -> List[List[Dict[int, Fraction]]]:
    constants = _empty_constants(dim)
    for entry in description["table"]:
        i = _index(entry, "i", dim)
        j = _index(entry, "j", dim)
        k = _index(entry, "k", dim)
        constants[i][j][k] = constants[i][j].get(k, Fraction(0)) + _parse_rational(entry.get("c"))
    return constants


def check_antisymmetry(constants) -> None:
    dim = len(constants)
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                fij = constants[i][j].get(k, Fraction(0))
                fji = constants[j][i].get(k, Fraction(0))
                if fij != -fji:
                    raise AntisymmetryViolation(
                        f"f_{i + 1}{j + 1}^{k + 1} = {fij} but f_{j + 1}{i + 1}^{k + 1} = {fji}",
                        witness=(i + 1, j + 1, k + 1),
                    )


def check_jacobi(constants) -> None:
    """Sum_m f_ij^m f_mk^l + f_jk^m f_mi^l + f_ki^m f_mj^l = 0 for all i < j < k"""
    dim = len(constants)

    def f(a, b, c):
        return constants[a][b].get(c, Fraction(0))

    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                for l in range(dim):
                    total = sum(
                        f(i, j, m) * f(m, k, l) + f(j, k, m) * f(m, i, l) + f(k, i, m) * f(m, j, l)
                        for m in range(dim)
                    )
                    if total:
                        raise JacobiViolation(
                            f"Jacobi identity fails for (i, j, k) = ({i + 1}, {j + 1}, {k + 1}) "
                            f"in component l = {l + 1}: sum = {total}",
                            witness=(i + 1, j + 1, k + 1, l + 1),
                        )


def lie_algebra_from_dict(description: Mapping, name: str = None) -> LieAlgebra:
    """Build and validate a LieAlgebra from an input-format dict"""
    if not isinstance(description, Mapping):
        raise ParseError(f"Algebra description must be an object, got {type(description).__name__}")
    for key in ("dim", "basis"):
        if key not in description:
            raise ParseError(f"Algebra description lacks {key!r}")
    dim = description["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError(f"dim must be a positive integer, got {dim!r}")
    basis = description["basis"]
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise ParseError("basis must be a list of names")
    if len(basis) != dim:
        raise DimensionMismatchError(f"dim = {dim} but {len(basis)} basis names given")
    if len(set(basis)) != dim or len({b.upper() for b in basis}) != dim:
        raise ParseError(f"Basis names must be distinct (also after capitalization): {basis}")
    for b in basis:
        if not b.isidentifier() or b.startswith("l") and b[1:].isdigit():
            raise ParseError(f"Invalid basis name {b!r}")

    if "table" in description:
        constants = _read_table(description, dim)
        check_antisymmetry(constants)
    else:
        constants = _read_brackets(description, dim)
    check_jacobi(constants)

    table = tuple(
        tuple(
            tuple(sorted((k, c) for k, c in constants[i][j].items() if c))
            for j in range(dim)
        )
        for i in range(dim)
    )
    return LieAlgebra(name or description.get("name", "custom"), tuple(basis), table)


def load_lie_algebra(description: Union[str, os.PathLike, Mapping, LieAlgebra]) -> LieAlgebra:
    """
    Load a Lie algebra from a built-in name, a JSON file path or a dict.

    Raises:
        JacobiViolation, AntisymmetryViolation: structure constants are invalid
        DimensionMismatchError: indices or basis length disagree with dim
        ParseError: malformed description or unreadable file
    """
    if isinstance(description, LieAlgebra):
        return description
    if isinstance(description, Mapping):
        return lie_algebra_from_dict(description)
    key = os.fspath(description)
    if key in BUILTIN_ALGEBRAS:
        return lie_algebra_from_dict(BUILTIN_ALGEBRAS[key], name=key)
    if not os.path.exists(key):
        raise ParseError(f"No built-in algebra or file named {key!r}")
    try:
        with open(key, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"Algebra file {key} is not valid JSON: {e}") from None
    default_name = os.path.splitext(os.path.basename(key))[0]
    return lie_algebra_from_dict(data, name=data.get("name", default_name) if isinstance(data, dict) else None)


# ============================================================================
# ADJOINT REPRESENTATION AND TRACES
# ============================================================================

def adjoint_matrix(L: LieAlgebra, coeffs: Sequence) -> List[List[Fraction]]:
    """Matrix of ad(sum a_i x_i); column j is [a, x_j]"""
    if len(coeffs) != L.dim:
        raise DimensionMismatchError(f"{len(coeffs)} coefficients for dimension {L.dim}")
    matrix = [[Fraction(0)] * L.dim for _ in range(L.dim)]
    for i, a in enumerate(coeffs):
        a = Fraction(a)
        if not a:
            continue
        for j in range(L.dim):
            for k, f in L.table[i][j]:
                matrix[k][j] += a * f
    return matrix


@dataclass(frozen=True)
class TracePolynomial:
    n: int
    poly: Poly  # homogeneous of degree n in the dual coordinates, or zero


def _symbolic_adjoint(L: LieAlgebra) -> List[List[Poly]]:
    zero = Poly.zero(L.dim, L.dual_names)
    matrix = [[zero for _ in range(L.dim)] for _ in range(L.dim)]
    for i in range(L.dim):
        a_i = Poly.variable(L.dim, i, L.dual_names)
        for j in range(L.dim):
            for k, f in L.table[i][j]:
                matrix[k][j] = matrix[k][j] + a_i * f
    return matrix


def _matmul(A: List[List[Poly]], B: List[List[Poly]]) -> List[List[Poly]]:
    size = len(A)
    result = []
    for r in range(size):
        row = []
        for c in range(size):
            entry = A[r][0] * B[0][c]
            for s in range(1, size):
                entry = entry + A[r][s] * B[s][c]
            row.append(entry)
        result.append(row)
    return result


@lru_cache(maxsize=None)
def _adjoint_powers(L: LieAlgebra, n: int) -> Tuple[Tuple[Poly, ...], ...]:
    if n == 1:
        return tuple(tuple(row) for row in _symbolic_adjoint(L))
    previous = [list(row) for row in _adjoint_powers(L, n - 1)]
    return tuple(tuple(row) for row in _matmul(previous, _symbolic_adjoint(L)))


@lru_cache(maxsize=None)
def trace_polynomial(L: LieAlgebra, n: int) -> TracePolynomial:
    """c_n = tr(ad(a)^n) as a homogeneous polynomial of degree n in a"""
    if n < 1:
        raise ValueError(f"trace_polynomial needs n >= 1, got {n}")
    power = _adjoint_powers(L, n)
    trace = Poly.zero(L.dim, L.dual_names)
    for i in range(L.dim):
        trace = trace + power[i][i]
    return TracePolynomial(n, trace)


def is_unimodular(L: LieAlgebra) -> bool:
    return trace_polynomial(L, 1).poly.is_zero()


def is_nilpotent(L: LieAlgebra) -> bool:
    """ad(a) nilpotent for all a iff c_1..c_d vanish (Newton identities, Engel)"""
    return all(trace_polynomial(L, n).poly.is_zero() for n in range(1, L.dim + 1))


# ============================================================================
# POISSON STRUCTURE
# ============================================================================

@dataclass(frozen=True)
class PoissonBivector:
    """pi = f_ij^k x_k d_i d_j, sharing the algebra's structure table"""

    algebra: LieAlgebra

    def component(self, i: int, j: int) -> Poly:
        """pi^{ij} = sum_k f_ij^k x_k"""
        L = self.algebra
        return Poly(L.dim, {tuple(1 if r == k else 0 for r in range(L.dim)): f for k, f in L.table[i][j]}, L.basis_names)

    def __call__(self, f: Poly, g: Poly) -> Poly:
        return poisson_bracket(self.algebra, f, g)


def poisson_bracket(L: LieAlgebra, f: Poly, g: Poly) -> Poly:
    """{f, g} = sum_ij (sum_k f_ij^k x_k) d_i f d_j g"""
    if f.dim != L.dim or g.dim != L.dim:
        raise DimensionMismatchError(f"Polynomials must have dimension {L.dim}")
    bivector = PoissonBivector(L)
    result = Poly.zero(L.dim, L.basis_names)
    df = [f.derivative(i) for i in range(L.dim)]
    dg = [g.derivative(j) for j in range(L.dim)]
    for i in range(L.dim):
        if df[i].is_zero():
            continue
        for j in range(L.dim):
            if not L.table[i][j] or dg[j].is_zero():
                continue
            result = result + bivector.component(i, j) * df[i] * dg[j]
    return result
