"""
Universal enveloping algebra in the PBW basis X_1^a1 ... X_d^ad.

Products are brought to normal form with the rewriting rule
X_k X_j -> X_j X_k + sum_m f_kj^m X_m (k > j), memoized per algebra in a
RewriteCache. The basis order is the input order of the algebra; normal
forms depend on it, pbw_symmetrize does not.
"""
import logging
import os
import pickle
import threading
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Tuple

from sympy.utilities.iterables import multiset_permutations

from config import config
from errors import DimensionMismatchError, DomainError, ParseError
from expression_parser import ExpressionBuilder, lambda_index, parse_expression
from lie import LieAlgebra
from ring import ZERO, Coefficient, lambda_generator
from sym import Exponent, Poly, format_terms

logger = logging.getLogger(__name__)

RewriteResult = Tuple[Tuple[Exponent, Fraction], ...]


class RewriteCache:
    """Memoized rewriting results for one algebra (keyed by its digest)"""

    def __init__(self, digest: str):
        self.digest = digest
        # (PBW exponent a, generator j) -> normal form of X^a * X_j
        self.products: Dict[Tuple[Exponent, int], RewriteResult] = {}
        # exponent e -> normal form of the symmetrized monomial x^e
        self.symmetrized: Dict[Exponent, RewriteResult] = {}
        self.hits = 0
        self.misses = 0
        self._lock = threading.Lock()

    def size(self) -> int:
        return len(self.products) + len(self.symmetrized)

    def get_stats(self) -> Dict[str, int]:
        return {
            "products": len(self.products),
            "symmetrized": len(self.symmetrized),
            "hits": self.hits,
            "misses": self.misses,
        }

    def store_product(self, key: Tuple[Exponent, int], value: RewriteResult) -> RewriteResult:
        with self._lock:
            return self.products.setdefault(key, value)

    def store_symmetrized(self, key: Exponent, value: RewriteResult) -> RewriteResult:
        with self._lock:
            return self.symmetrized.setdefault(key, value)

    def path(self, directory: str) -> str:
        return os.path.join(directory, f"uea-{self.digest}.pkl")

    def save(self, directory: str) -> str:
        os.makedirs(directory, exist_ok=True)
        target = self.path(directory)
        with self._lock:
            payload = {"digest": self.digest, "products": dict(self.products), "symmetrized": dict(self.symmetrized)}
        tmp = target + ".tmp"
        with open(tmp, "wb") as f:
            pickle.dump(payload, f)
        os.replace(tmp, target)
        return target

    def load(self, directory: str) -> bool:
        source = self.path(directory)
        if not os.path.exists(source):
            return False
        try:
            with open(source, "rb") as f:
                payload = pickle.load(f)
        except (OSError, pickle.UnpicklingError, EOFError) as e:
            logger.warning("Ignoring unreadable rewrite cache %s: %s", source, e)
            return False
        if payload.get("digest") != self.digest:
            logger.warning("Ignoring rewrite cache %s: digest mismatch", source)
            return False
        with self._lock:
            self.products.update(payload.get("products", {}))
            self.symmetrized.update(payload.get("symmetrized", {}))
        return True


# Global cache registry
_rewrite_caches: Dict[str, RewriteCache] = {}
_registry_lock = threading.Lock()


def get_rewrite_cache(L: LieAlgebra) -> RewriteCache:
    """Get or create the rewrite cache of an algebra (loaded from QUANT_CACHE_DIR if set)"""
    digest = L.digest()
    cache = _rewrite_caches.get(digest)
    if cache is not None:
        return cache
    with _registry_lock:
        cache = _rewrite_caches.get(digest)
        if cache is None:
            cache = RewriteCache(digest)
            if config.cache_dir:
                cache.load(config.cache_dir)
            _rewrite_caches[digest] = cache
    return cache


def reset_rewrite_caches():
    """Drop all in-memory rewrite caches"""
    with _registry_lock:
        _rewrite_caches.clear()


def save_rewrite_caches(directory: Optional[str] = None) -> int:
    """Persist every cache to `directory` (default config.cache_dir); returns count saved"""
    directory = directory or config.cache_dir
    if not directory:
        return 0
    saved = 0
    for cache in list(_rewrite_caches.values()):
        try:
            cache.save(directory)
            saved += 1
        except OSError as e:
            logger.warning("Could not save rewrite cache to %s: %s", directory, e)
    return saved


# ============================================================================
# REWRITING
# ============================================================================

def _bump(exponent: Exponent, index: int, delta: int) -> Exponent:
    return exponent[:index] + (exponent[index] + delta,) + exponent[index + 1:]


def _add_into(target: Dict[Exponent, Fraction], source: RewriteResult, factor: Fraction):
    for exponent, value in source:
        total = target.get(exponent, 0) + factor * value
        if total:
            target[exponent] = total
        else:
            target.pop(exponent, None)


def times_generator(L: LieAlgebra, cache: RewriteCache, a: Exponent, j: int) -> RewriteResult:
    """Normal form of X^a * X_j"""
    key = (a, j)
    hit = cache.products.get(key)
    if hit is not None:
        cache.hits += 1
        return hit
    cache.misses += 1

    k = max((i for i, e in enumerate(a) if e), default=-1)
    if k <= j:
        return cache.store_product(key, ((_bump(a, j, 1), Fraction(1)),))

    # X^a X_j = X^(a - e_k) X_k X_j = X^(a - e_k) (X_j X_k + [X_k, X_j])
    lowered = _bump(a, k, -1)
    result: Dict[Exponent, Fraction] = {}
    for exponent, value in times_generator(L, cache, lowered, j):
        _add_into(result, times_generator(L, cache, exponent, k), value)
    for m, f in L.bracket_terms(k, j):
        _add_into(result, times_generator(L, cache, lowered, m), f)
    return cache.store_product(key, tuple(sorted(result.items())))


def monomial_product(L: LieAlgebra, cache: RewriteCache, a: Exponent, b: Exponent) -> Dict[Exponent, Fraction]:
    """Normal form of X^a * X^b"""
    current: Dict[Exponent, Fraction] = {a: Fraction(1)}
    for index, count in enumerate(b):
        for _ in range(count):
            step: Dict[Exponent, Fraction] = {}
            for exponent, value in current.items():
                _add_into(step, times_generator(L, cache, exponent, index), value)
            current = step
    return current


def symmetrized_monomial(L: LieAlgebra, cache: RewriteCache, exponent: Exponent) -> RewriteResult:
    """Normal form of the average over distinct orderings of the word x^exponent"""
    hit = cache.symmetrized.get(exponent)
    if hit is not None:
        return hit
    letters = [i for i, e in enumerate(exponent) for _ in range(e)]
    zero = (0,) * L.dim
    total: Dict[Exponent, Fraction] = {}
    count = 0
    for word in multiset_permutations(letters):
        current: Dict[Exponent, Fraction] = {zero: Fraction(1)}
        for letter in word:
            step: Dict[Exponent, Fraction] = {}
            for mono, value in current.items():
                _add_into(step, times_generator(L, cache, mono, letter), value)
            current = step
        _add_into(total, tuple(current.items()), Fraction(1))
        count += 1
    if count == 0:
        total = {zero: Fraction(1)}
        count = 1
    value = tuple(sorted((e, c / count) for e, c in total.items()))
    return cache.store_symmetrized(exponent, value)


# ============================================================================
# ELEMENTS
# ============================================================================

def _accumulate(terms: Dict[Exponent, Coefficient], exponent: Exponent, value: Coefficient):
    total = terms.get(exponent, ZERO) + value
    if total:
        terms[exponent] = total
    else:
        terms.pop(exponent, None)


class UeaElement:
    """Immutable linear combination of PBW monomials over Coefficient"""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: LieAlgebra, terms: Optional[Mapping[Exponent, object]] = None):
        self.algebra = algebra
        cleaned: Dict[Exponent, Coefficient] = {}
        for exponent, value in (terms or {}).items():
            exponent = tuple(exponent)
            if len(exponent) != algebra.dim:
                raise DimensionMismatchError(f"PBW exponent {exponent} for dimension {algebra.dim}")
            _accumulate(cleaned, exponent, Coefficient.coerce(value))
        self._terms = cleaned

    @classmethod
    def _from_clean(cls, algebra: LieAlgebra, terms: Dict[Exponent, Coefficient]) -> "UeaElement":
        instance = cls.__new__(cls)
        instance.algebra = algebra
        instance._terms = terms
        return instance

    @classmethod
    def constant(cls, algebra: LieAlgebra, value) -> "UeaElement":
        return cls(algebra, {(0,) * algebra.dim: value})

    @classmethod
    def generator(cls, algebra: LieAlgebra, index: int) -> "UeaElement":
        return cls(algebra, {tuple(1 if i == index else 0 for i in range(algebra.dim)): 1})

    def terms(self) -> Iterator[Tuple[Exponent, Coefficient]]:
        return iter(self._terms.items())

    def coefficient(self, exponent: Exponent) -> Coefficient:
        return self._terms.get(tuple(exponent), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def _check(self, other: "UeaElement"):
        if other.algebra.digest() != self.algebra.digest():
            raise DimensionMismatchError("UEA elements of different algebras")

    def _coerce(self, other) -> Optional["UeaElement"]:
        if isinstance(other, UeaElement):
            self._check(other)
            return other
        if isinstance(other, (Coefficient, int, Fraction)):
            return UeaElement.constant(self.algebra, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        result = dict(self._terms)
        for exponent, value in other._terms.items():
            _accumulate(result, exponent, value)
        return UeaElement._from_clean(self.algebra, result)

    __radd__ = __add__

    def __neg__(self):
        return UeaElement._from_clean(self.algebra, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> "UeaElement":
        factor = Coefficient.coerce(factor)
        result = {}
        for exponent, value in self._terms.items():
            product = value * factor
            if product:
                result[exponent] = product
        return UeaElement._from_clean(self.algebra, result)

    def __mul__(self, other):
        if isinstance(other, (Coefficient, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, UeaElement):
            return NotImplemented
        return normal_form_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (Coefficient, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (Coefficient, int, Fraction)):
            other = UeaElement.constant(self.algebra, other)
        if not isinstance(other, UeaElement):
            return NotImplemented
        return self.algebra.dim == other.algebra.dim and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        return format_terms(self._terms, self.algebra.uea_names)

    def __repr__(self):
        return f"UeaElement({str(self)!r})"


def normal_form_product(u: UeaElement, v: UeaElement) -> UeaElement:
    """Product u * v rewritten into the PBW basis"""
    u._check(v)
    L = u.algebra
    cache = get_rewrite_cache(L)
    result: Dict[Exponent, Coefficient] = {}
    for a, ca in u.terms():
        for b, cb in v.terms():
            factor = ca * cb
            for exponent, value in monomial_product(L, cache, a, b).items():
                _accumulate(result, exponent, factor * value)
    return UeaElement._from_clean(L, result)


def pbw_symmetrize(L: LieAlgebra, f: Poly) -> UeaElement:
    """x_i1...x_in -> average of X_{i_s(1)}...X_{i_s(n)} over orderings, extended linearly"""
    if f.dim != L.dim:
        raise DimensionMismatchError(f"Polynomial of dimension {f.dim} for algebra of dimension {L.dim}")
    cache = get_rewrite_cache(L)
    result: Dict[Exponent, Coefficient] = {}
    for exponent, c in f.terms():
        for mono, value in symmetrized_monomial(L, cache, exponent):
            _accumulate(result, mono, c * value)
    return UeaElement._from_clean(L, result)


def pbw_inverse(u: UeaElement) -> Poly:
    """Inverse of pbw_symmetrize by triangular descent on the degree filtration"""
    L = u.algebra
    cache = get_rewrite_cache(L)
    remaining = dict(u.terms())
    result: Dict[Exponent, Coefficient] = {}
    while remaining:
        top = max(sum(e) for e in remaining)
        for exponent in [e for e in remaining if sum(e) == top]:
            c = remaining.get(exponent)
            if c is None:
                continue
            _accumulate(result, exponent, c)
            for mono, value in symmetrized_monomial(L, cache, exponent):
                _accumulate(remaining, mono, -(c * value))
    return Poly(L.dim, result, L.basis_names)


def gutt_product(L: LieAlgebra, f: Poly, g: Poly) -> Poly:
    """PBW^-1(PBW(f) * PBW(g))"""
    return pbw_inverse(pbw_symmetrize(L, f) * pbw_symmetrize(L, g))


class UeaBuilder(ExpressionBuilder[UeaElement]):
    def __init__(self, algebra: LieAlgebra):
        self.algebra = algebra
        self.index = {name: i for i, name in enumerate(algebra.uea_names)}

    def constant(self, value: Fraction) -> UeaElement:
        return UeaElement.constant(self.algebra, value)

    def symbol(self, name: str) -> UeaElement:
        if name in self.index:
            return UeaElement.generator(self.algebra, self.index[name])
        n = lambda_index(name)
        if n is not None:
            try:
                return UeaElement.constant(self.algebra, lambda_generator(n))
            except DomainError as e:
                raise ParseError(str(e)) from None
        raise ParseError(f"Unknown UEA generator {name!r}; expected one of {', '.join(self.index)}")


def parse_uea(L: LieAlgebra, text: str) -> UeaElement:
    """Parse e.g. "Y*X" (non-commutative, normal-ordered on the fly)"""
    return parse_expression(text, UeaBuilder(L))
