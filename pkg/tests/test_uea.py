import logging
import os
import pickle

import pytest
from hypothesis import given, settings

from errors import DimensionMismatchError, ParseError
from sym import Poly, parse_poly
from uea import (
    RewriteCache,
    UeaElement,
    get_rewrite_cache,
    gutt_product,
    parse_uea,
    pbw_inverse,
    pbw_symmetrize,
    reset_rewrite_caches,
    save_rewrite_caches,
)
from lie import load_lie_algebra
from strategies import monomials

SL2 = load_lie_algebra("sl2")


def test_normal_ordering(heisenberg3, aff1):
    assert str(parse_uea(heisenberg3, "Y*X")) == "X*Y - Z"
    assert str(parse_uea(aff1, "Y*X")) == "X*Y - Y"
    assert parse_uea(aff1, "Y*X*X") == parse_uea(aff1, "X^2*Y - 2*X*Y + Y")


def test_symmetrization(heisenberg3):
    names = heisenberg3.basis_names
    assert str(pbw_symmetrize(heisenberg3, parse_poly("x*y", names))) == "X*Y - 1/2*Z"
    assert pbw_inverse(parse_uea(heisenberg3, "X*Y")) == parse_poly("x*y + 1/2*z", names)
    assert pbw_symmetrize(heisenberg3, parse_poly("1", names)) == UeaElement.constant(heisenberg3, 1)


def test_gutt_product(heisenberg3):
    names = heisenberg3.basis_names
    assert gutt_product(heisenberg3, parse_poly("x", names), parse_poly("y", names)) == parse_poly("x*y + 1/2*z", names)
    assert gutt_product(heisenberg3, parse_poly("y", names), parse_poly("x", names)) == parse_poly("x*y - 1/2*z", names)


@given(monomials(SL2.basis_names, 4))
@settings(max_examples=40, deadline=None)
def test_pbw_round_trip_sl2(f):
    assert pbw_inverse(pbw_symmetrize(SL2, f)) == f


@given(monomials(SL2.basis_names, 3), monomials(SL2.basis_names, 3), monomials(SL2.basis_names, 2))
@settings(max_examples=30, deadline=None)
def test_uea_product_associative(f, g, h):
    u, v, w = (UeaElement(SL2, dict(p.terms())) for p in (f, g, h))
    assert (u * v) * w == u * (v * w)


def test_commutator_is_bracket(sl2):
    E, F, H = (parse_uea(sl2, name) for name in ("E", "F", "H"))
    assert E * F - F * E == H
    assert H * E - E * H == E * 2
    assert H * F - F * H == F * -2


def test_dimension_checks(heisenberg3):
    with pytest.raises(DimensionMismatchError):
        pbw_symmetrize(heisenberg3, Poly.variable(2, 0))
    with pytest.raises(DimensionMismatchError):
        UeaElement(heisenberg3, {(1, 0): 1})
    with pytest.raises(ParseError):
        parse_uea(heisenberg3, "W*X")


def test_cache_counts_and_reset(aff1):
    reset_rewrite_caches()
    parse_uea(aff1, "Y^2*X^2")
    cache = get_rewrite_cache(aff1)
    assert cache.size() > 0
    stats = cache.get_stats()
    assert stats["misses"] > 0
    reset_rewrite_caches()
    assert get_rewrite_cache(aff1).size() == 0


def test_cache_persistence(aff1, tmp_path):
    reset_rewrite_caches()
    pbw_symmetrize(aff1, parse_poly("x^2*y^2", aff1.basis_names))
    assert save_rewrite_caches(str(tmp_path)) == 1
    original = get_rewrite_cache(aff1)
    path = original.path(str(tmp_path))
    assert os.path.basename(path) == f"uea-{aff1.digest()}.pkl"

    restored = RewriteCache(aff1.digest())
    assert restored.load(str(tmp_path))
    assert restored.products == original.products
    assert restored.symmetrized == original.symmetrized


def test_cache_with_wrong_digest_is_ignored(aff1, tmp_path, caplog):
    cache = RewriteCache(aff1.digest())
    with open(cache.path(str(tmp_path)), "wb") as f:
        pickle.dump({"digest": "something-else", "products": {}, "symmetrized": {}}, f)
    with caplog.at_level(logging.WARNING):
        assert not cache.load(str(tmp_path))
    assert "digest mismatch" in caplog.text


def test_missing_cache_file(aff1, tmp_path):
    assert not RewriteCache(aff1.digest()).load(str(tmp_path))
