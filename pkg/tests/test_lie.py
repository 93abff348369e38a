import json
from fractions import Fraction

import pytest

from builtin_algebras import BUILTIN_ALGEBRAS
from errors import AntisymmetryViolation, DimensionMismatchError, JacobiViolation, LieAlgebraError, ParseError
from lie import (
    PoissonBivector,
    adjoint_matrix,
    is_nilpotent,
    is_unimodular,
    lie_algebra_from_dict,
    load_lie_algebra,
    poisson_bracket,
    trace_polynomial,
)
from sym import Poly, parse_poly
from conftest import data_path


@pytest.mark.parametrize("name", sorted(BUILTIN_ALGEBRAS))
def test_builtins_are_valid(name):
    L = load_lie_algebra(name)
    assert L.name == name
    assert L.dim == len(L.basis_names)


def test_sl2_traces(sl2):
    assert trace_polynomial(sl2, 1).poly.is_zero()
    assert trace_polynomial(sl2, 2).poly == parse_poly("8*h^2 + 8*e*f", ("e", "f", "h"))
    assert trace_polynomial(sl2, 3).poly.is_zero()
    assert is_unimodular(sl2)
    assert not is_nilpotent(sl2)


def test_aff1_traces(aff1):
    for n in range(1, 5):
        assert trace_polynomial(aff1, n).poly == Poly.monomial((n, 0), 1)
    assert not is_unimodular(aff1)
    assert str(trace_polynomial(aff1, 1).poly) == "x*"


def test_t2_traces(t2):
    names = ("a", "b", "c")
    for n in range(1, 4):
        assert trace_polynomial(t2, n).poly == parse_poly(f"(a - c)^{n}", names)


def test_nilpotent(heisenberg3, abelian3, aff1):
    assert is_nilpotent(heisenberg3)
    assert is_nilpotent(abelian3)
    assert not is_nilpotent(aff1)


def test_adjoint_matrix(aff1):
    assert adjoint_matrix(aff1, [1, 0]) == [[0, 0], [0, 1]]
    assert adjoint_matrix(aff1, [0, 1]) == [[0, 0], [-1, 0]]


def test_jacobi_violation_witness():
    with pytest.raises(JacobiViolation) as info:
        load_lie_algebra(data_path("algebras", "jacobi_broken.json"))
    assert info.value.witness == (1, 2, 3, 1)
    assert isinstance(info.value, ValueError)


def test_antisymmetry_violation_witness():
    with pytest.raises(AntisymmetryViolation) as info:
        load_lie_algebra(data_path("algebras", "antisymmetry_broken.json"))
    assert info.value.witness == (1, 2, 2)
    assert isinstance(info.value, LieAlgebraError)


def test_full_table_input():
    so3 = load_lie_algebra(data_path("algebras", "so3_table.json"))
    assert so3.name == "so3"
    assert so3.structure_constant(2, 0, 1) == 1
    assert is_unimodular(so3)
    assert trace_polynomial(so3, 2).poly == parse_poly("-2*a^2 - 2*b^2 - 2*c^2", ("a", "b", "c"))


def test_sl2_file_matches_builtin(sl2):
    from_file = load_lie_algebra(data_path("algebras", "sl2.json"))
    assert from_file.digest() == sl2.digest()


def test_malformed_descriptions():
    with pytest.raises(DimensionMismatchError):
        lie_algebra_from_dict({"dim": 3, "basis": ["x", "y"]})
    with pytest.raises(DimensionMismatchError):
        lie_algebra_from_dict({"dim": 2, "basis": ["x", "y"], "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "c": "1"}]}]})
    with pytest.raises(ParseError):
        lie_algebra_from_dict({"dim": 2, "basis": ["x", "y"], "brackets": [{"i": 2, "j": 1, "terms": []}]})
    with pytest.raises(ParseError):
        lie_algebra_from_dict({"dim": 2, "basis": ["x", "y"], "brackets": [{"i": 1, "j": 2, "terms": [{"k": 2, "c": "1/0"}]}]})
    with pytest.raises(ParseError):
        lie_algebra_from_dict({"dim": 2, "basis": ["x", "l3"]})
    with pytest.raises(ParseError):
        load_lie_algebra("no-such-algebra")


def test_unreadable_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        load_lie_algebra(str(path))


def test_digest_ignores_name(sl2):
    renamed = lie_algebra_from_dict(BUILTIN_ALGEBRAS["sl2"], name="other")
    assert renamed.digest() == sl2.digest()
    assert lie_algebra_from_dict(sl2.to_json()).digest() == sl2.digest()
    assert json.loads(json.dumps(sl2.to_json()))["basis"] == ["e", "f", "h"]


def test_poisson_bracket(heisenberg3, aff1):
    names = heisenberg3.basis_names
    assert poisson_bracket(heisenberg3, parse_poly("x", names), parse_poly("y", names)) == parse_poly("z", names)
    assert poisson_bracket(heisenberg3, parse_poly("x^2", names), parse_poly("y", names)) == parse_poly("2*x*z", names)
    bivector = PoissonBivector(aff1)
    assert bivector.component(0, 1) == parse_poly("y", aff1.basis_names)
    assert bivector.component(1, 0) == parse_poly("-y", aff1.basis_names)
    x, y = parse_poly("x", aff1.basis_names), parse_poly("y", aff1.basis_names)
    assert bivector(y, x) == -y


def test_bracket_of_vectors(sl2):
    assert sl2.bracket([1, 0, 0], [0, 1, 0]) == [Fraction(0), Fraction(0), Fraction(1)]
