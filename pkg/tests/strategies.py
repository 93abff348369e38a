"""
Hypothesis strategies for coefficients and polynomials.
"""
from fractions import Fraction

from hypothesis import strategies as st

from ring import Coefficient
from sym import Poly

# lambda monomials of weight <= 8
LAMBDA_MONOMIALS = [(), ((3, 1),), ((5, 1),), ((3, 2),), ((3, 1), (5, 1))]

rationals = st.fractions(min_value=Fraction(-10), max_value=Fraction(10), max_denominator=12)


def coefficients(max_terms: int = 3):
    return st.dictionaries(st.sampled_from(LAMBDA_MONOMIALS), rationals, max_size=max_terms).map(Coefficient)


def exponents(dim: int, max_degree: int):
    return st.lists(st.integers(0, max_degree), min_size=dim, max_size=dim).filter(
        lambda e: sum(e) <= max_degree
    ).map(tuple)


def polys(names, max_degree: int = 3, max_terms: int = 4, rational_only: bool = True):
    values = rationals if rational_only else coefficients(2)
    return st.dictionaries(exponents(len(names), max_degree), values, max_size=max_terms).map(
        lambda terms: Poly(len(names), terms, names)
    )


def monomials(names, max_degree: int):
    return exponents(len(names), max_degree).map(lambda e: Poly.monomial(e, 1, names))
