from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yperiod.algebra import (
    Polynomial,
    RationalPoint,
    TropicalMonomial,
    evaluate,
    poly_div_exact,
    poly_mul,
    trop_one_plus,
)
from yperiod.errors import DivisibilityError, InputError


def P(nvars, text):
    return Polynomial.parse(nvars, text)


# -- tropical monomials -------------------------------------------------------

def test_one_plus_positive_exponent_absorbed():
    m = TropicalMonomial.variable(2, 0)
    assert trop_one_plus(m) == TropicalMonomial.one(2)


def test_one_plus_negative_exponent_kept():
    m = TropicalMonomial.variable(2, 0).inverse()
    assert trop_one_plus(m) == m


def test_one_plus_mixed_signs():
    m = TropicalMonomial((1, -1))
    assert trop_one_plus(m) == TropicalMonomial((0, -1))


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_one_plus_divides_one_and_m(exps):
    m = TropicalMonomial(tuple(exps))
    o = trop_one_plus(m)
    assert all(e <= 0 for e in o.exponents)
    assert all(a <= b for a, b in zip(o.exponents, m.exponents))


@given(
    st.lists(st.integers(-4, 4), min_size=3, max_size=3),
    st.lists(st.integers(-4, 4), min_size=3, max_size=3),
)
def test_tropical_product_is_exponent_sum(e1, e2):
    a, b = TropicalMonomial(tuple(e1)), TropicalMonomial(tuple(e2))
    assert (a * b).exponents == tuple(x + y for x, y in zip(e1, e2))
    assert a * b == b * a
    assert (a * a.inverse()).is_one()


# -- polynomial arithmetic ----------------------------------------------------

def test_product_square_of_binomial():
    p = P(1, "1 + y1")
    assert poly_mul(p, p) == P(1, "1 + 2*y1 + y1^2")


def test_product_with_one():
    p = P(2, "1 + 3*y1*y2")
    assert poly_mul(p, Polynomial.one(2)) == p


def test_product_two_variables():
    assert poly_mul(P(2, "1 + y1"), P(2, "1 + y2")) == P(2, "1 + y1 + y2 + y1*y2")


def test_exact_division_examples():
    assert poly_div_exact(P(1, "1 + 2*y1 + y1^2"), P(1, "1 + y1")) == P(1, "1 + y1")
    p = P(2, "1 + y1 + y2^2")
    assert poly_div_exact(p, Polynomial.one(2)) == p


def test_exact_division_failure():
    with pytest.raises(DivisibilityError):
        poly_div_exact(P(1, "1 + y1^2"), P(1, "1 + y1"))


def test_evaluate_examples():
    assert evaluate(P(1, "1 + y1"), [Fraction(1, 2)]) == Fraction(3, 2)
    assert evaluate(Polynomial.one(3), [Fraction(7), Fraction(1), Fraction(2)]) == 1
    assert evaluate(P(1, "1 + 2*y1 + y1^2"), [Fraction(1)]) == 4


def test_evaluate_dimension_mismatch():
    with pytest.raises(InputError):
        P(2, "1 + y1").evaluate([Fraction(1)])


small_polys = st.builds(
    lambda terms: Polynomial(3, terms),
    st.dictionaries(
        st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
        st.integers(-9, 9),
        max_size=6,
    ),
)


@given(small_polys, small_polys, small_polys)
@settings(max_examples=200)
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p + q == q + p


@given(small_polys, small_polys)
@settings(max_examples=200)
def test_division_round_trip(p, q):
    if q.is_zero():
        return
    assert poly_div_exact(poly_mul(p, q), q) == p


@given(small_polys, small_polys, st.lists(st.integers(1, 9), min_size=3, max_size=3))
@settings(max_examples=200)
def test_evaluate_is_multiplicative(p, q, nums):
    point = [Fraction(x, 3) for x in nums]
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
    assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)


@given(small_polys)
@settings(max_examples=200)
def test_text_round_trip(p):
    assert Polynomial.parse(3, p.text()) == p


def test_text_canonical_order():
    p = Polynomial(2, {(0, 0): 1, (1, 0): 2, (2, 0): 1, (0, 1): 1})
    assert p.text() == "1 + 2*y1 + y2 + y1^2"


def test_parse_rejects_bad_input():
    with pytest.raises(InputError):
        Polynomial.parse(1, "1 + z3")
    with pytest.raises(InputError):
        Polynomial.parse(1, "1 + y2")


def test_polynomial_rejects_negative_exponents():
    with pytest.raises(InputError):
        Polynomial(1, {(-1,): 2})


# -- rational points ----------------------------------------------------------

def test_rational_point_requires_positivity():
    with pytest.raises(InputError):
        RationalPoint([Fraction(1), Fraction(0)])
    pt = RationalPoint([Fraction(1, 3), 2])
    assert len(pt) == 2 and pt[1] == 2


def test_rational_point_random_is_reproducible():
    import random

    a = RationalPoint.random(4, random.Random(7))
    b = RationalPoint.random(4, random.Random(7))
    assert tuple(a) == tuple(b)
