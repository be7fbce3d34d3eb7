from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperflat.curve import (
    INERT,
    RAMIFIED,
    HyperellipticCurve,
    canonical_divisor,
    divisor_of,
    expand_at,
    valuation,
)
from hyperflat.errors import ContractViolation, CurveValidationError
from hyperflat.exact_algebra import QQ, Poly, PrimeField
from hyperflat.literals import parse_divisor


@pytest.mark.parametrize(
    "field, f",
    [
        (QQ, [1, 0, 0, 1]),  # genus 1
        (QQ, [1, 0, 0, 0, 0, 0, 1]),  # even degree
        (QQ, [0, 0, 1, 0, 0, 1]),  # x^2 divides f
        (PrimeField(3), [1, 0, 0, 0, 0, 0]),  # zero leading term collapses the degree
    ],
)
def test_validation_rejects(field, f):
    with pytest.raises(CurveValidationError):
        HyperellipticCurve(field, f)


def test_hint_must_lie_on_curve():
    with pytest.raises(CurveValidationError):
        HyperellipticCurve(QQ, [1, 0, 0, 0, 0, 1], hints=[(1, 1)])


def test_places_above(g2):
    assert set(g2.places_above(QQ(0))) == {g2.point(0, 1), g2.point(0, -1)}
    (R,) = g2.places_above(QQ(-1))
    assert R.splitting == RAMIFIED
    (I,) = g2.places_above(QQ(2))
    assert I.splitting == INERT and I.degree == 2
    with pytest.raises(ContractViolation):
        g2.places_above(Poly(QQ, [0, 0, 1]))


def test_expansions(g2):
    x, y = g2.x, g2.y
    s = expand_at(g2, 1 / x, g2.point(0, -1), 3)
    assert s.valuation == -1 and s.coefficient(-1) == 1 and s.coefficient(0) == 0
    s = expand_at(g2, y, g2.point(0, 1), 11)
    assert [s.coefficient(k) for k in (0, 5, 10)] == [1, Fraction(1, 2), Fraction(-1, 8)]
    assert all(s.coefficient(k) == 0 for k in range(11) if k not in (0, 5, 10))
    s = expand_at(g2, x + 1, g2.point(-1, 0), 2)
    assert s.valuation == 2
    with pytest.raises(ContractViolation):
        expand_at(g2, g2.function(0), g2.infinity, 2)


def test_divisors(g2):
    D = lambda t: parse_divisor(g2, t)
    assert divisor_of(g2, g2.function(1)).is_zero()
    assert divisor_of(g2, g2.x) == D("(0,1) + (0,-1) - 2*inf")
    dy = divisor_of(g2, g2.y)
    assert dy == D("(-1,0) + [x^4 - x^3 + x^2 - x + 1; 0] - 5*inf")
    assert valuation(g2, g2.y, g2.infinity) == -5


def test_canonical(g2, g3):
    assert canonical_divisor(g2) == parse_divisor(g2, "2*inf")
    assert canonical_divisor(g3) == parse_divisor(g3, "4*inf")


polys = st.lists(st.integers(-4, 4), min_size=1, max_size=4)


@settings(max_examples=40, deadline=None)
@given(polys, polys, polys.filter(any))
def test_principal_divisors_have_degree_zero(a, b, c):
    curve = HyperellipticCurve(PrimeField(101), [3, 1, 0, 0, 0, 1])
    h = curve.function(Poly(curve.field, a), Poly(curve.field, b), Poly(curve.field, c))
    if h.is_zero():
        return
    D = divisor_of(curve, h)
    assert D.degree == 0
    for P, m in D.items():
        assert valuation(curve, h, P) == m


@settings(max_examples=30, deadline=None)
@given(polys.filter(any), polys)
def test_divisor_is_multiplicative(a, b):
    curve = HyperellipticCurve(QQ, [1, 0, 0, 0, 0, 1])
    f = curve.function(Poly(QQ, a), Poly(QQ, b))
    g = curve.function(Poly(QQ, b or [1]), Poly(QQ, a))
    if f.is_zero() or g.is_zero():
        return
    assert divisor_of(curve, f * g) == divisor_of(curve, f) + divisor_of(curve, g)
    assert divisor_of(curve, f.inverse()) == -divisor_of(curve, f)
