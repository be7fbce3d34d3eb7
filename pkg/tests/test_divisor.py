import pytest

from hyperflat.curve import HyperellipticCurve, divisor_of
from hyperflat.divisor import Divisor, is_linearly_equivalent
from hyperflat.errors import ContractViolation
from hyperflat.exact_algebra import QQ
from hyperflat.literals import parse_divisor


def test_arithmetic(g2):
    D = lambda t: parse_divisor(g2, t)
    a = D("(0,1) + 2*inf")
    assert a.degree == 3 and a.is_effective()
    assert (a - a).is_zero()
    assert D("[x - 2; inert]").degree == 2
    assert D("(0,1)") <= a and not a <= D("(0,1)")
    assert a.support() == sorted(a.support(), key=lambda P: P.key())


def test_mixing_curves_rejected(g2):
    other = HyperellipticCurve(QQ, [2, 0, 0, 0, 0, 1])
    with pytest.raises(ContractViolation):
        Divisor.zero(g2) + Divisor.zero(other)


def test_linear_equivalence(g2):
    D = lambda t: parse_divisor(g2, t)
    ok, h = is_linearly_equivalent(D("2*inf"), D("(0,1) + (0,-1)"))
    assert ok and divisor_of(g2, h) == D("(0,1) + (0,-1) - 2*inf")
    assert is_linearly_equivalent(D("inf"), D("(0,1)")) == (False, None)
    ok, h = is_linearly_equivalent(D("(0,1) - inf"), D("(0,1) - inf"))
    assert ok and h == g2.function(1)
