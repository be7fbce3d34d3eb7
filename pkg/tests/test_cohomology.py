import pytest

from hyperflat.cohomology import H1Class, h1_dim_via_corank, is_zero_class, nonzero_class, push_forward
from hyperflat.errors import ContractViolation, NoNonzeroClass
from hyperflat.literals import parse_divisor, parse_tails
from hyperflat.riemann_roch import h1


@pytest.fixture
def D(g2):
    return lambda t: parse_divisor(g2, t)


def cls(curve, over, tails):
    return H1Class(curve, over, parse_tails(curve, tails))


def test_normalisation(g2, D):
    c = cls(g2, D("(0,-1)"), "(0,-1): t^-1")
    assert c.is_empty() and is_zero_class(g2, c)[0]


def test_zero_with_witness(g2, D):
    ok, h = is_zero_class(g2, cls(g2, D("(0,-1)"), "(0,1): t^-1"))
    assert ok and h == g2.x.inverse()


def test_nonzero(g2, D):
    assert is_zero_class(g2, cls(g2, D("(0,-1)"), "(0,-1): t^-2")) == (False, None)


def test_h1_corank(g2, D):
    assert h1_dim_via_corank(g2, D("(0,-1)")) == 1
    assert h1_dim_via_corank(g2, D("2*inf")) == 1
    assert h1_dim_via_corank(g2, D("3*inf")) == 0


def test_nonzero_class(g2, D):
    c = nonzero_class(g2, D("(0,-1)"), 0)
    assert c == cls(g2, D("(0,-1)"), "(0,-1): t^-2")
    with pytest.raises(NoNonzeroClass):
        nonzero_class(g2, D("3*inf"), 0)
    for seed in range(5):
        assert not is_zero_class(g2, nonzero_class(g2, D("(0,-1)"), seed))[0]


def test_push_forward(g2, D):
    theta = nonzero_class(g2, D("(0,-1)"), 0)
    omega = push_forward(g2, theta, D("(0,1) + (0,-1)"))
    assert not is_zero_class(g2, omega)[0]
    zero = H1Class(g2, D("0"))
    assert push_forward(g2, zero, D("inf")).is_empty()
    t = cls(g2, D("0"), "(0,-1): t^-1")
    assert not t.is_empty() and push_forward(g2, t, D("(0,-1)")).is_empty()
    with pytest.raises(ContractViolation):
        push_forward(g2, theta, D("0"))


def test_linearity(g2, D):
    over = D("(0,-1)")
    a = cls(g2, over, "(0,-1): t^-2")
    b = cls(g2, over, "(0,1): t^-1; inf: t^-1")
    assert (a + b) + (-b) == a
    assert is_zero_class(g2, a * 0)[0]


def test_corank_matches_serre_dual(g2p):
    for text in ["0", "inf", "3*inf", "-2*inf", "5*inf"]:
        D = parse_divisor(g2p, text)
        assert h1_dim_via_corank(g2p, D) == h1(g2p, D)
