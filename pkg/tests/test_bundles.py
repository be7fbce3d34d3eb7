import random

import pytest

from bundle_gen import bundles, random_divisor, random_ext
from hyperflat.bundles import (
    FLAT,
    NOT_FLAT,
    UNKNOWN,
    DirectSum,
    Ext,
    Line,
    TraceError,
    determinant,
    degree,
    is_flat,
    is_split,
    rank,
    replay_trace,
)
from hyperflat.cohomology import H1Class, nonzero_class, push_forward
from hyperflat.divisor import is_linearly_equivalent
from hyperflat.errors import ContractViolation
from hyperflat.literals import parse_divisor


@pytest.fixture
def inst(g2):
    D = lambda t: parse_divisor(g2, t)
    P, DQ, DR = D("(0,1)"), D("0"), D("(0,-1)")
    theta = nonzero_class(g2, DQ + DR, 0)
    omega = push_forward(g2, theta, P + DQ + DR)
    V = Ext(theta, Line(DQ), Line(-DR))
    E = DirectSum([Line(P), V])
    Q = Ext(omega, Line(P + DQ), Line(-DR))
    return dict(P=P, DQ=DQ, DR=DR, V=V, E=E, Q=Q, D=D)


def test_invariants(g2, inst):
    assert (rank(inst["E"]), degree(inst["E"])) == (3, 0)
    assert degree(inst["V"]) == -1
    detQ = determinant(inst["Q"])
    assert detQ.degree == 0
    assert is_linearly_equivalent(detQ, inst["P"] + inst["DQ"] - inst["DR"])[0]


def test_is_split(g2, inst):
    assert not is_split(inst["V"]) and not is_split(inst["Q"])
    over = inst["DQ"] + inst["DR"]
    assert is_split(Ext(H1Class(g2, over), Line(inst["DQ"]), Line(-inst["DR"])))


def test_verdict_examples(g2, inst):
    D = inst["D"]
    v = is_flat(Line(D("(0,1) - inf")))
    assert v.verdict == FLAT and v.trace[-1].rule == "R2"
    v = is_flat(inst["E"])
    assert v.verdict == NOT_FLAT and [s.rule for s in v.trace][-1] == "R3"
    assert v.trace[-1].facts["summand"] == "root.0"
    v = is_flat(inst["Q"])
    assert v.verdict == FLAT and v.trace[-1].rule == "R6"
    P = inst["P"]
    nz = nonzero_class(g2, -P - P, 0)
    v = is_flat(Ext(nz, Line(-P), Line(P)))
    assert v.verdict == UNKNOWN and v.reason == "no rule applies"


def test_ext_shape_is_checked(g2, inst):
    with pytest.raises(ContractViolation):
        Ext(H1Class(g2, inst["DR"]), Line(inst["DR"]), Line(-inst["DR"]))
    with pytest.raises(ContractViolation):
        Ext(H1Class(g2, inst["DR"]), inst["V"], Line(inst["DQ"]))


def test_tampered_trace_is_rejected(g2, inst):
    v = is_flat(inst["E"])
    bad = type(v)(v.verdict, v.trace[1:], v.reason)
    with pytest.raises(TraceError):
        replay_trace(inst["E"], bad)


def test_random_properties(g2):
    for b in bundles(g2, 7, 40):
        v = is_flat(b)
        if degree(b) != 0:
            assert v.verdict == NOT_FLAT
        assert replay_trace(b, v) == v.verdict
        assert v.trace or v.verdict == UNKNOWN


def test_split_reduction(g2):
    rng = random.Random(3)
    places = g2.degree_one_places(6)
    for _ in range(20):
        e = random_ext(g2, rng, places, zero=True)
        assert is_flat(e).verdict == is_flat(DirectSum([e.sub, e.quot])).verdict
