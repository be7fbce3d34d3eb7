import pytest

from hyperflat.cohomology import H1Class
from hyperflat.construction import assemble, build, decompose_canonical, dumps, split_divisor, verify
from hyperflat.divisor import Divisor
from hyperflat.errors import ContractViolation, NoValidSplit
from hyperflat.literals import format_tails, parse_divisor


def _passes(cert):
    return {c["check_id"]: c["pass"] for c in cert["checks"]}


def test_decompose_genus2(g2):
    P, D = decompose_canonical(g2, 0)
    assert P == g2.point(0, 1) and D == parse_divisor(g2, "(0,-1)")


def test_weierstrass_and_infinity_candidates_rejected(g2):
    # seeds that start the scan at infinity or (-1,0) still succeed elsewhere
    cands = g2.degree_one_places(200)
    for seed in range(len(cands)):
        P, D = decompose_canonical(g2, seed)
        assert P not in D and P != g2.infinity and P != g2.point(-1, 0)


def test_split_examples(g2, g3):
    DR = parse_divisor(g2, "(0,-1)")
    assert split_divisor(DR, 2) == (Divisor.zero(g2), DR)
    p1, p2, p3 = g3.degree_one_places(6)[1:4]
    D = Divisor(g3, {p1: 1, p2: 1, p3: 1})
    DQ, DRr = split_divisor(D, 3)
    first = D.support()[0]
    assert DQ == Divisor.place(g3, first) and DRr == D - DQ
    cubic = g3.places_above(_irreducible_cubic(g3))[0]
    with pytest.raises(NoValidSplit):
        split_divisor(Divisor.place(g3, cubic), 3)
    with pytest.raises(ContractViolation):
        split_divisor(Divisor.place(g3, p1), 3)


def _irreducible_cubic(curve):
    from hyperflat.exact_algebra import Poly, is_irreducible

    F = curve.field
    for c in range(1, 50):
        p = Poly(F, [c, 0, 0, 1])
        if is_irreducible(p) and curve.places_above(p)[0].degree == 3:
            return p
    raise AssertionError("no cubic with places of degree 3 found")


def test_genus2_all_pass(g2):
    data = build(g2, 0)
    assert format_tails(g2, data.theta.tails) == "(0,-1): t^-2"
    assert data.D_Q.is_zero()
    cert = verify(data)
    assert cert["overall_pass"] and all(_passes(cert).values())
    assert list(cert) == ["curve", "seed", "version", "overall_pass", "semantics", "data", "checks"]
    assert [c["check_id"] for c in cert["checks"]] == [
        "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8a", "C8b", "C9", "C10", "C11", "C12"
    ]


def test_zero_theta_tamper(g2):
    d = build(g2, 0)
    bad = assemble(g2, 0, d.P, d.D, d.D_Q, d.D_R, H1Class(g2, d.D_Q + d.D_R))
    res = _passes(verify(bad))
    assert not res["C4"] and not res["C8b"] and not res["C10"]
    assert res["C8a"] and res["C9"]


def test_serialisation_is_deterministic(g2):
    assert dumps(verify(build(g2, 0))) == dumps(verify(build(g2, 0)))


def test_seeds_vary_but_pass(g2):
    for seed in (1, 2, 3):
        assert verify(build(g2, seed))["overall_pass"]
