from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperflat.errors import ContractViolation
from hyperflat.exact_algebra import (
    QQ,
    Poly,
    PrimeField,
    ResidueField,
    factor,
    is_irreducible,
    is_squarefree,
    kernel_basis,
    mat_vec,
    rank,
    solve_linear,
)

F101 = PrimeField(101)


def test_solve_identity():
    sol = solve_linear([[1, 0], [0, 1]], [3, 5], QQ)
    assert sol.solution == [3, 5] and sol.kernel == []


def test_solve_inconsistent():
    assert solve_linear([[1, 1], [2, 2]], [1, 3], QQ).solution is None


def test_solve_rational():
    assert solve_linear([[1, 2], [3, 4]], [5, 6], QQ).solution == [-4, Fraction(9, 2)]


def test_solve_dimension_mismatch():
    with pytest.raises(ContractViolation):
        solve_linear([[1, 2], [3, 4]], [5], QQ)


def test_squarefree_examples():
    x2 = Poly(QQ, [0, 0, 1])
    assert not is_squarefree(x2)
    assert is_squarefree(Poly(QQ, [1, 0, 0, 0, 0, 1]))
    assert not is_squarefree(Poly(QQ, [-1, 1]) ** 2 * Poly(QQ, [1, 1]))
    with pytest.raises(ContractViolation):
        is_squarefree(Poly.zero(QQ))


def test_factor_x5_plus_1():
    facs = factor(Poly(QQ, [1, 0, 0, 0, 0, 1]))
    assert sorted(p.degree for p, _ in facs) == [1, 4]
    assert is_irreducible(Poly(QQ, [1, -1, 1, -1, 1]))


def test_prime_field_rejects_composite_and_two():
    with pytest.raises(ContractViolation):
        PrimeField(15)
    with pytest.raises(ContractViolation):
        PrimeField(2)


def test_residue_field_sqrt_finite():
    K = ResidueField(F101, Poly(F101, [2, 0, 1]), "a")  # x^2 + 2 is irreducible mod 101
    a = K.gen
    r = K.sqrt(a * a * 7 + 3)
    assert r is None or r * r == a * a * 7 + 3
    assert K.sqrt(a * a) in (a, -a)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=4))
def test_kernel_is_kernel(rows):
    ker = kernel_basis(rows, 3, QQ)
    assert len(ker) + rank(rows, QQ) == 3
    for v in ker:
        assert all(x == 0 for x in mat_vec(rows, v, QQ))


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-20, 20), min_size=1, max_size=6),
    st.lists(st.integers(-20, 20), min_size=1, max_size=4).filter(any),
)
def test_poly_divmod(a, b):
    A, B = Poly(F101, a), Poly(F101, b)
    q, r = divmod(A, B)
    assert q * B + r == A
    assert r.degree < B.degree
