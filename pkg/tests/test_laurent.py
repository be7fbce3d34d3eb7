from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hyperflat.exact_algebra import QQ
from hyperflat.laurent import LaurentSeries, newton_lift, ps_inv, ps_mul

coeffs = st.lists(st.integers(-6, 6), min_size=1, max_size=8)


@settings(max_examples=50, deadline=None)
@given(coeffs.filter(lambda c: c[0] != 0))
def test_power_series_inverse(c):
    a = [Fraction(v) for v in c]
    n = len(a)
    prod = ps_mul(a, ps_inv(a, n, QQ.one), n, QQ.zero)
    assert prod == [QQ.one] + [QQ.zero] * (n - 1)


def test_newton_square_root():
    # z^2 = 1 + t, z(0) = 1: binomial series 1 + t/2 - t^2/8 + t^3/16
    def residual(z, m):
        r = ps_mul(z, z, m, QQ.zero)
        r[0] -= 1
        if m > 1:
            r[1] -= 1
        return r, ps_mul([QQ(2)], z, m, QQ.zero)

    z = newton_lift(QQ, QQ.one, residual, 4)
    assert z[:4] == [1, Fraction(1, 2), Fraction(-1, 8), Fraction(1, 16)]


def test_laurent_arithmetic():
    a = LaurentSeries(QQ, -2, [QQ(1), QQ(3)], None)  # t^-2 + 3 t^-1 + O(1)
    b = a.inverse()
    assert b.valuation == 2
    prod = a * b
    assert prod.valuation == 0 and prod.coefficient(0) == 1
    assert (a - a).coefficient(-2) == 0
