"""Truncated power and Laurent series over an exact field.

Power series are plain lists ``[c0, c1, ...]`` meaning ``sum c_i t^i + O(t^n)``
with ``n = len``. :class:`LaurentSeries` wraps one with a valuation offset.
"""

from __future__ import annotations

from .errors import ContractViolation


def ps_pad(a, n, zero):
    return list(a[:n]) + [zero] * (n - len(a))


def ps_add(a, b, n, zero):
    a, b = ps_pad(a, n, zero), ps_pad(b, n, zero)
    return [x + y for x, y in zip(a, b)]


def ps_sub(a, b, n, zero):
    a, b = ps_pad(a, n, zero), ps_pad(b, n, zero)
    return [x - y for x, y in zip(a, b)]


def ps_mul(a, b, n, zero):
    out = [zero] * n
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        for j in range(min(len(b), n - i)):
            y = b[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def ps_scale(a, c):
    return [x * c for x in a]


def ps_inv(a, n, one):
    if not a or not a[0]:
        raise ZeroDivisionError("power series with zero constant term is not invertible")
    zero = a[0] - a[0]
    inv0 = one / a[0]
    out = [inv0] + [zero] * (n - 1)
    for k in range(1, n):
        s = zero
        for j in range(1, min(k, len(a) - 1) + 1):
            if a[j]:
                s = s + a[j] * out[k - j]
        out[k] = -s * inv0
    return out


def ps_shift(a, k, zero):
    """Multiply by ``t^k`` (k >= 0), keeping the same absolute precision."""
    return ([zero] * k + list(a))[: len(a)]


def newton_lift(field, z0, residual, n):
    """Solve ``F(Z) = 0`` to precision ``n`` from a simple root ``z0`` mod t.

    ``residual(Z, m)`` returns ``(F(Z), F'(Z))`` to precision ``m``.
    """
    zero = field.zero
    z = [z0]
    m = 1
    while m < n:
        m = min(2 * m, n)
        z = ps_pad(z, m, zero)
        fz, dfz = residual(z, m)
        z = ps_sub(z, ps_mul(fz, ps_inv(dfz, m, field.one), m, zero), m, zero)
    return z[:n]


class LaurentSeries:
    """``t^valuation * (c0 + c1 t + ...) + O(t^precision)``.

    Leading coefficients may be zero on intermediate results; call
    :meth:`normalized` to strip them.
    """

    __slots__ = ("field", "valuation", "coeffs", "place")

    def __init__(self, field, valuation: int, coeffs, place=None):
        self.field = field
        self.valuation = valuation
        self.coeffs = tuple(coeffs)
        self.place = place

    @property
    def precision(self) -> int:
        return self.valuation + len(self.coeffs)

    def coefficient(self, k: int):
        if k >= self.precision:
            raise ContractViolation(f"coefficient t^{k} is beyond the precision O(t^{self.precision})")
        i = k - self.valuation
        return self.coeffs[i] if i >= 0 else self.field.zero

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return LaurentSeries(self.field, self.valuation, [c * other for c in self.coeffs], self.place)
        n = min(len(self.coeffs), len(other.coeffs))
        return LaurentSeries(
            self.field,
            self.valuation + other.valuation,
            ps_mul(self.coeffs, other.coeffs, n, self.field.zero),
            self.place,
        )

    __rmul__ = __mul__

    def __add__(self, other):
        v = min(self.valuation, other.valuation)
        prec = min(self.precision, other.precision)
        out = [self.field.zero] * max(prec - v, 0)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                k = s.valuation + i - v
                if k < len(out):
                    out[k] = out[k] + c
        return LaurentSeries(self.field, v, out, self.place)

    def __neg__(self):
        return LaurentSeries(self.field, self.valuation, [-c for c in self.coeffs], self.place)

    def __sub__(self, other):
        return self + (-other)

    def normalized(self):
        """Strip leading zeros; raises if every known coefficient vanishes."""
        for i, c in enumerate(self.coeffs):
            if c:
                return LaurentSeries(self.field, self.valuation + i, self.coeffs[i:], self.place)
        raise ContractViolation("series vanishes to the available precision")

    def inverse(self):
        s = self.normalized()
        return LaurentSeries(self.field, -s.valuation, ps_inv(list(s.coeffs), len(s.coeffs), self.field.one), self.place)

    def truncate(self, precision: int):
        keep = max(precision - self.valuation, 0)
        if keep > len(self.coeffs):
            raise ContractViolation("cannot truncate beyond the known precision")
        return LaurentSeries(self.field, self.valuation, self.coeffs[:keep], self.place)

    def is_zero_to_precision(self):
        return not any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if self.precision != other.precision:
            return False
        lo = min(self.valuation, other.valuation)
        return all(self.coefficient(k) == other.coefficient(k) for k in range(lo, self.precision))

    __hash__ = None

    def format(self, var="t"):
        from .exact_algebra import _format_coeff

        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            k = self.valuation + i
            s = _format_coeff(self.field, c)
            if k == 0:
                terms.append(s)
            else:
                mono = f"{var}^{k}" if k != 1 else var
                terms.append(mono if s == "1" else (f"-{mono}" if s == "-1" else f"({s})*{mono}"))
        terms.append(f"O({var}^{self.precision})")
        return " + ".join(terms)

    def __repr__(self):
        return f"LaurentSeries({self.format()})"
