"""Formal divisors on a curve and linear equivalence."""

from __future__ import annotations

from .errors import ContractViolation


class Divisor:
    """Finite formal sum of places with nonzero integer multiplicities."""

    __slots__ = ("curve", "_mult")

    def __init__(self, curve, mult=None):
        self.curve = curve
        self._mult = {P: int(m) for P, m in (mult or {}).items() if m}

    @classmethod
    def zero(cls, curve):
        return cls(curve)

    @classmethod
    def place(cls, curve, P, m=1):
        return cls(curve, {P: m})

    def _check(self, other):
        if not isinstance(other, Divisor):
            raise ContractViolation(f"expected a Divisor, got {type(other).__name__}")
        if other.curve != self.curve:
            raise ContractViolation("divisors live on different curves")
        return other

    def __getitem__(self, P) -> int:
        return self._mult.get(P, 0)

    def items(self):
        return sorted(self._mult.items(), key=lambda pm: pm[0].key())

    def support(self):
        return [P for P, _ in self.items()]

    def __contains__(self, P):
        return P in self._mult

    @property
    def degree(self) -> int:
        return sum(m * P.degree for P, m in self._mult.items())

    def is_effective(self) -> bool:
        return all(m > 0 for m in self._mult.values())

    def is_zero(self) -> bool:
        return not self._mult

    def __add__(self, other):
        other = self._check(other)
        out = dict(self._mult)
        for P, m in other._mult.items():
            out[P] = out.get(P, 0) + m
        return Divisor(self.curve, out)

    def __neg__(self):
        return Divisor(self.curve, {P: -m for P, m in self._mult.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, k: int):
        return Divisor(self.curve, {P: k * m for P, m in self._mult.items()})

    __rmul__ = __mul__

    def __le__(self, other):
        return (self._check(other) - self).is_effective() or self == other

    def __ge__(self, other):
        return self._check(other) <= self

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.curve == other.curve and self._mult == other._mult

    def __hash__(self):
        return hash(tuple(self.items()))

    def format(self):
        from .literals import format_divisor

        return format_divisor(self)

    def __repr__(self):
        return f"Divisor({self.format()})"

    __str__ = format


def degree(D: Divisor) -> int:
    return D.degree


def support(D: Divisor):
    return D.support()


def is_effective(D: Divisor) -> bool:
    return D.is_effective()


def is_linearly_equivalent(D1: Divisor, D2: Divisor):
    """Return ``(True, h)`` with ``div(h) = D2 - D1``, or ``(False, None)``.

    With equal degrees, a nonzero ``h`` in ``L(D1 - D2)`` has an effective
    degree-zero divisor ``div(h) + D1 - D2``, which must then be zero.
    """
    from .curve import divisor_of
    from .riemann_roch import rr_basis

    D1._check(D2)
    curve = D1.curve
    if D1 == D2:
        return True, curve.function(1)
    if D1.degree != D2.degree:
        return False, None
    space = rr_basis(curve, D1 - D2)
    if not space.basis:
        return False, None
    h = space.basis[0]
    if divisor_of(curve, h) != D2 - D1:
        raise AssertionError("Riemann-Roch witness has the wrong divisor")
    return True, h
