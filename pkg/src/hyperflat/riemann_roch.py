"""Riemann-Roch spaces ``L(D)`` and the dimensions ``h0``, ``h1``."""

from __future__ import annotations

from dataclasses import dataclass

from .curve import FunctionElement, canonical_divisor, local_expansion
from .divisor import Divisor
from .exact_algebra import Poly, kernel_basis


@dataclass(frozen=True)
class RRSpace:
    divisor: Divisor
    basis: tuple

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _denominator(curve, D: Divisor) -> Poly:
    """Smallest ``c(x)`` clearing every finite pole that ``L(D)`` allows."""
    need = {}
    for P, m in D.items():
        if P.is_infinity or m <= 0:
            continue
        k = -(-m // P.ramification)
        need[P.p] = max(need.get(P.p, 0), k)
    c = Poly.const(curve.field, curve.field.one)
    for p in sorted(need, key=Poly.key):
        c = c * p ** need[p]
    return c


def ansatz(curve, D: Divisor):
    """Candidate functions ``x^i / c`` and ``x^j y / c`` with no excess pole at infinity.

    Distinct monomials have distinct valuations at infinity (``-2i`` versus
    ``-2j - 2g - 1``), so the pole bound there reduces to degree bounds and
    needs no linear conditions.
    """
    c = _denominator(curve, D)
    budget = D[curve.infinity] + 2 * c.degree
    g = curve.genus
    field = curve.field
    out = []
    for i in range(budget // 2 + 1):
        out.append(FunctionElement(curve, Poly.monomial(field, i), Poly.zero(field), c))
    j = 0
    while 2 * j + 2 * g + 1 <= budget:
        out.append(FunctionElement(curve, Poly.zero(field), Poly.monomial(field, j), c))
        j += 1
    return c, out


def condition_places(curve, D: Divisor):
    """Finite places where membership in ``L(D)`` is not automatic for the ansatz.

    These are the places over every prime below ``supp(D)``; everywhere else
    the ansatz numerators are integral and the denominator is a unit.
    """
    places = set()
    for P, _ in D.items():
        if not P.is_infinity:
            places.update(curve.places_over_same_point(P))
    return sorted(places, key=lambda P: P.key())


def local_rows(curve, funcs, P, lo: int, hi: int):
    """Base-field rows expressing the coefficients of t^lo..t^(hi-1) at ``P``."""
    K = curve.residue_field(P)[0]
    cols = []
    for h in funcs:
        s = local_expansion(curve, h, P, hi)
        col = []
        for k in range(lo, hi):
            col.extend(K.coords(s.coefficient(k)))
        cols.append(col)
    nrows = len(cols[0]) if cols else 0
    return [[cols[j][r] for j in range(len(cols))] for r in range(nrows)]


def rr_basis(curve, D: Divisor) -> RRSpace:
    """Exact basis of ``L(D) = {h : div(h) + D >= 0}``."""
    if D.degree < 0:
        return RRSpace(D, ())
    c, funcs = ansatz(curve, D)
    if not funcs:
        return RRSpace(D, ())
    rows = []
    for P in condition_places(curve, D):
        vc = P.ramification * c.order_at(P.p)
        lo, hi = -vc, -D[P]
        if lo < hi:
            rows.extend(local_rows(curve, funcs, P, lo, hi))
    field = curve.field
    kernel = kernel_basis(rows, len(funcs), field)
    basis = []
    for v in kernel:
        h = curve.function(0)
        for coef, f in zip(v, funcs):
            if coef:
                h = h + f * coef
        basis.append(h)
    return RRSpace(D, tuple(basis))


def h0(curve, D: Divisor) -> int:
    return rr_basis(curve, D).dimension


def h1(curve, D: Divisor) -> int:
    """``h0(K - D)`` by Serre duality."""
    return h0(curve, canonical_divisor(curve) - D)


def serre_dual(curve, D: Divisor) -> Divisor:
    return canonical_divisor(curve) - D
