"""Hyperelliptic curves ``y^2 = f(x)`` with ``deg f = 2g + 1``.

Places, local expansions, valuations and divisors of functions.

Local uniformizers are fixed once and for all:

* unramified finite place over an irreducible ``p(x)``: ``p(x)`` itself
  (``x - x0`` at degree-one places);
* ramified place (``p | f``): ``y``;
* the place at infinity: ``x^g / y``, which has valuation one.

Valuations are computed algebraically from norms ``a^2 - b^2 f``;
:func:`expand_at` lifts ``x`` and ``y`` into the completion by Newton
iteration and is therefore an independent route to the same numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .divisor import Divisor
from .errors import ContractViolation, CurveValidationError
from .exact_algebra import (
    Poly,
    PrimeField,
    QQ,
    ResidueField,
    factor,
    is_irreducible,
    is_squarefree,
)
from .laurent import LaurentSeries, newton_lift, ps_add, ps_mul, ps_pad, ps_sub


INFINITY = "infinity"
FINITE = "finite"

SPLIT = "split"
RAMIFIED = "ramified"
INERT = "inert"


@dataclass(frozen=True)
class Place:
    """A closed point of the curve.

    Finite places carry the monic irreducible ``p(x)`` below them and, when
    split, the branch ``y = branch(x) mod p``.
    """

    kind: str
    p: Optional[Poly] = None
    branch: Optional[Poly] = None
    splitting: str = RAMIFIED

    @property
    def is_infinity(self):
        return self.kind == INFINITY

    @property
    def degree(self) -> int:
        if self.is_infinity:
            return 1
        return self.p.degree * (2 if self.splitting == INERT else 1)

    @property
    def ramification(self) -> int:
        """Ramification index over the x-line (2 at infinity and at roots of f)."""
        return 2 if self.splitting == RAMIFIED else 1

    def key(self):
        if self.is_infinity:
            return (1, 1, (), ())
        b = self.branch.key() if self.branch is not None else ()
        return (self.degree, 0, self.p.key(), (self.splitting, b))

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        from .literals import format_place

        return f"Place({format_place(self)})"


class HyperellipticCurve:
    """The smooth odd-degree model ``y^2 = f(x)`` of genus at least two."""

    def __init__(self, field, f, hints=()):
        if field.characteristic == 2:
            raise CurveValidationError("characteristic 2 is not supported")
        f = f if isinstance(f, Poly) else Poly(field, f)
        if f.field != field:
            raise CurveValidationError("f must have coefficients in the base field")
        if f.degree < 1 or f.degree % 2 == 0:
            raise CurveValidationError(f"f must have odd degree, got degree {f.degree}")
        if f.degree < 5:
            raise CurveValidationError(
                f"genus {(f.degree - 1) // 2} < 2: deg f must be at least 5"
            )
        if not is_squarefree(f):
            raise CurveValidationError("f is not squarefree, the model is singular")
        self.field = field
        self.f = f
        self.genus = (f.degree - 1) // 2
        self.infinity = Place(INFINITY)
        self._series = {}
        self._residue = {}
        self.hints = tuple(self.point(x0, y0) for x0, y0 in hints)
        self._hint_points = tuple((field(x0), field(y0)) for x0, y0 in hints)

    # ---------------------------------------------------------------- places

    def point(self, x0, y0) -> Place:
        """The degree-one place at the affine point ``(x0, y0)``."""
        x0, y0 = self.field(x0), self.field(y0)
        if y0 * y0 != self.f(x0):
            raise CurveValidationError(f"({x0}, {y0}) does not lie on the curve")
        p = Poly(self.field, [-x0, 1])
        if not y0:
            return Place(FINITE, p, None, RAMIFIED)
        return Place(FINITE, p, Poly.const(self.field, y0), SPLIT)

    def mumford_place(self, p: Poly, branch: Optional[Poly]) -> Place:
        """Place from a pair ``(p, b)`` with ``b^2 = f mod p``; ``b=None`` for inert."""
        p = p.monic()
        if not is_irreducible(p):
            raise ContractViolation(f"{p} is not irreducible over the base field")
        if (self.f % p).is_zero():
            if branch is not None and not (branch % p).is_zero():
                raise ContractViolation("a ramified place has branch 0")
            return Place(FINITE, p, None, RAMIFIED)
        if branch is None:
            places = self.places_above(p)
            if len(places) != 1:
                raise ContractViolation(f"the place over {p} is split, not inert")
            return places[0]
        branch = branch % p
        if not ((branch * branch - self.f) % p).is_zero():
            raise ContractViolation("branch does not satisfy b^2 = f mod p")
        return Place(FINITE, p, branch, SPLIT)

    def places_above(self, q) -> list:
        """Places over an irreducible ``p(x)`` or over ``x = x0``; sorted."""
        if isinstance(q, Poly):
            p = q.monic()
            if p.degree < 1 or not is_irreducible(p):
                raise ContractViolation(f"{q} is not irreducible over the base field")
        else:
            p = Poly(self.field, [-self.field(q), 1])
        if (self.f % p).is_zero():
            return [Place(FINITE, p, None, RAMIFIED)]
        K, xi = self._base_residue(p)
        r = K.sqrt(self.f(xi))
        if r is None:
            return [Place(FINITE, p, None, INERT)]
        b = r.poly if isinstance(K, ResidueField) else Poly.const(self.field, r)
        return sorted([Place(FINITE, p, b, SPLIT), Place(FINITE, p, (-b) % p, SPLIT)])

    def conjugate(self, P: Place) -> Place:
        """Image under the hyperelliptic involution ``y -> -y``."""
        if P.splitting != SPLIT:
            return P
        return Place(FINITE, P.p, (-P.branch) % P.p, SPLIT)

    def places_over_same_point(self, P: Place) -> list:
        return sorted({P, self.conjugate(P)})

    def degree_one_places(self, limit: int):
        """Deterministic list of degree-one places: hints, infinity, small x.

        At most ``limit`` places are returned and at most ``limit`` x-values
        are tried, so curves with few rational points still terminate.
        """
        seen = []
        for P in self.hints + (self.infinity,):
            if P not in seen:
                seen.append(P)
        for tried, x0 in enumerate(_small_values(self.field)):
            if len(seen) >= limit or tried >= limit:
                break
            for P in self.places_above(x0):
                if P.degree == 1 and P not in seen:
                    seen.append(P)
        return seen[:limit]

    # ------------------------------------------------------- residue fields

    def _base_residue(self, p: Poly):
        if p.degree == 1:
            return self.field, -p.coeffs[0]
        K = ResidueField(self.field, p, "a")
        return K, K.gen

    def residue_field(self, P: Place):
        """``(K, xi, y0)``: residue field, image of x, image of y (None at infinity)."""
        if P in self._residue:
            return self._residue[P]
        if P.is_infinity:
            out = (self.field, None, None)
        else:
            K1, xi = self._base_residue(P.p)
            if P.splitting == RAMIFIED:
                out = (K1, xi, K1.zero)
            elif P.splitting == SPLIT:
                out = (K1, xi, P.branch(xi) if P.p.degree > 1 else P.branch.coeff(0))
            else:
                K2 = ResidueField(K1, Poly(K1, [-self.f(xi), K1.zero, K1.one]), "b")
                out = (K2, K2(xi), K2.gen)
        self._residue[P] = out
        return out

    # -------------------------------------------------------------- functions

    def function(self, a=0, b=0, c=1) -> "FunctionElement":
        lift = lambda v: v if isinstance(v, Poly) else Poly.const(self.field, self.field(v))
        return FunctionElement(self, lift(a), lift(b), lift(c))

    @property
    def x(self):
        return self.function(Poly.x(self.field))

    @property
    def y(self):
        return self.function(0, 1)

    def descriptor(self) -> dict:
        from .literals import format_field_elem

        return {
            "field": self.field.descriptor,
            "f": [format_field_elem(self.field, c) for c in self.f.coeffs],
            "hints": [
                [format_field_elem(self.field, x), format_field_elem(self.field, y)]
                for x, y in self._hint_points
            ],
        }

    def __eq__(self, other):
        return isinstance(other, HyperellipticCurve) and self.field == other.field and self.f == other.f

    def __hash__(self):
        return hash((self.field, self.f))

    def __repr__(self):
        return f"HyperellipticCurve(y^2 = {self.f.format()} over {self.field!r})"


def _small_values(field):
    yield field(0)
    n = 1
    limit = field.order if field.order is not None else None
    while True:
        if limit is not None and n >= limit:
            return
        yield field(n)
        if limit is None:
            yield field(-n)
        n += 1


class FunctionElement:
    """``(a(x) + b(x) y) / c(x)`` with ``gcd(a, b, c) = 1`` and ``c`` monic."""

    __slots__ = ("curve", "a", "b", "c")

    def __init__(self, curve, a: Poly, b: Poly, c: Poly):
        if c.is_zero():
            raise ContractViolation("zero denominator")
        if a.is_zero() and b.is_zero():
            c = Poly.const(curve.field, curve.field.one)
        else:
            g = a.gcd(b).gcd(c)
            if g.degree > 0:
                a, b, c = a.exact_div(g), b.exact_div(g), c.exact_div(g)
            inv = curve.field.one / c.lc
            a, b, c = a * inv, b * inv, c * inv
        self.curve = curve
        self.a, self.b, self.c = a, b, c

    def _lift(self, other):
        if isinstance(other, FunctionElement):
            if other.curve != self.curve:
                raise ContractViolation("functions on different curves")
            return other
        return self.curve.function(other)

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def __add__(self, other):
        o = self._lift(other)
        return FunctionElement(self.curve, self.a * o.c + o.a * self.c, self.b * o.c + o.b * self.c, self.c * o.c)

    __radd__ = __add__

    def __neg__(self):
        return FunctionElement(self.curve, -self.a, -self.b, self.c)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        f = self.curve.f
        return FunctionElement(
            self.curve,
            self.a * o.a + self.b * o.b * f,
            self.a * o.b + self.b * o.a,
            self.c * o.c,
        )

    __rmul__ = __mul__

    def norm_numerator(self) -> Poly:
        """``a^2 - b^2 f``: the norm of the numerator ``a + b y``."""
        return self.a * self.a - self.b * self.b * self.curve.f

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        n = self.norm_numerator()
        return FunctionElement(self.curve, self.a * self.c, -self.b * self.c, n)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        base = self if e >= 0 else self.inverse()
        result = self.curve.function(1)
        for _ in range(abs(e)):
            result = result * base
        return result

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except ContractViolation:
            return NotImplemented
        return (self.a, self.b, self.c) == (o.a, o.b, o.c)

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def format(self):
        from .literals import format_function

        return format_function(self)

    def __repr__(self):
        return f"FunctionElement({self.format()})"

    __str__ = format


# ------------------------------------------------------------------ valuation


def _content_split(h: FunctionElement):
    g = h.a.gcd(h.b)
    return g, h.a.exact_div(g), h.b.exact_div(g)


def valuation(curve, h: FunctionElement, P: Place) -> int:
    """Order of vanishing of ``h`` at ``P`` (negative for poles)."""
    if h.is_zero():
        raise ContractViolation("valuation of the zero function is undefined")
    if P.is_infinity:
        cands = []
        if not h.a.is_zero():
            cands.append(-2 * h.a.degree)
        if not h.b.is_zero():
            cands.append(-2 * h.b.degree - (2 * curve.genus + 1))
        return min(cands) + 2 * h.c.degree
    p = P.p
    g, a1, b1 = _content_split(h)
    n1 = a1 * a1 - b1 * b1 * curve.f
    og = g.order_at(p)
    oc = h.c.order_at(p)
    if P.splitting == RAMIFIED:
        return 2 * og + n1.order_at(p) - 2 * oc
    if P.splitting == INERT:
        return og - oc
    vanishes = ((a1 + b1 * P.branch) % p).is_zero()
    return og - oc + (n1.order_at(p) if vanishes else 0)


def divisor_of(curve, h: FunctionElement) -> Divisor:
    """Principal divisor of a nonzero function; its degree is always 0."""
    if h.is_zero():
        raise ContractViolation("the zero function has no divisor")
    g, a1, b1 = _content_split(h)
    n1 = a1 * a1 - b1 * b1 * curve.f
    primes = {}
    for poly in (g, h.c, n1):
        for p, _ in factor(poly):
            primes[p] = True
    mult = {}
    for p in sorted(primes, key=Poly.key):
        if (curve.f % p).is_zero():
            places = [Place(FINITE, p, None, RAMIFIED)]
        elif (n1 % p).is_zero():
            inv_b = _inverse_mod(b1, p)
            beta = (-a1 * inv_b) % p
            places = [Place(FINITE, p, beta, SPLIT), Place(FINITE, p, (-beta) % p, SPLIT)]
        else:
            places = curve.places_above(p)
        for P in places:
            v = valuation(curve, h, P)
            if v:
                mult[P] = v
    v = valuation(curve, h, curve.infinity)
    if v:
        mult[curve.infinity] = v
    return Divisor(curve, mult)


def _inverse_mod(b: Poly, p: Poly) -> Poly:
    g, s, _ = b.xgcd(p)
    if g.degree != 0:
        raise ContractViolation("polynomial is not invertible modulo p")
    return (s * (b.field.one / g.lc)) % p


def canonical_divisor(curve) -> Divisor:
    """Divisor of ``dx/y``: ``(2g - 2)`` times the place at infinity."""
    return Divisor(curve, {curve.infinity: 2 * curve.genus - 2})


# ----------------------------------------------------------- local expansion


def _ps_poly(K, poly: Poly, z, m):
    """Evaluate ``poly`` (base-field coefficients) at the power series ``z``."""
    zero = K.zero
    r = [zero] * m
    for c in reversed(poly.coeffs):
        r = ps_mul(r, z, m, zero)
        r[0] = r[0] + K(c)
    return r


def _local_x(curve, P: Place, n: int):
    """Power series of x at a finite place, or of ``u = t^2 x`` at infinity."""
    key = (P, "x")
    cached = curve._series.get(key)
    if cached is not None and len(cached) >= n:
        return cached[:n]
    K, xi, _ = curve.residue_field(P)
    zero = K.zero
    f = curve.f
    if P.is_infinity:
        g = curve.genus
        d = f.degree
        # u^(2g) = sum_i f_i t^(2(d - i)) u^i, with u(0) = 1 / lc(f)
        def coeff_series(i, m):
            s = [zero] * m
            e = 2 * (d - i)
            if e < m:
                s[e] = K(f.coeff(i))
            if i == 2 * g:
                s[0] = s[0] - K.one
            return s

        def residual(z, m):
            val = [zero] * m
            der = [zero] * m
            for i in range(d, -1, -1):
                der = ps_add(ps_mul(der, z, m, zero), val, m, zero)
                val = ps_add(ps_mul(val, z, m, zero), coeff_series(i, m), m, zero)
            return val, der

        z = newton_lift(K, K.one / K(f.lc), residual, n)
    elif P.splitting == RAMIFIED:
        df = f.derivative()

        def residual(z, m):
            pi2 = [zero] * m
            if m > 2:
                pi2[2] = K.one
            return ps_sub(_ps_poly(K, f, z, m), pi2, m, zero), _ps_poly(K, df, z, m)

        z = newton_lift(K, xi, residual, n)
    elif P.p.degree == 1:
        z = ps_pad([K(xi), K.one], n, zero)
    else:
        p = P.p
        dp = p.derivative()

        def residual(z, m):
            pi = [zero] * m
            if m > 1:
                pi[1] = K.one
            return ps_sub(_ps_poly(K, p, z, m), pi, m, zero), _ps_poly(K, dp, z, m)

        z = newton_lift(K, K(xi), residual, n)
    curve._series[key] = z
    return z


def _local_y_series(curve, P: Place, n: int):
    """Power series of y at an unramified finite place."""
    key = (P, "y")
    cached = curve._series.get(key)
    if cached is not None and len(cached) >= n:
        return cached[:n]
    K, _, y0 = curve.residue_field(P)
    zero = K.zero
    X = _local_x(curve, P, n)
    fx_full = _ps_poly(K, curve.f, X, n)

    def residual(z, m):
        return ps_sub(ps_mul(z, z, m, zero), fx_full[:m], m, zero), [c + c for c in z]

    z = newton_lift(K, K(y0), residual, n)
    curve._series[key] = z
    return z


def _poly_local(curve, P: Place, poly: Poly, L: int) -> LaurentSeries:
    K = curve.residue_field(P)[0]
    if P.is_infinity:
        u = _local_x(curve, P, L)
        zero = K.zero
        r = [zero] * L
        d = poly.degree
        for i in range(d, -1, -1):
            r = ps_mul(r, u, L, zero)
            e = 2 * (d - i)
            if e < L:
                r[e] = r[e] + K(poly.coeff(i))
        return LaurentSeries(K, -2 * d, r, P)
    return LaurentSeries(K, 0, _ps_poly(K, poly, _local_x(curve, P, L), L), P)


def _y_local(curve, P: Place, L: int) -> LaurentSeries:
    K = curve.residue_field(P)[0]
    if P.is_infinity:
        u = _local_x(curve, P, L)
        g = curve.genus
        ug = [K.one] + [K.zero] * (L - 1)
        for _ in range(g):
            ug = ps_mul(ug, u, L, K.zero)
        return LaurentSeries(K, -(2 * g + 1), ug, P)
    if P.splitting == RAMIFIED:
        return LaurentSeries(K, 1, [K.one] + [K.zero] * (L - 1), P)
    return LaurentSeries(K, 0, _local_y_series(curve, P, L), P)


def local_expansion(curve, h: FunctionElement, P: Place, upto: int) -> LaurentSeries:
    """Expansion of ``h`` at ``P`` exact for every exponent below ``upto``.

    The result is not normalised: leading coefficients may vanish.
    """
    K = curve.residue_field(P)[0]
    if h.is_zero():
        return LaurentSeries(K, upto, [], P)
    if P.is_infinity:
        M = max(
            [2 * h.a.degree] * (not h.a.is_zero())
            + [2 * h.b.degree + 2 * curve.genus + 1] * (not h.b.is_zero())
        )
        L = max(upto + M - 2 * h.c.degree, 0) + 1
    else:
        # c = t^vc * unit needs more than vc terms to have a visible leading term
        vc = P.ramification * h.c.order_at(P.p)
        L = max(upto + 2 * vc, vc, 0) + 1
    parts = []
    if not h.a.is_zero():
        parts.append(_poly_local(curve, P, h.a, L))
    if not h.b.is_zero():
        parts.append(_poly_local(curve, P, h.b, L) * _y_local(curve, P, L))
    num = parts[0] if len(parts) == 1 else parts[0] + parts[1]
    out = num * _poly_local(curve, P, h.c, L).inverse()
    if out.precision < upto:
        raise AssertionError("local expansion lost precision")
    return out.truncate(upto)


def expand_at(curve, h: FunctionElement, P: Place, n: int) -> LaurentSeries:
    """Laurent expansion of ``h`` in the canonical uniformizer at ``P``.

    Returns ``n`` coefficients starting at the leading exponent. The leading
    exponent is located from the expansion itself, using the norm only as an
    upper bound on how far to look.
    """
    if h.is_zero():
        raise ContractViolation("cannot expand the zero function")
    if n < 1:
        raise ContractViolation("need at least one term")
    if P.is_infinity:
        bound = valuation(curve, h, P)
    else:
        bound = P.ramification * h.norm_numerator().order_at(P.p) - P.ramification * h.c.order_at(P.p)
    s = local_expansion(curve, h, P, bound + n).normalized()
    return s.truncate(s.valuation + n)
