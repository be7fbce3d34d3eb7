"""Exact fields, univariate polynomials and dense linear algebra.

Three kinds of field are provided:

* :data:`QQ`, the rationals, backed by :class:`fractions.Fraction`;
* :class:`PrimeField`, integers modulo an odd prime;
* :class:`ResidueField`, ``K[t]/(m(t))`` for an irreducible ``m`` over
  another field ``K``. Towers are allowed.

Every element type supports ``+ - * /``, ``**`` with an integer exponent,
equality and hashing, so :class:`Poly` and the linear algebra routines are
written once for all of them.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import count
from typing import NamedTuple, Optional, Sequence

from .errors import ContractViolation


# --------------------------------------------------------------------------
# fields
# --------------------------------------------------------------------------


class Rationals:
    """The field of rational numbers."""

    characteristic = 0
    order = None
    degree = 1
    absolute_degree = 1
    descriptor = "Q"

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, str)):
            try:
                return Fraction(value)
            except (ValueError, ZeroDivisionError) as exc:
                raise ContractViolation(f"not a rational number: {value!r}") from exc
        raise ContractViolation(f"cannot coerce {value!r} into Q")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def prime_field(self):
        return self

    def coords(self, a):
        return (a,)

    def key(self, a):
        return (a.numerator, a.denominator)

    def sqrt(self, a):
        if a < 0:
            return None
        n, d = a.numerator, a.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None

    def format(self, a):
        return str(a)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __reduce__(self):
        return (Rationals, ())


QQ = Rationals()


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    return all(n % d for d in range(3, r + 1, 2))


class Fp:
    """Residue modulo a prime, tied to its :class:`PrimeField`."""

    __slots__ = ("v", "field")

    def __init__(self, v: int, field: "PrimeField"):
        self.v = v % field.p
        self.field = field

    def _other(self, other):
        if isinstance(other, Fp):
            if other.field.p != self.field.p:
                raise ContractViolation("mixing residues modulo different primes")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return self.field(other).v
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(self.v + o, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(self.v - o, self.field)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(o - self.v, self.field)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(self.v * o, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.field)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero in a prime field")
        return Fp(pow(self.v, -1, self.field.p), self.field)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * Fp(o, self.field).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(o, self.field) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.v, e, self.field.p), self.field)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self.v - o) % self.field.p == 0

    def __hash__(self):
        return hash((self.v, self.field.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} (mod {self.field.p})"

    def __str__(self):
        return str(self.v)


class PrimeField:
    """Integers modulo an odd prime ``p``."""

    degree = 1
    absolute_degree = 1

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise ContractViolation(f"modulus {p!r} is not prime")
        if p == 2:
            raise ContractViolation("characteristic 2 is not supported")
        self.p = p
        self.characteristic = p
        self.order = p
        self.descriptor = f"Fp:{p}"

    def __call__(self, value):
        if isinstance(value, Fp):
            if value.field.p != self.p:
                raise ContractViolation("residue belongs to a different prime field")
            return value
        if isinstance(value, int):
            return Fp(value, self)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ContractViolation(f"{value} has no image modulo {self.p}")
            return Fp(value.numerator * pow(value.denominator, -1, self.p), self)
        if isinstance(value, str):
            return self(QQ(value))
        raise ContractViolation(f"cannot coerce {value!r} into F_{self.p}")

    @property
    def zero(self):
        return Fp(0, self)

    @property
    def one(self):
        return Fp(1, self)

    def prime_field(self):
        return self

    def coords(self, a):
        return (a,)

    def key(self, a):
        return a.v

    def element_from_index(self, n: int):
        return Fp(n, self)

    def sqrt(self, a):
        return _finite_sqrt(self, a)

    def format(self, a):
        return str(a.v)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


class ResidueElem:
    """Element of ``K[t]/(m)``, stored as a reduced :class:`Poly` over ``K``."""

    __slots__ = ("poly", "field")

    def __init__(self, poly: "Poly", field: "ResidueField"):
        self.poly = poly % field.modulus if poly.degree >= field.modulus.degree else poly
        self.field = field

    def _other(self, other):
        if isinstance(other, ResidueElem) and other.field == self.field:
            return other.poly
        try:
            return Poly.const(self.field.base, self.field.base(other))
        except ContractViolation:
            return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ResidueElem(self.poly + o, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ResidueElem(self.poly - o, self.field)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ResidueElem(o - self.poly, self.field)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ResidueElem(self.poly * o, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return ResidueElem(-self.poly, self.field)

    def inverse(self):
        if self.poly.is_zero():
            raise ZeroDivisionError("inverse of zero in a residue field")
        g, s, _ = self.poly.xgcd(self.field.modulus)
        if g.degree != 0:
            raise ContractViolation("residue modulus is not irreducible")
        return ResidueElem(s * (self.field.base.one / g.lc), self.field)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * ResidueElem(o, self.field).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ResidueElem(o, self.field) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.poly == o

    def __hash__(self):
        return hash((self.poly, self.field))

    def __bool__(self):
        return not self.poly.is_zero()

    def __repr__(self):
        return f"[{self.poly.format(self.field.name)}]"

    __str__ = __repr__


class ResidueField:
    """The field ``base[t]/(modulus(t))`` for a monic irreducible modulus."""

    def __init__(self, base, modulus: "Poly", name: str = "a"):
        if modulus.field != base:
            raise ContractViolation("modulus must have coefficients in the base field")
        if modulus.degree < 1:
            raise ContractViolation("residue modulus must have positive degree")
        self.base = base
        self.modulus = modulus.monic()
        self.name = name
        self.degree = modulus.degree
        self.absolute_degree = self.degree * base.absolute_degree
        self.characteristic = base.characteristic
        self.order = None if base.order is None else base.order ** self.degree

    def __call__(self, value):
        if isinstance(value, ResidueElem):
            if value.field == self:
                return value
            raise ContractViolation("element of a different residue field")
        return ResidueElem(Poly.const(self.base, self.base(value)), self)

    @property
    def zero(self):
        return ResidueElem(Poly.zero(self.base), self)

    @property
    def one(self):
        return ResidueElem(Poly.const(self.base, self.base.one), self)

    @property
    def gen(self):
        return ResidueElem(Poly.x(self.base), self)

    def from_poly(self, poly: "Poly"):
        return ResidueElem(poly, self)

    def prime_field(self):
        return self.base.prime_field()

    def coords(self, a):
        """Coordinates of ``a`` over the prime field, length ``absolute_degree``."""
        out = []
        cs = a.poly.coeffs
        for i in range(self.degree):
            c = cs[i] if i < len(cs) else self.base.zero
            out.extend(self.base.coords(c))
        return tuple(out)

    def key(self, a):
        return tuple(self.base.key(c) for c in a.poly.coeffs)

    def element_from_index(self, n: int):
        q = self.base.order
        cs = []
        for _ in range(self.degree):
            n, r = divmod(n, q)
            cs.append(self.base.element_from_index(r))
        return ResidueElem(Poly(self.base, cs), self)

    def sqrt(self, a):
        if self.order is not None:
            return _finite_sqrt(self, a)
        if self.base == QQ:
            return _number_field_sqrt(self, a)
        raise ContractViolation("square roots are only available over finite fields or simple extensions of Q")

    def format(self, a):
        return a.poly.format(self.name)

    def __repr__(self):
        return f"{self.base!r}[{self.name}]/({self.modulus.format(self.name)})"

    def __eq__(self, other):
        return (
            isinstance(other, ResidueField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("RF", self.base, self.modulus))


def _finite_sqrt(field, a):
    """Tonelli-Shanks in a finite field of odd order; None for non-squares."""
    a = field(a)
    if not a:
        return field.zero
    q = field.order
    if a ** ((q - 1) // 2) != field.one:
        return None
    s, m = 0, q - 1
    while m % 2 == 0:
        s, m = s + 1, m // 2
    for n in count(2):
        z = field.element_from_index(n)
        if z and z ** ((q - 1) // 2) != field.one:
            break
    c = z ** m
    x = a ** ((m + 1) // 2)
    t = a ** m
    while t != field.one:
        i, t2 = 0, t
        while t2 != field.one:
            t2 = t2 * t2
            i += 1
        b = c ** (2 ** (s - i - 1))
        x, c = x * b, b * b
        t, s = t * c, i
    return x


def _number_field_sqrt(field, a, shifts=8):
    """Square root in ``K = Q[t]/(m)``, or None.

    For a rational shift ``c`` the roots of
    ``R_c(z) = Res_t(m(t), (z - c t)^2 - a(t))`` are the conjugates of
    ``delta = c t +- sqrt(a)``. If ``R_c`` is irreducible of degree ``2 deg m``
    then ``delta`` has degree ``2 deg m`` and ``a`` is not a square in ``K``.
    Otherwise each rational factor of ``R_c`` is intersected with
    ``(z - c t)^2 - a`` in ``K[z]``; a linear gcd yields the root. Shifts
    only fail for finitely many ``c``; sympy's algebraic fields are the last
    resort.
    """
    import sympy

    a = field(a)
    if not a:
        return field.zero
    t, z = sympy.symbols("t z")
    m_expr = sum(sympy.Rational(c.numerator, c.denominator) * t ** i for i, c in enumerate(field.modulus.coeffs))
    a_expr = sum(sympy.Rational(c.numerator, c.denominator) * t ** i for i, c in enumerate(a.poly.coeffs))
    for c in range(shifts):
        R = sympy.Poly(sympy.resultant(m_expr, (z - c * t) ** 2 - a_expr, t), z, domain=sympy.QQ)
        facs = R.factor_list()[1]
        if len(facs) == 1 and facs[0][1] == 1 and facs[0][0].degree() == 2 * field.degree:
            return None
        shift = field.gen * c
        quad = Poly(field, [shift * shift - a, -(shift + shift), field.one])
        for fac, _ in facs:
            cs = [field(Fraction(int(v.numerator), int(v.denominator))) for v in reversed(fac.all_coeffs())]
            g = Poly(field, cs).gcd(quad)
            if g.degree == 1:
                root = -g.coeffs[0] - shift
                if root * root == a:
                    return root
    return _sympy_number_field_sqrt(field, a)


def _sympy_number_field_sqrt(field, a):
    """Square root in ``Q[t]/(m)`` via sympy's algebraic-field factorisation."""
    import sympy

    t, s = sympy.symbols("t s")
    m_expr = sum(sympy.Rational(c.numerator, c.denominator) * t ** i for i, c in enumerate(field.modulus.coeffs))
    root = sympy.CRootOf(m_expr, 0)
    K = sympy.QQ.algebraic_field(root)
    a_expr = sum(sympy.Rational(c.numerator, c.denominator) * root ** i for i, c in enumerate(a.poly.coeffs))
    factors = sympy.Poly(s ** 2 - a_expr, s, domain=K).factor_list()[1]
    for fac, _ in factors:
        if fac.degree() != 1:
            continue
        lead, const = fac.rep.to_list()
        beta = -K.to_sympy(const) / K.to_sympy(lead)
        # beta is a polynomial in the chosen root; read its coefficients back
        poly_beta = sympy.Poly(sympy.expand(beta.subs(root, t)), t) if beta.has(root) else sympy.Poly(beta, t)
        coeffs = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in reversed(poly_beta.all_coeffs())]
        cand = field.from_poly(Poly(QQ, coeffs))
        if cand * cand == a:
            return cand
    return None


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------


class Poly:
    """Dense univariate polynomial, coefficients in ascending degree.

    The zero polynomial has degree ``-1``.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs: Sequence = ()):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def const(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero, field.one))

    @classmethod
    def monomial(cls, field, n, c=None):
        c = field.one if c is None else c
        return cls(field, [field.zero] * n + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ContractViolation("polynomials over different fields")
            return other
        return Poly.const(self.field, self.field(other))

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.field(other)
            return Poly(self.field, [a * c for a in self.coeffs])
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ContractViolation("negative power of a polynomial")
        result = Poly.const(self.field, self.field.one)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(self.field), self
        inv_lc = self.field.one / other.lc
        quot = [self.field.zero] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] * inv_lc
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Poly(self.field, quot), Poly(self.field, rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ContractViolation("polynomial division is not exact")
        return q

    def monic(self):
        if self.is_zero():
            return self
        return self * (self.field.one / self.lc)

    def derivative(self):
        return Poly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, value):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * value + c
        if acc is None:
            return self.field.zero
        return acc

    def gcd(self, other):
        a, b = self, self._lift(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """Return ``(g, s, t)`` with ``s*self + t*other = g`` (g not normalised)."""
        one = Poly.const(self.field, self.field.one)
        zero = Poly.zero(self.field)
        r0, r1, s0, s1, t0, t1 = self, self._lift(other), one, zero, zero, one
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        return r0, s0, t0

    def order_at(self, p: "Poly") -> int:
        """Largest ``k`` with ``p**k`` dividing self; self must be nonzero."""
        if self.is_zero():
            raise ContractViolation("order of the zero polynomial is infinite")
        k, f = 0, self
        while True:
            q, r = divmod(f, p)
            if not r.is_zero():
                return k
            k, f = k + 1, q

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        try:
            return self == self._lift(other)
        except ContractViolation:
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def key(self):
        """Total-order key: degree first, then coefficients from the top."""
        return (self.degree, tuple(self.field.key(c) for c in reversed(self.coeffs)))

    def format(self, var="x"):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            s = _format_coeff(self.field, c)
            neg = s.startswith("-")
            mag = s[1:] if neg else s
            if i == 0:
                term = mag
            else:
                mono = var if i == 1 else f"{var}^{i}"
                if mag == "1":
                    term = mono
                elif _is_atomic(mag):
                    term = f"{mag}*{mono}"
                else:
                    term = f"({mag})*{mono}"
            if not parts:
                parts.append(f"-{term}" if neg else term)
            else:
                parts.append(f"- {term}" if neg else f"+ {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({self.format()})"

    __str__ = format


def _format_coeff(field, c):
    if isinstance(field, PrimeField):
        v = c.v
        # symmetric representative keeps small negatives readable
        return str(v - field.p) if v > field.p // 2 else str(v)
    return field.format(c)


def _is_atomic(s):
    return all(ch.isdigit() or ch == "/" for ch in s)


def is_squarefree(f: Poly) -> bool:
    """True iff ``gcd(f, f')`` is constant."""
    if f.is_zero():
        raise ContractViolation("squarefreeness of the zero polynomial is undefined")
    return f.gcd(f.derivative()).degree == 0


def factor(f: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factorisation over Q or a prime field, sorted by key.

    Backed by sympy; the constant factor is dropped.
    """
    if f.is_zero():
        raise ContractViolation("cannot factor the zero polynomial")
    if f.degree == 0:
        return []
    field = f.field
    if field == QQ:
        import sympy

        x = sympy.Symbol("x")
        sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(f.coeffs)], x, domain=sympy.QQ)
        out = []
        for g, k in sp.factor_list()[1]:
            cs = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(g.all_coeffs())]
            out.append((Poly(QQ, cs).monic(), k))
    elif isinstance(field, PrimeField):
        from sympy import ZZ
        from sympy.polys.galoistools import gf_factor

        _, facs = gf_factor([ZZ(c.v) for c in reversed(f.coeffs)], field.p, ZZ)
        out = [(Poly(field, [int(c) for c in reversed(g)]).monic(), k) for g, k in facs]
    else:
        raise ContractViolation("factorisation is only available over Q and prime fields")
    return sorted(out, key=lambda gk: gk[0].key())


def is_irreducible(f: Poly) -> bool:
    if f.degree < 1:
        return False
    facs = factor(f)
    return len(facs) == 1 and facs[0][1] == 1


# --------------------------------------------------------------------------
# linear algebra
# --------------------------------------------------------------------------


class LinearSolution(NamedTuple):
    """``solution`` is None when the system is inconsistent."""

    solution: Optional[list]
    kernel: list


def _check_matrix(A, ncols=None):
    widths = {len(r) for r in A}
    if len(widths) > 1:
        raise ContractViolation("matrix rows have inconsistent lengths")
    if ncols is not None and widths and widths != {ncols}:
        raise ContractViolation("matrix width does not match the declared column count")
    return widths.pop() if widths else (ncols or 0)


def rref(A, ncols=None, field=None):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    n = _check_matrix(A, ncols)
    rows = [list(r) for r in A]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c] if field is None else field.one / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(A, field=None) -> int:
    return len(rref(A, field=field)[1])


def kernel_basis(A, ncols: int, field) -> list[list]:
    """Basis of ``{v : A v = 0}``, one vector per free column of the RREF."""
    rows, pivots = rref(A, ncols, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for row, pc in zip(rows, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def solve_linear(A, b, field=None) -> LinearSolution:
    """Solve ``A x = b`` exactly; also return a kernel basis of ``A``.

    ``field`` is only needed when ``A`` has no entries to infer it from.
    """
    ncols = _check_matrix(A)
    if len(b) != len(A):
        raise ContractViolation("right-hand side length does not match the row count")
    if field is None:
        sample = next((v for r in A for v in r), None)
        if sample is None:
            sample = next(iter(b), None)
        if sample is None:
            raise ContractViolation("cannot infer the field of an empty system")
        field = QQ if isinstance(sample, (int, Fraction)) else sample.field
    A = [[field(v) for v in r] for r in A]
    b = [field(v) for v in b]
    aug = [r + [bi] for r, bi in zip(A, b)]
    rows, pivots = rref(aug, ncols + 1, field)
    kernel = kernel_basis(A, ncols, field) if A else [
        [field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)
    ]
    if ncols in pivots:
        return LinearSolution(None, kernel)
    x = [field.zero] * ncols
    for row, pc in zip(rows, pivots):
        x[pc] = row[ncols]
    return LinearSolution(x, kernel)


def mat_vec(A, v, field):
    return [sum((a * b for a, b in zip(row, v)), field.zero) for row in A]
