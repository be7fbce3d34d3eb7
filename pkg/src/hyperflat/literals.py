"""Parsers and printers for the textual literals used by the CLI.

Grammar (whitespace-insensitive)::

    divisor := '0' | term (('+' | '-') term)*
    term    := [int '*'] place
    place   := 'inf' | '(' const ',' const ')' | '[' poly ';' (poly | 'inert') ']'
    tails   := '0' | tail (';' tail)*
    tail    := place ':' laurent-expression in t
    bundle  := 'line(' divisor ')' | 'sum(' bundle (',' bundle)* ')'
             | 'ext(' name ';' bundle ',' bundle ')'

Every ``format_*`` function produces text that the matching ``parse_*``
function maps back to an equal value.
"""

from __future__ import annotations

import re

from .errors import ContractViolation, LiteralError
from .exact_algebra import Poly, PrimeField, QQ, ResidueField, _format_coeff


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m.group(0).strip() == "":
                break
            col = m.start(m.lastindex) + 1
            if m.group(1):
                self.toks.append(("num", m.group(1), col))
            elif m.group(2):
                self.toks.append(("id", m.group(2), col))
            else:
                self.toks.append(("sym", m.group(3), col))
            pos = m.end()
        self.i = 0

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else ("eof", "", len(self.text) + 1)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def accept(self, value):
        if self.peek()[1] == value and self.peek()[0] != "eof":
            self.i += 1
            return True
        return False

    def expect(self, value):
        kind, v, col = self.next()
        if v != value or kind == "eof":
            raise LiteralError(f"expected {value!r}, found {v or 'end of input'!r}", col)

    def error(self, message):
        return LiteralError(message, self.peek()[2])

    def done(self):
        if self.peek()[0] != "eof":
            raise self.error(f"unexpected {self.peek()[1]!r}")


# ------------------------------------------------------------------ algebras


class _ConstAlgebra:
    def __init__(self, field):
        self.field = field

    def number(self, n):
        return self.field(int(n))

    def var(self, name, tokens):
        raise tokens.error(f"unexpected symbol {name!r}")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b, tokens):
        if not b:
            raise tokens.error("division by zero")
        return a / b

    def pow(self, a, e, tokens):
        if e < 0 and not a:
            raise tokens.error("negative power of zero")
        return a ** e


class _PolyAlgebra(_ConstAlgebra):
    def __init__(self, field, var="x"):
        super().__init__(field)
        self.name = var

    def number(self, n):
        return Poly.const(self.field, self.field(int(n)))

    def var(self, name, tokens):
        if name != self.name:
            raise tokens.error(f"unknown symbol {name!r}, expected {self.name!r}")
        return Poly.x(self.field)

    def div(self, a, b, tokens):
        if b.degree != 0:
            raise tokens.error("polynomial literals may only divide by nonzero constants")
        return a * (self.field.one / b.lc)

    def pow(self, a, e, tokens):
        if e < 0:
            raise tokens.error("negative exponent in a polynomial literal")
        return a ** e


class _FunctionAlgebra(_ConstAlgebra):
    def __init__(self, curve):
        super().__init__(curve.field)
        self.curve = curve

    def number(self, n):
        return self.curve.function(int(n))

    def var(self, name, tokens):
        if name == "x":
            return self.curve.x
        if name == "y":
            return self.curve.y
        raise tokens.error(f"unknown symbol {name!r}, expected 'x' or 'y'")

    def div(self, a, b, tokens):
        if b.is_zero():
            raise tokens.error("division by the zero function")
        return a / b

    def pow(self, a, e, tokens):
        if e < 0 and a.is_zero():
            raise tokens.error("negative power of zero")
        return a ** e


class _TailAlgebra(_ConstAlgebra):
    """Laurent polynomials in ``t`` as ``{exponent: coefficient}`` dicts."""

    def __init__(self, K):
        super().__init__(K)
        self.gens = {}
        F = K
        while isinstance(F, ResidueField):
            self.gens[F.name] = F
            F = F.base

    def _clean(self, d):
        return {k: v for k, v in d.items() if v}

    def number(self, n):
        return self._clean({0: self.field(int(n))})

    def var(self, name, tokens):
        if name == "t":
            return {1: self.field.one}
        if name in self.gens:
            F = self.gens[name]
            return {0: self._embed(F.gen)}
        raise tokens.error(f"unknown symbol {name!r} in a tail")

    def _embed(self, v):
        return self.field(v)

    def add(self, a, b):
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, self.field.zero) + v
        return self._clean(out)

    def neg(self, a):
        return {k: -v for k, v in a.items()}

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        out = {}
        for i, u in a.items():
            for j, v in b.items():
                out[i + j] = out.get(i + j, self.field.zero) + u * v
        return self._clean(out)

    def div(self, a, b, tokens):
        if list(b) != [0]:
            raise tokens.error("tails may only be divided by nonzero constants")
        inv = self.field.one / b[0]
        return {k: v * inv for k, v in a.items()}

    def pow(self, a, e, tokens):
        if len(a) != 1:
            if e < 0:
                raise tokens.error("negative power of a sum in a tail")
            out = {0: self.field.one}
            for _ in range(e):
                out = self.mul(out, a)
            return out
        (k, v), = a.items()
        if e < 0 and not v:
            raise tokens.error("negative power of zero")
        return {k * e: v ** e}


def _parse_expr(tokens, alg):
    def atom():
        kind, v, col = tokens.peek()
        if kind == "num":
            tokens.next()
            return alg.number(v)
        if kind == "id":
            tokens.next()
            return alg.var(v, tokens)
        if v == "(":
            tokens.next()
            e = expr()
            tokens.expect(")")
            return e
        raise LiteralError(f"unexpected {v or 'end of input'!r}", col)

    def power():
        base = atom()
        if tokens.accept("^"):
            sign = -1 if tokens.accept("-") else 1
            if tokens.accept("("):
                sign = -sign if tokens.accept("-") else sign
                kind, v, col = tokens.next()
                tokens.expect(")")
            else:
                kind, v, col = tokens.next()
            if kind != "num":
                raise LiteralError("exponent must be an integer", col)
            base = alg.pow(base, sign * int(v), tokens)
        return base

    def product():
        val = power()
        while True:
            if tokens.accept("*"):
                val = alg.mul(val, power())
            elif tokens.accept("/"):
                val = alg.div(val, power(), tokens)
            else:
                return val

    def expr():
        neg = tokens.accept("-")
        if not neg:
            tokens.accept("+")
        val = product()
        if neg:
            val = alg.neg(val)
        while True:
            if tokens.accept("+"):
                val = alg.add(val, product())
            elif tokens.accept("-"):
                val = alg.sub(val, product())
            else:
                return val

    return expr()


def _full(text, fn):
    tokens = _Tokens(text)
    out = fn(tokens)
    tokens.done()
    return out


# ------------------------------------------------------------ field elements


def format_field_elem(field, a) -> str:
    if isinstance(field, PrimeField):
        return str(a.v)
    return field.format(a)


def parse_field_elem(field, text: str):
    return _full(text, lambda t: _parse_expr(t, _ConstAlgebra(field)))


def format_poly(p: Poly, var="x") -> str:
    return p.format(var)


def parse_poly(field, text: str, var="x") -> Poly:
    return _full(text, lambda t: _parse_expr(t, _PolyAlgebra(field, var)))


# --------------------------------------------------------------------- places


def format_place(P) -> str:
    if P.is_infinity:
        return "inf"
    field = P.p.field
    if P.p.degree == 1 and P.splitting != "inert":
        x0 = -P.p.coeffs[0]
        y0 = P.branch.coeff(0) if P.branch is not None else field.zero
        return f"({format_field_elem(field, x0)},{format_field_elem(field, y0)})"
    if P.splitting == "inert":
        return f"[{P.p.format()}; inert]"
    b = P.branch.format() if P.branch is not None else "0"
    return f"[{P.p.format()}; {b}]"


def _parse_place(tokens, curve):
    if tokens.accept("inf"):
        return curve.infinity
    if tokens.accept("("):
        col = tokens.peek()[2]
        x0 = _parse_expr(tokens, _ConstAlgebra(curve.field))
        tokens.expect(",")
        y0 = _parse_expr(tokens, _ConstAlgebra(curve.field))
        tokens.expect(")")
        try:
            return curve.point(x0, y0)
        except ContractViolation as exc:
            raise LiteralError(str(exc), col) from exc
    if tokens.accept("["):
        col = tokens.peek()[2]
        p = _parse_expr(tokens, _PolyAlgebra(curve.field))
        tokens.expect(";")
        if tokens.accept("inert"):
            b = None
        else:
            b = _parse_expr(tokens, _PolyAlgebra(curve.field))
        tokens.expect("]")
        try:
            return curve.mumford_place(p, b)
        except ContractViolation as exc:
            raise LiteralError(str(exc), col) from exc
    raise tokens.error("expected a place: 'inf', '(a,b)' or '[p(x); b(x)]'")


def parse_place(curve, text: str):
    return _full(text, lambda t: _parse_place(t, curve))


# ------------------------------------------------------------------- divisors


def format_divisor(D) -> str:
    items = D.items()
    if not items:
        return "0"
    parts = []
    for P, m in items:
        body = format_place(P)
        mag = abs(m)
        term = body if mag == 1 else f"{mag}*{body}"
        if not parts:
            parts.append(f"-{term}" if m < 0 else term)
        else:
            parts.append(f"- {term}" if m < 0 else f"+ {term}")
    return " ".join(parts)


def _parse_divisor(tokens, curve):
    from .divisor import Divisor

    if tokens.peek()[:2] == ("num", "0") and tokens.peek(1)[1] != "*":
        tokens.next()
        return Divisor.zero(curve)
    D = Divisor.zero(curve)
    sign = -1 if tokens.accept("-") else 1
    if sign == 1:
        tokens.accept("+")
    while True:
        n = 1
        if tokens.peek()[0] == "num":
            n = int(tokens.next()[1])
            tokens.expect("*")
        P = _parse_place(tokens, curve)
        D = D + Divisor.place(curve, P, sign * n)
        if tokens.accept("+"):
            sign = 1
        elif tokens.accept("-"):
            sign = -1
        else:
            return D


def parse_divisor(curve, text: str):
    return _full(text, lambda t: _parse_divisor(t, curve))


# ------------------------------------------------------------------ functions


def format_function(h) -> str:
    a, b, c = h.a, h.b, h.c
    if h.is_zero():
        return "0"
    parts = []
    if not a.is_zero():
        parts.append(a.format())
    if not b.is_zero():
        bs = b.format()
        if bs == "1":
            term = "y"
        elif bs == "-1":
            term = "-y"
        elif " " not in bs and "(" not in bs:
            term = f"{bs}*y"
        else:
            term = f"({bs})*y"
        if parts and term.startswith("-"):
            parts.append(f"- {term[1:]}")
        elif parts:
            parts.append(f"+ {term}")
        else:
            parts.append(term)
    num = " ".join(parts)
    if c.degree == 0:
        return num
    cs = c.format()
    den = cs if " " not in cs else f"({cs})"
    return f"{num}/{den}" if " " not in num else f"({num})/{den}"


def parse_function(curve, text: str):
    return _full(text, lambda t: _parse_expr(t, _FunctionAlgebra(curve)))


# ---------------------------------------------------------------------- tails


def format_laurent_terms(K, terms: dict, var="t") -> str:
    if not terms:
        return "0"
    parts = []
    for k in sorted(terms):
        s = _format_coeff(K, terms[k])
        neg = s.startswith("-") and all(ch.isdigit() or ch in "/-" for ch in s)
        mag = s[1:] if neg else s
        mono = "1" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if k == 0:
            term = mag if all(ch.isdigit() or ch == "/" for ch in mag) else f"({mag})"
        elif mag == "1":
            term = mono
        elif all(ch.isdigit() or ch == "/" for ch in mag):
            term = f"{mag}*{mono}"
        else:
            term = f"({mag})*{mono}"
        if not parts:
            parts.append(f"-{term}" if neg else term)
        else:
            parts.append(f"- {term}" if neg else f"+ {term}")
    return " ".join(parts)


def format_tails(curve, tails: dict) -> str:
    """``tails`` maps places to ``{order: coefficient}``."""
    if not tails:
        return "0"
    chunks = []
    for P in sorted(tails, key=lambda P: P.key()):
        K = curve.residue_field(P)[0]
        chunks.append(f"{format_place(P)}: {format_laurent_terms(K, tails[P])}")
    return "; ".join(chunks)


def _parse_tails(tokens, curve):
    if tokens.peek()[:2] == ("num", "0") and tokens.peek(1)[0] == "eof":
        tokens.next()
        return {}
    out = {}
    while True:
        P = _parse_place(tokens, curve)
        tokens.expect(":")
        K = curve.residue_field(P)[0]
        terms = _parse_expr(tokens, _TailAlgebra(K))
        prev = out.get(P, {})
        alg = _TailAlgebra(K)
        out[P] = alg.add(prev, terms)
        if not tokens.accept(";"):
            return out


def parse_tails(curve, text: str) -> dict:
    return _full(text, lambda t: _parse_tails(t, curve))


# -------------------------------------------------------------------- bundles


def format_bundle(b, names: dict | None = None) -> str:
    """``names`` maps ``id(H1Class)`` to the reference used for Ext nodes."""
    from .bundles import DirectSum, Ext, Line

    names = names or {}
    if isinstance(b, Line):
        return f"line({format_divisor(b.divisor)})"
    if isinstance(b, DirectSum):
        return "sum(" + ", ".join(format_bundle(s, names) for s in b.summands) + ")"
    if isinstance(b, Ext):
        ref = names.get(id(b.cls), b.name or "cls")
        return f"ext({ref}; {format_bundle(b.sub, names)}, {format_bundle(b.quot, names)})"
    raise ContractViolation(f"not a bundle expression: {b!r}")


def _parse_bundle(tokens, curve, classes):
    from .bundles import DirectSum, Ext, Line

    kind, v, col = tokens.next()
    if v == "line":
        tokens.expect("(")
        D = _parse_divisor(tokens, curve)
        tokens.expect(")")
        return Line(D)
    if v == "sum":
        tokens.expect("(")
        parts = [_parse_bundle(tokens, curve, classes)]
        while tokens.accept(","):
            parts.append(_parse_bundle(tokens, curve, classes))
        tokens.expect(")")
        return DirectSum(parts)
    if v == "ext":
        tokens.expect("(")
        kind, name, ncol = tokens.next()
        if kind != "id":
            raise LiteralError("expected a class name", ncol)
        if name not in classes:
            raise LiteralError(f"undefined class {name!r}", ncol)
        tokens.expect(";")
        sub = _parse_bundle(tokens, curve, classes)
        tokens.expect(",")
        quot = _parse_bundle(tokens, curve, classes)
        tokens.expect(")")
        try:
            return Ext(classes[name], sub, quot, name=name)
        except ContractViolation as exc:
            raise LiteralError(str(exc), col) from exc
    raise LiteralError(f"expected 'line', 'sum' or 'ext', found {v or 'end of input'!r}", col)


def parse_bundle(curve, text: str, classes: dict | None = None):
    return _full(text, lambda t: _parse_bundle(t, curve, classes or {}))
