"""``H^1(X, O(D))`` as principal parts modulo global functions.

A class is a finite system of Laurent tails, one per place, taken modulo the
local sections of ``O(D)``. It vanishes exactly when some global function
has those tails and is otherwise a section of ``O(D)`` (the Mittag-Leffler
problem), which is one exact linear solve over a Riemann-Roch space.
"""

from __future__ import annotations

from .curve import local_expansion
from .divisor import Divisor
from .errors import ContractViolation, NoNonzeroClass, SearchExhausted
from .exact_algebra import rank, solve_linear
from .riemann_roch import h1, rr_basis

TAIL_BUDGET = 100


class H1Class:
    """A principal-part system ``{place: {order: coefficient}}`` over a divisor.

    Terms of order ``>= -D[P]`` are local sections of ``O(D)`` and are dropped
    on construction, so the empty system is the zero class.
    """

    __slots__ = ("curve", "divisor", "_tails")

    def __init__(self, curve, divisor: Divisor, tails=None):
        if divisor.curve != curve:
            raise ContractViolation("ambient divisor lives on a different curve")
        clean = {}
        for P, terms in (tails or {}).items():
            K = curve.residue_field(P)[0]
            bound = -divisor[P]
            kept = {}
            for k, v in terms.items():
                if not isinstance(k, int):
                    raise ContractViolation(f"tail order {k!r} is not an integer")
                try:
                    v = K(v)
                except ContractViolation as exc:
                    raise ContractViolation(f"tail coefficient {v!r} is not in the residue field at {P}") from exc
                if k < bound and v:
                    kept[k] = v
            if kept:
                clean[P] = kept
        self.curve = curve
        self.divisor = divisor
        self._tails = clean

    @property
    def tails(self) -> dict:
        return {P: dict(t) for P, t in self._tails.items()}

    def places(self):
        return sorted(self._tails, key=lambda P: P.key())

    def is_empty(self) -> bool:
        return not self._tails

    def _same_space(self, other):
        if not isinstance(other, H1Class) or other.divisor != self.divisor:
            raise ContractViolation("classes live in different H^1 spaces")
        return other

    def __add__(self, other):
        other = self._same_space(other)
        out = self.tails
        for P, terms in other._tails.items():
            K = self.curve.residue_field(P)[0]
            cur = out.setdefault(P, {})
            for k, v in terms.items():
                cur[k] = cur.get(k, K.zero) + v
        return H1Class(self.curve, self.divisor, out)

    def __mul__(self, scalar):
        return H1Class(
            self.curve,
            self.divisor,
            {P: {k: v * scalar for k, v in t.items()} for P, t in self._tails.items()},
        )

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __eq__(self, other):
        if not isinstance(other, H1Class):
            return NotImplemented
        return self.divisor == other.divisor and self._tails == other._tails

    def __hash__(self):
        return hash((self.divisor, tuple((P, tuple(sorted(t.items()))) for P, t in self._tails.items())))

    def format(self) -> str:
        from .literals import format_tails

        return format_tails(self.curve, self._tails)

    def __repr__(self):
        return f"H1Class(over {self.divisor.format()}: {self.format()})"


def _lifted_divisor(c: H1Class) -> Divisor:
    """Smallest ``D' >= D`` whose sections can carry every tail of ``c``."""
    D = c.divisor
    for P, terms in c._tails.items():
        D = D + Divisor.place(c.curve, P, -min(terms) - c.divisor[P])
    return D


def is_zero_class(curve, c: H1Class):
    """Solve the Mittag-Leffler problem for ``c``.

    Returns ``(True, h)`` with a global function ``h`` matching every tail
    modulo ``O(D)``, or ``(False, None)``.
    """
    if not isinstance(c, H1Class) or c.curve != curve:
        raise ContractViolation("expected an H1Class on this curve")
    if c.is_empty():
        return True, curve.function(0)
    basis = rr_basis(curve, _lifted_divisor(c)).basis
    rows, rhs = [], []
    expansions = {}
    for P in c.places():
        K = curve.residue_field(P)[0]
        lo, hi = min(c._tails[P]), -c.divisor[P]
        exps = [local_expansion(curve, h, P, hi) for h in basis]
        expansions[P] = (lo, hi)
        for k in range(lo, hi):
            target = K.coords(c._tails[P].get(k, K.zero))
            cols = [K.coords(s.coefficient(k)) for s in exps]
            for r in range(len(target)):
                rows.append([col[r] for col in cols])
                rhs.append(target[r])
    sol = solve_linear(rows, rhs, curve.field).solution
    if sol is None:
        return False, None
    h = curve.function(0)
    for lam, b in zip(sol, basis):
        if lam:
            h = h + b * lam
    _check_witness(curve, c, h, expansions)
    return True, h


def _check_witness(curve, c, h, windows):
    for P, (lo, hi) in windows.items():
        K = curve.residue_field(P)[0]
        s = local_expansion(curve, h, P, hi)
        for k in range(min(s.valuation, lo), hi):
            if k < lo:
                if s.coefficient(k):
                    raise AssertionError("Mittag-Leffler witness has an extra pole")
            elif s.coefficient(k) != c._tails[P].get(k, K.zero):
                raise AssertionError("Mittag-Leffler witness does not match its tail")


def h1_dim_via_corank(curve, D: Divisor) -> int:
    """``dim H^1(O(D))`` as the corank of the principal-part map at infinity.

    With ``N`` large enough that ``H^1(O(D + N inf))`` vanishes, every class
    is represented by a tail at infinity of order in ``[-(m+N), -m-1]`` and
    the classes that vanish are the tails of ``L(D + N inf)``.
    """
    inf = curve.infinity
    N = max(1, 2 * curve.genus - 1 - D.degree)
    m = D[inf]
    basis = rr_basis(curve, D + Divisor.place(curve, inf, N)).basis
    lo, hi = -(m + N), -m
    exps = [local_expansion(curve, h, inf, hi) for h in basis]
    rows = [[s.coefficient(k) for s in exps] for k in range(lo, hi)]
    return N - (rank(rows, curve.field) if basis else 0)


def tail_candidates(curve, D: Divisor):
    """Enumeration order for :func:`nonzero_class`: single unit tails.

    Places come from ``supp(D)``, then infinity, then the curve's rational
    point hints; orders run from ``-1`` downwards past the permitted pole.
    """
    places = []
    for P in D.support() + [curve.infinity] + list(curve.hints):
        if P not in places:
            places.append(P)
    out = []
    for P in places:
        depth = max(D[P], 0) + 2 * curve.genus + 2
        for k in range(-1, -depth - 1, -1):
            if k < -D[P]:
                out.append((P, k))
    return out


def nonzero_class(curve, D: Divisor, seed: int = 0) -> H1Class:
    """First non-vanishing unit tail in the seeded enumeration order."""
    if h1(curve, D) == 0:
        raise NoNonzeroClass(f"H^1(O({D.format()})) = 0")
    cands = tail_candidates(curve, D)
    if cands:
        shift = seed % len(cands)
        cands = cands[shift:] + cands[:shift]
    for P, k in cands[:TAIL_BUDGET]:
        K = curve.residue_field(P)[0]
        c = H1Class(curve, D, {P: {k: K.one}})
        if not is_zero_class(curve, c)[0]:
            return c
    raise SearchExhausted(f"no nonzero tail among {min(len(cands), TAIL_BUDGET)} candidates")


def push_forward(curve, c: H1Class, D2: Divisor) -> H1Class:
    """The map ``H^1(O(D)) -> H^1(O(D2))`` induced by ``O(D) -> O(D2)``."""
    if not c.divisor <= D2:
        raise ContractViolation(f"{c.divisor.format()} is not <= {D2.format()}")
    return H1Class(curve, D2, c.tails)
