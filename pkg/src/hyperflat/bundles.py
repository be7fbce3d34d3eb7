"""Symbolic vector bundles and the Atiyah-Weil flatness rules.

Bundles are immutable expression trees built from line bundles, direct sums
and rank-2 extensions of line bundles. :func:`is_flat` applies rules R1-R6 in
order and records every application in a trace; :func:`replay_trace`
re-derives the verdict from the trace against the expression alone.

Over a finite field the verdicts are formal: a trace asserts that the
algebraic preconditions of a rule hold, nothing analytic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cohomology import H1Class, is_zero_class
from .divisor import Divisor
from .errors import ContractViolation

FLAT = "Flat"
NOT_FLAT = "NotFlat"
UNKNOWN = "Unknown"

RULES = {
    "R1": "Atiyah-Weil criterion: a flat bundle has degree zero",
    "R2": "degree-zero line bundle carries a flat connection",
    "R3": "Atiyah-Weil criterion: every direct summand of a flat bundle has degree zero",
    "R4": "direct sum of flat bundles is flat",
    "R5": "a split extension is the direct sum of its sub and quotient",
    "R6": "non-split rank-2 extension of degree zero with positive-degree sub is indecomposable, hence flat",
}


class Bundle:
    __slots__ = ()

    def __add__(self, other):
        return DirectSum([self, other])


class Line(Bundle):
    """``O(D)`` for an explicit divisor representative ``D``."""

    __slots__ = ("divisor",)

    def __init__(self, divisor: Divisor):
        if not isinstance(divisor, Divisor):
            raise ContractViolation("Line expects a Divisor")
        self.divisor = divisor

    def __eq__(self, other):
        return isinstance(other, Line) and self.divisor == other.divisor

    def __hash__(self):
        return hash(("line", self.divisor))

    def __repr__(self):
        return f"Line({self.divisor.format()})"


class DirectSum(Bundle):
    __slots__ = ("summands",)

    def __init__(self, summands):
        summands = tuple(summands)
        if not summands:
            raise ContractViolation("a direct sum needs at least one summand")
        for s in summands:
            if not isinstance(s, Bundle):
                raise ContractViolation(f"not a bundle expression: {s!r}")
        self.summands = summands

    def __eq__(self, other):
        return isinstance(other, DirectSum) and self.summands == other.summands

    def __hash__(self):
        return hash(("sum", self.summands))

    def __repr__(self):
        return f"DirectSum({list(self.summands)!r})"


class Ext(Bundle):
    """Extension ``0 -> sub -> E -> quot -> 0`` of line bundles.

    The class lives in ``H^1(Hom(quot, sub)) = H^1(O(A - B))`` for
    ``sub = O(A)``, ``quot = O(B)``, and is stored over exactly ``A - B``.
    """

    __slots__ = ("cls", "sub", "quot", "name", "_split")

    def __init__(self, cls: H1Class, sub: Bundle, quot: Bundle, name=None):
        if not isinstance(cls, H1Class):
            raise ContractViolation("Ext expects an H1Class")
        if not isinstance(sub, Line) or not isinstance(quot, Line):
            raise ContractViolation("Ext is supported only for line-bundle sub and quotient")
        hom = sub.divisor - quot.divisor
        if cls.divisor != hom:
            raise ContractViolation(
                f"extension class lives over {cls.divisor.format()}, expected {hom.format()}"
            )
        self.cls = cls
        self.sub = sub
        self.quot = quot
        self.name = name
        self._split = None

    def __eq__(self, other):
        return (
            isinstance(other, Ext)
            and self.cls == other.cls
            and self.sub == other.sub
            and self.quot == other.quot
        )

    def __hash__(self):
        return hash(("ext", self.cls, self.sub, self.quot))

    def __repr__(self):
        return f"Ext({self.cls!r}; {self.sub!r}, {self.quot!r})"


def rank(b: Bundle) -> int:
    if isinstance(b, Line):
        return 1
    if isinstance(b, DirectSum):
        return sum(rank(s) for s in b.summands)
    return rank(b.sub) + rank(b.quot)


def degree(b: Bundle) -> int:
    if isinstance(b, Line):
        return b.divisor.degree
    if isinstance(b, DirectSum):
        return sum(degree(s) for s in b.summands)
    return degree(b.sub) + degree(b.quot)


def determinant(b: Bundle) -> Divisor:
    """A divisor representing ``det b``."""
    if isinstance(b, Line):
        return b.divisor
    if isinstance(b, DirectSum):
        out = determinant(b.summands[0])
        for s in b.summands[1:]:
            out = out + determinant(s)
        return out
    return determinant(b.sub) + determinant(b.quot)


def is_split(e: Ext) -> bool:
    if not isinstance(e, Ext):
        raise ContractViolation("is_split expects an Ext node")
    if e._split is None:
        e._split = is_zero_class(e.cls.curve, e.cls)[0]
    return e._split


# ------------------------------------------------------------------ verdicts


@dataclass(frozen=True)
class Step:
    """One rule application at the node addressed by ``path``."""

    rule: str
    path: str
    facts: dict
    verdict: str

    def to_json(self):
        return {
            "rule": self.rule,
            "anchor": RULES.get(self.rule, ""),
            "path": self.path,
            "facts": dict(self.facts),
            "verdict": self.verdict,
        }

    @classmethod
    def from_json(cls, d):
        return cls(d["rule"], d["path"], dict(d["facts"]), d["verdict"])


@dataclass(frozen=True)
class FlatnessVerdict:
    verdict: str
    trace: tuple = field(default_factory=tuple)
    reason: str = ""

    def to_json(self):
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "trace": [s.to_json() for s in self.trace],
        }


def _kind(b):
    return {Line: "line", DirectSum: "sum", Ext: "ext"}[type(b)]


def node_at(b: Bundle, path: str) -> Bundle:
    """Resolve a trace path. ``split`` names ``DirectSum(sub, quot)`` of an Ext."""
    parts = path.split(".")
    if parts[0] != "root":
        raise ContractViolation(f"trace path {path!r} must start at root")
    for p in parts[1:]:
        if p == "split" and isinstance(b, Ext):
            b = DirectSum([b.sub, b.quot])
        elif p.isdigit() and isinstance(b, DirectSum) and int(p) < len(b.summands):
            b = b.summands[int(p)]
        else:
            raise ContractViolation(f"trace path {path!r} does not address a node")
    return b


def _decide(b, path, steps):
    d = degree(b)
    if d != 0:
        steps.append(Step("R1", path, {"kind": _kind(b), "degree": d}, NOT_FLAT))
        return NOT_FLAT
    if isinstance(b, Line):
        steps.append(Step("R2", path, {"kind": "line", "degree": 0}, FLAT))
        return FLAT
    if isinstance(b, DirectSum):
        verdicts = [_decide(s, f"{path}.{i}", steps) for i, s in enumerate(b.summands)]
        if NOT_FLAT in verdicts:
            i = verdicts.index(NOT_FLAT)
            facts = {"kind": "sum", "summand": f"{path}.{i}", "summand_degree": degree(b.summands[i])}
            steps.append(Step("R3", path, facts, NOT_FLAT))
            return NOT_FLAT
        if all(v == FLAT for v in verdicts):
            facts = {"kind": "sum", "summands": [f"{path}.{i}" for i in range(len(verdicts))]}
            steps.append(Step("R4", path, facts, FLAT))
            return FLAT
        return UNKNOWN
    if is_split(b):
        v = _decide(DirectSum([b.sub, b.quot]), f"{path}.split", steps)
        steps.append(Step("R5", path, {"kind": "ext", "class_is_zero": True, "split": f"{path}.split"}, v))
        return v
    r, ds = rank(b), degree(b.sub)
    if r == 2 and ds > 0:
        facts = {"kind": "ext", "class_is_zero": False, "rank": r, "degree": d, "sub_degree": ds}
        steps.append(Step("R6", path, facts, FLAT))
        return FLAT
    return UNKNOWN


def is_flat(b: Bundle) -> FlatnessVerdict:
    """Apply rules R1-R6; ``Unknown`` means no rule licenses a verdict."""
    steps = []
    v = _decide(b, "root", steps)
    if v == UNKNOWN:
        return FlatnessVerdict(UNKNOWN, tuple(steps), "no rule applies")
    return FlatnessVerdict(v, tuple(steps))


class TraceError(Exception):
    """A trace step is not justified by the expression."""


def replay_trace(b: Bundle, verdict: FlatnessVerdict) -> str:
    """Re-derive the root verdict from the trace, checking every fact against ``b``.

    Raises :class:`TraceError` on an unjustified step and returns the
    verdict the trace establishes for ``root`` (``Unknown`` if none).
    """
    concluded = {}
    for s in verdict.trace:
        node = node_at(b, s.path)
        if s.facts.get("kind") != _kind(node):
            raise TraceError(f"{s.path}: node kind mismatch")
        if s.rule == "R1":
            if s.facts["degree"] != degree(node) or degree(node) == 0:
                raise TraceError(f"{s.path}: R1 needs a nonzero degree")
            out = NOT_FLAT
        elif s.rule == "R2":
            if not isinstance(node, Line) or degree(node) != 0:
                raise TraceError(f"{s.path}: R2 needs a degree-zero line")
            out = FLAT
        elif s.rule == "R3":
            child = s.facts["summand"]
            if not child.startswith(s.path + ".") or concluded.get(child) != NOT_FLAT:
                raise TraceError(f"{s.path}: R3 cites {child} which is not NotFlat")
            node_at(b, child)
            out = NOT_FLAT
        elif s.rule == "R4":
            kids = [f"{s.path}.{i}" for i in range(len(node.summands))]
            if s.facts["summands"] != kids or any(concluded.get(k) != FLAT for k in kids):
                raise TraceError(f"{s.path}: R4 needs every summand Flat")
            out = FLAT
        elif s.rule == "R5":
            if not is_split(node):
                raise TraceError(f"{s.path}: R5 needs a zero class")
            out = concluded.get(f"{s.path}.split", UNKNOWN)
            if out == UNKNOWN:
                raise TraceError(f"{s.path}: R5 split form has no verdict")
        elif s.rule == "R6":
            if is_split(node) or rank(node) != 2 or degree(node) != 0 or degree(node.sub) <= 0:
                raise TraceError(f"{s.path}: R6 preconditions fail")
            if s.facts["sub_degree"] != degree(node.sub):
                raise TraceError(f"{s.path}: R6 sub degree mismatch")
            out = FLAT
        else:
            raise TraceError(f"unknown rule {s.rule!r}")
        if out != s.verdict:
            raise TraceError(f"{s.path}: {s.rule} yields {out}, trace says {s.verdict}")
        concluded[s.path] = out
    return concluded.get("root", UNKNOWN)
