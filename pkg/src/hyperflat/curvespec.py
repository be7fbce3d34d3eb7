"""Curve specification files.

A spec is a small TOML table::

    field = "Q"            # or "Fp:1009"
    f = [1, 0, 0, 0, 0, 1] # ascending coefficients, integers or "num/den"
    hints = [[0, 1]]       # optional rational points
    seed = 0               # optional

The same keys (minus ``seed``) form the curve descriptor embedded in
certificates, so a certificate can rebuild its curve without the spec file.
"""

from __future__ import annotations

import tomli

from .curve import HyperellipticCurve
from .errors import ContractViolation, CurveValidationError
from .exact_algebra import QQ, PrimeField


def field_from_descriptor(text: str):
    if text == "Q":
        return QQ
    if isinstance(text, str) and text.startswith("Fp:"):
        try:
            p = int(text[3:])
        except ValueError as exc:
            raise CurveValidationError(f"bad prime in field descriptor {text!r}") from exc
        try:
            return PrimeField(p)
        except ContractViolation as exc:
            raise CurveValidationError(str(exc)) from exc
    raise CurveValidationError(f"field must be 'Q' or 'Fp:<prime>', got {text!r}")


def _coeff(field, v):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise CurveValidationError(f"coefficient {v!r} must be an integer or a 'num/den' string")
    try:
        return field(v)
    except ContractViolation as exc:
        raise CurveValidationError(str(exc)) from exc


def curve_from_spec(spec: dict) -> HyperellipticCurve:
    """Build a curve from a parsed spec or certificate descriptor."""
    if "field" not in spec or "f" not in spec:
        raise CurveValidationError("curve spec needs 'field' and 'f'")
    field = field_from_descriptor(spec["field"])
    f = spec["f"]
    if not isinstance(f, list) or not f:
        raise CurveValidationError("'f' must be a nonempty list of coefficients")
    coeffs = [_coeff(field, c) for c in f]
    hints = []
    for h in spec.get("hints", []):
        if not isinstance(h, list) or len(h) != 2:
            raise CurveValidationError(f"hint {h!r} must be an [x, y] pair")
        hints.append((_coeff(field, h[0]), _coeff(field, h[1])))
    return HyperellipticCurve(field, coeffs, hints)


def load_spec(path) -> dict:
    """Read a spec file; raises ``OSError`` or ``CurveValidationError``."""
    with open(path, "rb") as fh:
        try:
            spec = tomli.load(fh)
        except tomli.TOMLDecodeError as exc:
            raise CurveValidationError(f"{path}: {exc}") from exc
    seed = spec.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise CurveValidationError("'seed' must be an integer")
    return spec


def load_curve(path):
    """``(curve, seed)`` from a spec file."""
    spec = load_spec(path)
    return curve_from_spec(spec), spec.get("seed", 0)
