"""Shared numeric plumbing: exact-rational vs float arithmetic.

Every quantity in this package lives in one of two worlds.  Exact mode
carries `fractions.Fraction` end to end, so statements like "the distance
equals the constructed offset" hold with no tolerance at all.  Float mode
uses double precision and accepts a 1e-9 slack when validating that
probabilities sum to one.

A value container (distribution, probe model, ...) infers its mode from
the types of its entries: all entries `Fraction`/`int` means rational,
anything else means float.  Mixing modes inside one container is rejected
rather than silently coerced.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, float, Fraction]

#: slack used when validating float-mode probability data
VALIDATION_TOL = 1e-9

#: environment variable consulted by the CLI when --mode is not given
MODE_ENV_VAR = "KEYSEC_NUMERIC_MODE"

MODES = ("rational", "float")


class ValidationError(ValueError):
    """Malformed or out-of-domain input."""


class InfeasibleError(ValidationError):
    """Request is well-formed but mathematically unsatisfiable."""


class ResourceLimitError(RuntimeError):
    """Exact/enumerative computation would exceed the supported size cap."""


def resolve_mode(mode: str | None = None) -> str:
    """Pick the numeric mode: explicit argument, else environment, else float."""
    if mode is None:
        mode = os.environ.get(MODE_ENV_VAR) or "float"
    if mode not in MODES:
        raise ValidationError(f"unknown numeric mode {mode!r}; expected one of {MODES}")
    return mode


def is_rational(value: Number) -> bool:
    return isinstance(value, (Fraction, int)) and not isinstance(value, bool)


def infer_mode(values: Iterable[Number]) -> str:
    """Mode of a homogeneous collection; mixed exact/float entries are an error."""
    saw_rational = saw_float = False
    for v in values:
        if is_rational(v):
            saw_rational = True
        elif isinstance(v, float):
            saw_float = True
        else:
            raise ValidationError(f"unsupported numeric entry {v!r}")
    if saw_rational and saw_float:
        raise ValidationError("entries mix exact rationals and floats; pick one backend")
    return "rational" if saw_rational else "float"


def parse_number(text: str, mode: str) -> Number:
    """Parse one scalar in the requested mode.

    Rational mode accepts ``"3/10"``, integers, and decimal literals
    (``"0.3"`` becomes exactly 3/10).  Float mode accepts anything
    ``float()`` does, plus ``num/den`` forms (rounded to double).
    """
    text = text.strip()
    try:
        if mode == "rational":
            return Fraction(text)
        try:
            return float(text)
        except ValueError:
            return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"cannot parse {text!r} as a {mode} number") from exc


def coerce_to_mode(value: Number, mode: str) -> Number:
    """Cast a scalar into the given backend (floats become exact binary rationals)."""
    if mode == "rational":
        if isinstance(value, float):
            if not math.isfinite(value):
                raise ValidationError(f"non-finite value {value!r}")
            return Fraction(value)
        return Fraction(value)
    return float(value)


def exact_sum(values: Sequence[Number]) -> Number:
    """Sum that stays exact on the rational path and compensated on the float path."""
    if values and all(is_rational(v) for v in values):
        return sum(values, Fraction(0))
    return math.fsum(values)


def format_number(value: Number) -> str:
    """Canonical string form: ``num/den`` for rationals, ``repr`` for floats."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int) and not isinstance(value, bool):
        return f"{value}/1"
    return repr(float(value))


def check_probability_vector(probs: Sequence[Number], mode: str, what: str = "distribution") -> None:
    """Entries in [0, 1] and total mass 1 (exact, or within VALIDATION_TOL)."""
    if not probs:
        raise ValidationError(f"{what} must have at least one entry")
    lo = -VALIDATION_TOL if mode == "float" else 0
    for i, p in enumerate(probs):
        if p < lo or p > 1 + VALIDATION_TOL:
            raise ValidationError(f"{what} entry {i} is {p!r}, outside [0, 1]")
    total = exact_sum(probs)
    if mode == "rational":
        if total != 1:
            raise ValidationError(f"{what} sums to {total}, not 1")
    elif abs(total - 1.0) > VALIDATION_TOL:
        raise ValidationError(f"{what} sums to {total!r}, not 1 (tolerance {VALIDATION_TOL})")
