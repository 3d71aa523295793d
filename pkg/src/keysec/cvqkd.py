"""Continuous-variable QKD monitoring arithmetic.

Signal-level bookkeeping for an intercept-resend check: the users watch
the output level ``S*T`` of a source of ``S`` photons through
transmittance ``T``, with fractional uncertainties ``a`` (source) and
``b`` (transmittance).  Combined they blur the expected level by the
relative factor ``a + b - a*b = 1 - (1-a)(1-b)``, and that blur is what
an attacker's disturbance has to clear before anyone can see it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .numerics import Number, ValidationError

__all__ = [
    "CvParams",
    "Uncertainty",
    "DetectabilityReport",
    "TradeoffPoint",
    "VERDICT_LOSS",
    "VERDICT_MASKED",
    "VERDICT_DETECTABLE",
    "output_uncertainty",
    "detectability_verdict",
    "false_alarm_tradeoff",
]

VERDICT_LOSS = "undetectable_loss_limit"
VERDICT_MASKED = "masked_by_uncertainty"
VERDICT_DETECTABLE = "potentially_detectable"


@dataclass(frozen=True)
class CvParams:
    """Source photon number ``s``, transmittance ``t``, and their fractional
    uncertainties ``a`` and ``b``."""

    s: float
    t: float
    a: float
    b: float

    def __post_init__(self):
        if not self.s > 0:
            raise ValidationError(f"photon number must be positive, got {self.s!r}")
        if not 0 < self.t <= 1:
            raise ValidationError(f"transmittance must lie in (0, 1], got {self.t!r}")
        for name, v in (("a", self.a), ("b", self.b)):
            if not 0 <= v < 1:
                raise ValidationError(f"fractional uncertainty {name} must lie in [0, 1), got {v!r}")


class Uncertainty(NamedTuple):
    relative: float
    absolute: float


class DetectabilityReport(NamedTuple):
    verdict: str
    loss_limited: bool
    masked: bool


class TradeoffPoint(NamedTuple):
    threshold: float
    false_alarm_probability: float
    miss_probability: float


def output_uncertainty(p: CvParams) -> Uncertainty:
    """Combined output blur: relative ``a + b - ab``, absolute ``(a+b-ab)*S*T``."""
    relative = p.a + p.b - p.a * p.b
    return Uncertainty(relative=relative, absolute=relative * p.s * p.t)


def detectability_verdict(
    p: CvParams, loss_threshold: float = 0.5, masking_threshold: float = 0.25
) -> DetectabilityReport:
    """Which impossibility, if any, blocks spotting an intercept-resend attack.

    Two independent conditions: output level ``S*T`` below the loss
    threshold (too little signal survives for the disturbance check to
    bind), and absolute uncertainty above the masking threshold (the
    legitimate blur swallows the attack signature).  Both flags are
    reported; when both hold the loss limit names the verdict.
    """
    for name, v in (("loss_threshold", loss_threshold), ("masking_threshold", masking_threshold)):
        if not 0 < v < 1:
            raise ValidationError(f"{name} must lie in (0, 1), got {v!r}")
    level = p.s * p.t
    loss_limited = level < loss_threshold
    masked = output_uncertainty(p).absolute > masking_threshold
    if loss_limited:
        verdict = VERDICT_LOSS
    elif masked:
        verdict = VERDICT_MASKED
    else:
        verdict = VERDICT_DETECTABLE
    return DetectabilityReport(verdict=verdict, loss_limited=loss_limited, masked=masked)


def _gauss_cdf(x: float, mean: float, sd: float) -> float:
    return 0.5 * (1.0 + math.erf((x - mean) / (sd * math.sqrt(2.0))))


def false_alarm_tradeoff(
    p: CvParams, threshold_grid: Sequence[Number], signature_shift: Number
) -> list:
    """Alarm-threshold sweep under a declared Gaussian fluctuation model.

    Modeling choice, not derived physics: the observed output level is
    Gaussian around ``S*T`` with standard deviation equal to the absolute
    uncertainty ``(a+b-ab)*S*T``, and the attack shifts the mean up by
    ``signature_shift`` (the signature magnitude is an input, not a
    prediction).  The alarm fires when the level exceeds the threshold,
    so along an ascending grid the false-alarm probability can only fall
    and the miss probability only rise.  Zero uncertainty degenerates to
    step functions.
    """
    thresholds = [float(t) for t in threshold_grid]
    if not thresholds:
        raise ValidationError("threshold grid must be non-empty")
    shift = float(signature_shift)
    if shift <= 0:
        raise ValidationError(f"attack signature shift must be positive, got {signature_shift!r}")
    mean = p.s * p.t
    sd = output_uncertainty(p).absolute
    out = []
    for thr in thresholds:
        if sd == 0.0:
            fa = 1.0 if thr < mean else 0.0
            miss = 1.0 if thr >= mean + shift else 0.0
        else:
            fa = 1.0 - _gauss_cdf(thr, mean, sd)
            miss = _gauss_cdf(thr, mean + shift, sd)
        out.append(TradeoffPoint(threshold=thr, false_alarm_probability=fa, miss_probability=miss))
    return out
