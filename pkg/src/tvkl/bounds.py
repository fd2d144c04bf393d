"""Closed-form bounds between total variation and KL divergence.

Forward bounds map a KL value to an upper bound on TV:

    pinsker    sqrt(kl / 2)                      vacuous for kl >= 2
    bh         sqrt(1 - exp(-kl))                never vacuous
    tsybakov   1 - exp(-kl) / 2                  in [1/2, 1)
    weak_bh    sqrt((1 - exp(-kl)) / (1 - exp(-2)))   vacuous for kl >= 2
    trivial    1

Inverse bounds map a TV value to a lower bound on KL:

    pinsker    2 t^2
    bh         -log(1 - t^2)
    tsybakov   max(0, -log(2 (1 - t)))           kicks in only for t >= 1/2
    vajda      log((1+t)/(1-t)) - 2t/(1+t)       tighter than the bh inverse

Forward outputs are reported raw, never clamped to 1; a ``vacuous`` flag
marks outputs >= 1 instead. 1 - exp(-x) is always computed through expm1 so
that small arguments keep full relative accuracy. For finite kl the bh and
tsybakov curves are mathematically inside [0, 1); where the double rounds to
exactly 1.0 (kl above roughly 37) the value is nudged to the largest double
below 1, preserving the open interval and the strict order against the
trivial bound.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import OutOfRangeError

_ONE_BELOW = math.nextafter(1.0, 0.0)
_ONE_MINUS_EXP_M2 = -math.expm1(-2.0)

#: Multiplier of the weak variant, 1 / sqrt(1 - e^-2), about 1.075.
WEAK_BH_FACTOR = 1.0 / math.sqrt(_ONE_MINUS_EXP_M2)

#: Bisection tolerance (in t) used to invert the vajda lower bound.
VAJDA_BISECTION_TOL = 1e-12


class BoundId(enum.Enum):
    PINSKER = "pinsker"
    BH = "bh"
    TSYBAKOV = "tsybakov"
    WEAK_BH = "weak_bh"
    VAJDA = "vajda"
    TRIVIAL = "trivial"


#: Tie-break preference when several forward bounds coincide.
BEST_TIE_ORDER = (
    BoundId.BH,
    BoundId.TSYBAKOV,
    BoundId.PINSKER,
    BoundId.WEAK_BH,
    BoundId.TRIVIAL,
)


@dataclass(frozen=True, slots=True)
class BoundEvaluation:
    """One bound applied to one input. ``vacuous`` is True iff a forward
    output is >= 1 (the bh bound is never flagged: its limit value 1 is only
    reached at kl = +inf)."""

    bound: BoundId
    input: float
    output: float
    vacuous: bool


def _check_kl(kl: float) -> float:
    kl = float(kl)
    if math.isnan(kl) or kl < 0.0:
        raise OutOfRangeError(f"kl: {kl!r} must be >= 0")
    return kl


def _check_tv(tv: float) -> float:
    tv = float(tv)
    if not (0.0 <= tv <= 1.0):
        raise OutOfRangeError(f"tv: {tv!r} not in [0, 1]")
    return tv


# -- forward curves ---------------------------------------------------------


def _pinsker_forward(kl: float) -> float:
    return math.sqrt(kl / 2.0)


def _bh_forward(kl: float) -> float:
    if math.isinf(kl):
        return 1.0
    value = math.sqrt(-math.expm1(-kl))
    return value if value < 1.0 else _ONE_BELOW


def _tsybakov_forward(kl: float) -> float:
    if math.isinf(kl):
        return 1.0
    value = 0.5 - 0.5 * math.expm1(-kl)
    return value if value < 1.0 else _ONE_BELOW


def _weak_bh_forward(kl: float) -> float:
    # Ratio inside the sqrt makes the output exactly 1.0 at kl = 2.
    return math.sqrt(-math.expm1(-kl) / _ONE_MINUS_EXP_M2)


def _trivial_forward(kl: float) -> float:
    return 1.0


_FORWARD = {
    BoundId.PINSKER: _pinsker_forward,
    BoundId.BH: _bh_forward,
    BoundId.TSYBAKOV: _tsybakov_forward,
    BoundId.WEAK_BH: _weak_bh_forward,
    BoundId.VAJDA: None,  # filled in below, needs the inverse machinery
    BoundId.TRIVIAL: _trivial_forward,
}


def forward_value(bound: BoundId, kl: float) -> float:
    """Raw forward curve value, same code path the evaluations use."""
    return _FORWARD[bound](_check_kl(kl))


def _evaluate_forward(bound: BoundId, kl: float) -> BoundEvaluation:
    kl = _check_kl(kl)
    output = _FORWARD[bound](kl)
    vacuous = False if bound is BoundId.BH else output >= 1.0
    return BoundEvaluation(bound, kl, output, vacuous)


def tv_upper_pinsker(kl: float) -> BoundEvaluation:
    """TV <= sqrt(kl / 2). Grows without bound; vacuous once kl >= 2."""
    return _evaluate_forward(BoundId.PINSKER, kl)


def tv_upper_bh(kl: float) -> BoundEvaluation:
    """TV <= sqrt(1 - exp(-kl)). Strictly below 1 for every finite kl."""
    return _evaluate_forward(BoundId.BH, kl)


def tv_upper_tsybakov(kl: float) -> BoundEvaluation:
    """TV <= 1 - exp(-kl)/2. Never exceeds 1 but never drops below 1/2."""
    return _evaluate_forward(BoundId.TSYBAKOV, kl)


def tv_upper_weak_bh(kl: float) -> BoundEvaluation:
    """TV <= sqrt(1 - exp(-kl)) / sqrt(1 - exp(-2)).

    Derivable from the pinsker bound alone; the leading factor makes it
    vacuous exactly where pinsker is (kl >= 2) and strictly weaker than
    pinsker below that."""
    return _evaluate_forward(BoundId.WEAK_BH, kl)


def tv_upper_best(kl: float) -> BoundEvaluation:
    """Smallest of the closed-form forward bounds (and the trivial 1).

    Ties break toward bh, then tsybakov, pinsker, weak_bh, trivial.
    """
    kl = _check_kl(kl)
    best_id = None
    best_out = math.inf
    for bound in BEST_TIE_ORDER:
        out = _FORWARD[bound](kl)
        if out < best_out:
            best_id, best_out = bound, out
    return BoundEvaluation(best_id, kl, best_out, best_out >= 1.0)


# -- inverse curves ---------------------------------------------------------


def kl_lower_pinsker(tv: float) -> float:
    """KL >= 2 t^2. Caps out at 2: no TV value can force KL above that."""
    tv = _check_tv(tv)
    return 2.0 * tv * tv


def kl_lower_bh(tv: float) -> float:
    """KL >= -log(1 - t^2), computed as -(log1p(-t) + log1p(t)).

    The factored form keeps full accuracy as t approaches 1, where the
    bound diverges; t = 1 gives +inf.
    """
    tv = _check_tv(tv)
    if tv == 1.0:
        return math.inf
    return -(math.log1p(-tv) + math.log1p(tv))


def kl_lower_tsybakov(tv: float) -> float:
    """KL >= -log(2 (1 - t)), floored at 0.

    The raw inversion is negative for t < 1/2, where it carries no
    information; t = 1 gives +inf.
    """
    tv = _check_tv(tv)
    if tv == 1.0:
        return math.inf
    return max(0.0, -(math.log(2.0) + math.log1p(-tv)))


def kl_lower_vajda(tv: float) -> float:
    """KL >= log((1 + t) / (1 - t)) - 2 t / (1 + t).

    Strictly increasing from 0 at t = 0 to +inf as t -> 1; everywhere at
    least as large as the bh inverse, and matching 2 t^2 to third order at
    the origin. Accepts t = 1 (returns +inf); rejects t outside [0, 1].
    """
    tv = _check_tv(tv)
    if tv == 1.0:
        return math.inf
    return math.log1p(tv) - math.log1p(-tv) - 2.0 * tv / (1.0 + tv)


_INVERSE = {
    BoundId.PINSKER: kl_lower_pinsker,
    BoundId.BH: kl_lower_bh,
    BoundId.TSYBAKOV: kl_lower_tsybakov,
    BoundId.VAJDA: kl_lower_vajda,
}

#: Inverse bounds in report order.
INVERSE_ORDER = (BoundId.PINSKER, BoundId.BH, BoundId.TSYBAKOV, BoundId.VAJDA)


def inverse_value(bound: BoundId, tv: float) -> float:
    """Raw inverse curve value, same code path the evaluations use."""
    return _INVERSE[bound](tv)


def kl_lower(bound: BoundId, tv: float) -> BoundEvaluation:
    """Evaluate one inverse bound; inverse outputs are never vacuous."""
    tv = _check_tv(tv)
    return BoundEvaluation(bound, tv, _INVERSE[bound](tv), False)


_VAJDA_BRACKET_TOP = 1.0 - 1e-15


def tv_upper_from_vajda(kl: float) -> float:
    """Invert the vajda lower bound: the unique t in [0, 1) whose vajda
    value equals ``kl``, by bisection to ``VAJDA_BISECTION_TOL`` in t.

    There is no closed form; monotonicity makes bisection exact enough and
    derivative-free. +inf maps to 1. The result never exceeds the bh
    forward bound by more than bisection slack.
    """
    kl = _check_kl(kl)
    if kl == 0.0:
        return 0.0
    if math.isinf(kl):
        return 1.0
    lo, hi = 0.0, _VAJDA_BRACKET_TOP
    if kl_lower_vajda(hi) <= kl:
        # Root lies within one ulp of 1; the bracket top already satisfies
        # the tolerance.
        return hi
    while hi - lo > VAJDA_BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        if kl_lower_vajda(mid) < kl:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


_FORWARD[BoundId.VAJDA] = tv_upper_from_vajda

#: Forward bounds in report order.
FORWARD_ORDER = (
    BoundId.PINSKER,
    BoundId.BH,
    BoundId.TSYBAKOV,
    BoundId.WEAK_BH,
    BoundId.VAJDA,
    BoundId.TRIVIAL,
)


def compare_bounds(kl: float) -> list[BoundEvaluation]:
    """Evaluate every forward bound (vajda by numeric inversion, plus the
    trivial 1) at one KL value, each tagged with its vacuity."""
    kl = _check_kl(kl)
    return [_evaluate_forward(bound, kl) for bound in FORWARD_ORDER]
