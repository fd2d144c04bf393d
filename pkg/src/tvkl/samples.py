"""Sample-complexity lower bounds for distinguishing a fair coin from an
epsilon-biased one.

An n-toss tester that is wrong with probability at most delta on both
hypotheses forces TV(P0^n, P1^n) >= 1 - 2 delta, where P0 = Bernoulli(1/2)
and P1 = Bernoulli(1/2 + epsilon). Combining that with a TV upper bound in
terms of KL, plus KL additivity across the n independent tosses
(KL_n = n * kl_per_toss), turns each forward bound into a lower bound on n:

    pinsker route    n >= 2 (1 - 2 delta)^2 / log(1/(1 - 4 eps^2))
    bh route         n >= 2 log(1/(1 - (1-2 delta)^2)) / log(1/(1 - 4 eps^2))
    tsybakov route   n >= log(1/(4 delta)) / kl_per_toss   (0 for delta >= 1/4)

The pinsker route saturates as delta -> 0 (its numerator is capped by 2),
while the bh and tsybakov routes grow like log(1/delta): only they witness
the full log(1/delta)/eps^2 rate. A commonly quoted simplification of the
bh route, log(1/(2 delta)) / (2 eps^2), is NOT below the exact bh expression
for all parameters; reports expose both and flag whenever the simplified
form exceeds the exact one rather than asserting a chain between them.

All routes return exact reals; rounding up to whole tosses is left to
presentation layers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import OutOfRangeError

#: Flag set on a report when the simplified bh closed form exceeds the exact
#: bh route at the queried parameters.
FLAG_SIMPLIFIED_EXCEEDS_EXACT = "simplified_exceeds_exact"

#: Flag set on a report when delta >= 1/4 makes the tsybakov route vacuous.
FLAG_TSYBAKOV_VACUOUS = "tsybakov_vacuous"


@dataclass(frozen=True, slots=True)
class SampleComplexityQuery:
    """Bias epsilon in (0, 1/3) and error budget delta in (0, 1/2), both
    strict: the closed forms below are only valid inside the open box."""

    epsilon: float
    delta: float

    def __post_init__(self):
        e, d = float(self.epsilon), float(self.delta)
        if not (0.0 < e < 1.0 / 3.0):
            raise OutOfRangeError(f"epsilon: {e!r} not in (0, 1/3)")
        if not (0.0 < d < 0.5):
            raise OutOfRangeError(f"delta: {d!r} not in (0, 1/2)")


@dataclass(frozen=True, slots=True)
class SampleComplexityReport:
    query: SampleComplexityQuery
    required_tv: float
    kl_per_toss: float
    n_pinsker: float
    n_bh: float
    n_tsybakov: float
    n_bh_simplified: float
    notes: tuple[str, ...]


def required_tv(query: SampleComplexityQuery) -> float:
    """Total variation the n-fold pair must reach: 1 - 2 delta."""
    return 1.0 - 2.0 * query.delta


def kl_per_toss(epsilon: float) -> float:
    """KL(Bernoulli(1/2) || Bernoulli(1/2 + eps)) = log(1/(1 - 4 eps^2)) / 2.

    Matches the generic two-point divergence on the same pair to 1e-15.
    """
    epsilon = float(epsilon)
    if not (0.0 < epsilon < 1.0 / 3.0):
        raise OutOfRangeError(f"epsilon: {epsilon!r} not in (0, 1/3)")
    return -0.5 * math.log1p(-4.0 * epsilon * epsilon)


def min_samples_pinsker(query: SampleComplexityQuery) -> float:
    """Pinsker route: 2 (1 - 2 delta)^2 / log(1/(1 - 4 eps^2)).

    Capped at 2 / log(1/(1 - 4 eps^2)) no matter how small delta gets, so
    this route can never certify more than a 1/eps^2 rate.
    """
    t = required_tv(query)
    return 2.0 * t * t / _log_inv(query.epsilon)


def min_samples_bh(query: SampleComplexityQuery) -> float:
    """BH route: 2 log(1/(1 - (1-2 delta)^2)) / log(1/(1 - 4 eps^2)).

    With 1 - (1-2 delta)^2 = 4 delta (1 - delta) the numerator is computed
    cancellation-free, keeping full accuracy down to delta near 0, where the
    route grows without bound like log(1/delta).
    """
    d = query.delta
    numerator = -(math.log(4.0) + math.log(d) + math.log1p(-d))
    return 2.0 * numerator / _log_inv(query.epsilon)


def min_samples_tsybakov(query: SampleComplexityQuery) -> float:
    """Tsybakov route: log(1/(4 delta)) / kl_per_toss, floored at 0.

    From 1 - 2 delta <= 1 - exp(-n kl)/2. Vacuous (0) for delta >= 1/4.
    """
    d = query.delta
    if d >= 0.25:
        return 0.0
    return max(0.0, -(math.log(4.0) + math.log(d)) / kl_per_toss(query.epsilon))


def _log_inv(epsilon: float) -> float:
    # log(1/(1 - 4 eps^2)) = 2 * kl_per_toss(eps)
    return -math.log1p(-4.0 * epsilon * epsilon)


def report(query: SampleComplexityQuery) -> SampleComplexityReport:
    """Assemble every route plus the simplified bh closed form.

    ``notes`` collects flags: one when the simplified form exceeds the exact
    bh route (so the two cannot be chained in that direction at these
    parameters), one when the tsybakov route is vacuous.
    """
    n_bh = min_samples_bh(query)
    n_simplified = math.log(1.0 / (2.0 * query.delta)) / (2.0 * query.epsilon**2)
    notes = []
    if n_simplified > n_bh:
        notes.append(FLAG_SIMPLIFIED_EXCEEDS_EXACT)
    if query.delta >= 0.25:
        notes.append(FLAG_TSYBAKOV_VACUOUS)
    return SampleComplexityReport(
        query=query,
        required_tv=required_tv(query),
        kl_per_toss=kl_per_toss(query.epsilon),
        n_pinsker=min_samples_pinsker(query),
        n_bh=n_bh,
        n_tsybakov=min_samples_tsybakov(query),
        n_bh_simplified=n_simplified,
        notes=tuple(notes),
    )
