"""Exact divergences on finite discrete distributions.

Total variation, Kullback-Leibler (nats), Hellinger affinity, the overlap
identities, two-point closed forms, and the exhaustive subset oracle for TV.

Conventions. KL uses 0 log 0 = 0 and returns +inf exactly when p puts mass
on an atom where q has none; it is therefore a total function with values in
[0, +inf]. Two distributions are aligned by label union, missing labels
getting weight 0, so support mismatch is explicit rather than an error.
All sums run over atoms in support order through ``math.fsum``, which is an
exactly-rounded compensated sum: results are reproducible across platforms.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

from .distributions import Distribution, bernoulli
from .errors import (
    EmptyPSupportError,
    MismatchedSupportsError,
    OutOfRangeError,
    TooLargeError,
    TvklError,
)

#: KL divergences and inverse bounds take values in [0, +inf]; +inf is
#: represented by the ordinary float infinity.
DivergenceValue = float

_MIN_NORMAL = sys.float_info.min

#: Largest aligned support for the exhaustive 2^n subset enumeration.
SUBSET_ORACLE_CAP = 20


def _aligned(p: Distribution, q: Distribution):
    """Align two distributions on the union of their supports.

    Returns ``(labels, p_weights, q_weights)``. The union keeps p's label
    order and appends q-only labels in q's order; absent labels get weight 0.
    """
    if p.support == q.support:
        return p.support, p.probs, q.probs
    p_index = dict(zip(p.support, p.probs))
    q_index = dict(zip(q.support, q.probs))
    labels = list(p.support)
    labels.extend(lab for lab in q.support if lab not in p_index)
    pw = tuple(p_index.get(lab, 0.0) for lab in labels)
    qw = tuple(q_index.get(lab, 0.0) for lab in labels)
    return tuple(labels), pw, qw


def _log_ratio(a: float, b: float) -> float:
    # log(a/b) for a, b > 0: difference of logs unless one operand is
    # subnormal, where the direct ratio keeps more of the value. The ratio
    # itself can overflow or underflow when the operands straddle the
    # normal range; fall back to the log difference there.
    if a == b:
        return 0.0
    if a >= _MIN_NORMAL and b >= _MIN_NORMAL:
        return math.log(a) - math.log(b)
    ratio = a / b
    if ratio == 0.0 or math.isinf(ratio):
        return math.log(a) - math.log(b)
    return math.log(ratio)


def total_variation(p: Distribution, q: Distribution) -> float:
    """Half the L1 distance between the aligned weight vectors; in [0, 1]."""
    _, pw, qw = _aligned(p, q)
    return 0.5 * math.fsum(abs(a - b) for a, b in zip(pw, qw))


def kl_divergence(p: Distribution, q: Distribution) -> DivergenceValue:
    """KL(p || q) = sum over p's support of p(x) log(p(x)/q(x)), in nats.

    Returns +inf iff some atom has p(x) > 0 and q(x) = 0, and exactly 0.0
    when the aligned weight vectors are identical.
    """
    _, pw, qw = _aligned(p, q)
    terms = []
    for a, b in zip(pw, qw):
        if a <= 0.0:
            continue
        if b <= 0.0:
            return math.inf
        terms.append(a * _log_ratio(a, b))
    return math.fsum(terms)


def binary_tv(a: float, b: float) -> float:
    """TV between two-point distributions with success weights a and b."""
    _check_unit("a", a)
    _check_unit("b", b)
    return abs(a - b)


def binary_kl(a: float, b: float) -> DivergenceValue:
    """Closed-form KL between two-point distributions, in nats.

    Handles the boundary cases explicitly: the divergence is 0 when a == b,
    and +inf when b is degenerate while a is not.
    """
    _check_unit("a", a)
    _check_unit("b", b)
    if a == b:
        return 0.0
    if b == 0.0 or b == 1.0:
        return math.inf
    if a == 0.0:
        return -math.log1p(-b)
    if a == 1.0:
        return -math.log(b)
    return math.fsum(
        (
            a * (math.log(a) - math.log(b)),
            (1.0 - a) * (math.log1p(-a) - math.log1p(-b)),
        )
    )


def _check_unit(name: str, x: float) -> None:
    if not (0.0 <= x <= 1.0):
        raise OutOfRangeError(f"{name}: {x!r} not in [0, 1]")


def hellinger_affinity(p: Distribution, q: Distribution) -> float:
    """Sum of sqrt(p(x) q(x)); 1 exactly when p = q, 0 on disjoint supports."""
    _, pw, qw = _aligned(p, q)
    return math.fsum(
        a if a == b else math.sqrt(a) * math.sqrt(b) for a, b in zip(pw, qw)
    )


def overlap_identities(p: Distribution, q: Distribution) -> tuple[float, float]:
    """Return (sum of min(p, q), sum of max(p, q)).

    Both recover TV: 1 - min_sum = max_sum - 1 = total_variation(p, q).
    """
    _, pw, qw = _aligned(p, q)
    min_sum = math.fsum(min(a, b) for a, b in zip(pw, qw))
    max_sum = math.fsum(max(a, b) for a, b in zip(pw, qw))
    return min_sum, max_sum


@dataclass(frozen=True, slots=True)
class EventSubset:
    """Membership flags, one per atom of an aligned support."""

    flags: tuple[bool, ...]

    @classmethod
    def from_indices(cls, size: int, indices) -> EventSubset:
        chosen = set(indices)
        return cls(tuple(i in chosen for i in range(size)))

    @classmethod
    def empty(cls, size: int) -> EventSubset:
        return cls((False,) * size)

    @classmethod
    def full(cls, size: int) -> EventSubset:
        return cls((True,) * size)


def event_mass(weights, subset: EventSubset) -> float:
    """Total weight of the flagged atoms, clamped into [0, 1]."""
    if len(subset.flags) != len(weights):
        raise MismatchedSupportsError(
            f"subset: {len(subset.flags)} flags for {len(weights)} atoms"
        )
    mass = math.fsum(w for w, keep in zip(weights, subset.flags) if keep)
    return min(max(mass, 0.0), 1.0)


def tv_subset_oracle(p: Distribution, q: Distribution) -> float:
    """Exact sup over events S of p(S) - q(S), by enumerating all 2^n subsets.

    Independent of :func:`total_variation`; must agree with it to 1e-12.
    Only supports aligned sizes up to ``SUBSET_ORACLE_CAP``.
    """
    _, pw, qw = _aligned(p, q)
    n = len(pw)
    if n > SUBSET_ORACLE_CAP:
        raise TooLargeError(
            f"support: {n} atoms exceed the exhaustive cap of {SUBSET_ORACLE_CAP}"
        )
    diffs = [a - b for a, b in zip(pw, qw)]
    sums = [0.0]
    for d in diffs:
        sums.extend([s + d for s in sums])
    return max(sums)


def quantize(
    p: Distribution, q: Distribution, subset: EventSubset
) -> tuple[Distribution, Distribution]:
    """Two-point quantization by an event: (Bernoulli(p(S)), Bernoulli(q(S))).

    This is the data-processing step that reduces any pair to a binary pair;
    neither TV nor KL may grow under it.
    """
    _, pw, qw = _aligned(p, q)
    return bernoulli(event_mass(pw, subset)), bernoulli(event_mass(qw, subset))


@dataclass(frozen=True, slots=True)
class BhDecomposition:
    """Per-atom likelihood-ratio split over p's support.

    With U = q(x)/p(x) on atoms where p(x) > 0, V = (U - 1)+ and
    W = (1 - U)+ satisfy V >= 0, W >= 0, V W = 0 and (1 + V)(1 - W) = U
    atomwise, and the p-expectation of W equals TV(p, q). The p-expectation
    of V also equals TV when q puts no mass outside p's support; otherwise it
    falls short by exactly that escaped mass.
    """

    labels: tuple[str, ...]
    u: tuple[float, ...]
    v: tuple[float, ...]
    w: tuple[float, ...]
    mean_v: float
    mean_w: float


def bh_decomposition(p: Distribution, q: Distribution) -> BhDecomposition:
    """Compute the U, V, W split and verify its identities.

    Verifies, within 1e-12 (relative for large U): V W = 0 and
    (1 + V)(1 - W) = U atomwise, E_p[W] = TV(p, q), and E_p[V] = TV(p, q)
    whenever q assigns no mass outside p's support.
    """
    labels_all, pw, qw = _aligned(p, q)
    rows = [(lab, a, b) for lab, a, b in zip(labels_all, pw, qw) if a > 0.0]
    if not rows:
        raise EmptyPSupportError("p: no atom carries positive mass")
    labels = tuple(lab for lab, _, _ in rows)
    u = tuple(b / a for _, a, b in rows)
    v = tuple(max(x - 1.0, 0.0) for x in u)
    w = tuple(max(1.0 - x, 0.0) for x in u)
    mean_v = math.fsum(a * max(b / a - 1.0, 0.0) for _, a, b in rows)
    mean_w = math.fsum(a * max(1.0 - b / a, 0.0) for _, a, b in rows)

    for ui, vi, wi in zip(u, v, w):
        scale = max(1.0, abs(ui))
        if vi * wi > 1e-12 * scale:
            raise TvklError("internal: V W = 0 violated")
        if abs((1.0 + vi) * (1.0 - wi) - ui) > 1e-12 * scale:
            raise TvklError("internal: (1 + V)(1 - W) = U violated")
    tv = total_variation(p, q)
    if abs(mean_w - tv) > 1e-12:
        raise TvklError("internal: E_p[W] = TV violated")
    escaped = math.fsum(b for a, b in zip(pw, qw) if a <= 0.0)
    if escaped == 0.0 and abs(mean_v - tv) > 1e-12:
        raise TvklError("internal: E_p[V] = TV violated on dominated pair")
    return BhDecomposition(labels, u, v, w, mean_v, mean_w)
