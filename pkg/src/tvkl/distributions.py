"""Finite discrete probability distributions.

A distribution is an ordered list of labelled atoms with nonnegative weights
summing to 1. Zero-weight atoms are kept, never pruned: support mismatch
between two distributions must stay observable downstream (it is what makes a
KL divergence infinite).
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

from .errors import (
    DuplicateLabelError,
    EmptySupportError,
    InvalidLabelError,
    NegativeWeightError,
    OutOfRangeError,
    SumToleranceError,
    TooLargeError,
    ValidationError,
)

#: Absolute tolerance on the weight sum at construction time.
SUM_TOLERANCE = 1e-9

#: Separator joining component labels of a product atom. Forbidden in user
#: labels so that product labels flatten unambiguously.
LABEL_SEPARATOR = "·"  # "·"

#: Largest number of atoms an explicit product distribution may have.
MAX_PRODUCT_ATOMS = 2**20


@dataclass(frozen=True, slots=True)
class Distribution:
    """Immutable finite discrete distribution.

    ``support`` holds pairwise-distinct atom labels; ``probs`` holds the
    aligned weights, each >= 0, summing to 1 within ``SUM_TOLERANCE``.
    Instances are safe to share across threads.
    """

    support: tuple[str, ...]
    probs: tuple[float, ...]

    def __post_init__(self):
        if not self.support:
            raise EmptySupportError("support: must contain at least one atom")
        if len(self.support) != len(self.probs):
            raise ValidationError(
                f"probs: {len(self.probs)} weights for {len(self.support)} labels"
            )
        for i, label in enumerate(self.support):
            if not isinstance(label, str):
                raise InvalidLabelError(f"support[{i}]: labels must be strings")
        if len(set(self.support)) != len(self.support):
            seen = set()
            for label in self.support:
                if label in seen:
                    raise DuplicateLabelError(f"support: duplicate label {label!r}")
                seen.add(label)
        for i, w in enumerate(self.probs):
            if not isinstance(w, float) or not math.isfinite(w):
                raise NegativeWeightError(
                    f"probs[{i}]: weight {w!r} is not a finite number"
                )
            if w < 0.0:
                raise NegativeWeightError(f"probs[{i}]: negative weight {w!r}")
        total = math.fsum(self.probs)
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise SumToleranceError(total, SUM_TOLERANCE)

    def __len__(self) -> int:
        return len(self.support)


def _default_labels(n: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(n))


def new_distribution(
    weights,
    labels=None,
    renormalize: bool = False,
) -> Distribution:
    """Build a distribution from raw weights.

    Weights must be finite and nonnegative. With ``renormalize`` each weight
    is divided by the total, otherwise the total must already be within
    ``SUM_TOLERANCE`` of 1. Labels default to "0", "1", ... and may not
    contain the reserved product separator. Zero weights are retained.
    """
    ws = [float(w) for w in weights]
    if not ws:
        raise EmptySupportError("weights: must be non-empty")
    for i, w in enumerate(ws):
        if not math.isfinite(w):
            raise NegativeWeightError(f"weights[{i}]: {w!r} is not finite")
        if w < 0.0:
            raise NegativeWeightError(f"weights[{i}]: negative weight {w!r}")
    if labels is None:
        labs = _default_labels(len(ws))
    else:
        labs = tuple(labels)
        if len(labs) != len(ws):
            raise ValidationError(
                f"labels: {len(labs)} labels for {len(ws)} weights"
            )
        for i, label in enumerate(labs):
            if not isinstance(label, str):
                raise InvalidLabelError(f"labels[{i}]: labels must be strings")
            if LABEL_SEPARATOR in label:
                raise InvalidLabelError(
                    f"labels[{i}]: {label!r} contains the reserved separator "
                    f"{LABEL_SEPARATOR!r}"
                )
    if renormalize:
        total = math.fsum(ws)
        if total <= 0.0:
            raise SumToleranceError(total, SUM_TOLERANCE)
        ws = [w / total for w in ws]
    return Distribution(labs, tuple(ws))


def bernoulli(p: float) -> Distribution:
    """Two-atom distribution with weight ``p`` on label "1" and ``1 - p`` on
    label "0". Boundary values keep their zero atom."""
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise OutOfRangeError(f"p: {p!r} not in [0, 1]")
    return Distribution(("1", "0"), (p, 1.0 - p))


@dataclass(frozen=True, slots=True)
class ProductSpec:
    """``power`` independent copies of ``base``."""

    base: Distribution
    power: int

    def __post_init__(self):
        if not isinstance(self.power, int) or self.power < 1:
            raise OutOfRangeError(f"power: {self.power!r} must be a positive integer")


def tensor_power(spec: ProductSpec) -> Distribution:
    """Materialise the product distribution of ``spec.power`` independent
    copies of ``spec.base``.

    Atom labels are the component labels joined by the reserved separator;
    atom weights are products of component weights. Refuses supports larger
    than ``MAX_PRODUCT_ATOMS``; divergences of larger powers should be
    obtained through KL additivity instead of materialisation.
    """
    base, n = spec.base, spec.power
    k = len(base.support)
    if k**n > MAX_PRODUCT_ATOMS:
        raise TooLargeError(
            f"power: {k}^{n} atoms exceed the cap of {MAX_PRODUCT_ATOMS}; "
            "use KL additivity instead of materialising"
        )
    labels = []
    weights = []
    for combo in itertools.product(range(k), repeat=n):
        labels.append(LABEL_SEPARATOR.join(base.support[i] for i in combo))
        weights.append(math.prod(base.probs[i] for i in combo))
    return Distribution(tuple(labels), tuple(weights))


# ---------------------------------------------------------------------------
# File format: JSON object with "probs" (required) and "support" (optional).
# Emission relies on repr-based shortest round-trip floats, so a dump/load
# cycle reproduces weights bit-exactly.
# ---------------------------------------------------------------------------


def from_json_dict(obj, renormalize: bool = False) -> Distribution:
    if not isinstance(obj, dict):
        raise ValidationError("distribution file: top level must be a JSON object")
    if "probs" not in obj:
        raise ValidationError('probs: missing required key "probs"')
    probs = obj["probs"]
    if not isinstance(probs, list):
        raise ValidationError("probs: must be an array of numbers")
    for i, w in enumerate(probs):
        if isinstance(w, bool) or not isinstance(w, (int, float)):
            raise ValidationError(f"probs[{i}]: {w!r} is not a number")
    support = obj.get("support")
    if support is not None:
        if not isinstance(support, list):
            raise ValidationError("support: must be an array of strings")
        for i, label in enumerate(support):
            if not isinstance(label, str):
                raise ValidationError(f"support[{i}]: {label!r} is not a string")
    return new_distribution(probs, support, renormalize=renormalize)


def to_json_dict(dist: Distribution) -> dict:
    return {"support": list(dist.support), "probs": list(dist.probs)}


def loads_distribution(text: str, renormalize: bool = False) -> Distribution:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"distribution file: invalid JSON ({exc})") from exc
    return from_json_dict(obj, renormalize=renormalize)


def dumps_distribution(dist: Distribution) -> str:
    return json.dumps(to_json_dict(dist))


def load_distribution(path, renormalize: bool = False) -> Distribution:
    with open(path, encoding="utf-8") as fh:
        return loads_distribution(fh.read(), renormalize=renormalize)


def dump_distribution(dist: Distribution, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_distribution(dist))
        fh.write("\n")
