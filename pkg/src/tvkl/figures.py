"""Deterministic CSV curve data for the four standard bound plots.

Each figure is a uniform abscissa grid plus one column per curve, evaluated
through the exact same code paths as the bound evaluations. Values are
unclamped (the pinsker curve happily exceeds 1) and infinities are emitted
as the literal string "inf". Floats are written with repr, the shortest
round-trip decimal form, so files are byte-stable across runs and platforms.
"""

from __future__ import annotations

import enum
import math
import os
import tempfile

from .bounds import BoundId, forward_value, inverse_value
from .errors import OutOfRangeError


class FigureId(enum.Enum):
    FIG_PINSKER = "fig_pinsker"  # pinsker against the trivial bound
    FIG_FORWARD = "fig_forward"  # the forward bound family
    FIG_INVERSE = "fig_inverse"  # the inverse (lower bound on KL) family
    FIG_WEAK = "fig_weak"  # the weak bh variant against its betters


KL_RANGE = (0.0, 5.0)
TV_RANGE = (0.0, 1.0)

_FORWARD_COLUMNS = {
    FigureId.FIG_PINSKER: (BoundId.TRIVIAL, BoundId.PINSKER),
    FigureId.FIG_FORWARD: (
        BoundId.TRIVIAL,
        BoundId.PINSKER,
        BoundId.BH,
        BoundId.TSYBAKOV,
    ),
    FigureId.FIG_WEAK: (
        BoundId.TRIVIAL,
        BoundId.PINSKER,
        BoundId.BH,
        BoundId.WEAK_BH,
    ),
}

_INVERSE_COLUMNS = (BoundId.PINSKER, BoundId.BH, BoundId.TSYBAKOV)


def figure_header(figure: FigureId) -> list[str]:
    if figure is FigureId.FIG_INVERSE:
        return ["tv"] + [b.value for b in _INVERSE_COLUMNS]
    return ["kl"] + [b.value for b in _FORWARD_COLUMNS[figure]]


def figure_rows(figure: FigureId, points: int) -> list[list[float]]:
    """Curve values on a uniform grid of ``points`` abscissas (inclusive of
    both range endpoints)."""
    if points < 2:
        raise OutOfRangeError(f"points: {points!r} must be >= 2")
    rows = []
    if figure is FigureId.FIG_INVERSE:
        lo, hi = TV_RANGE
        for i in range(points):
            t = lo + (hi - lo) * i / (points - 1)
            rows.append([t] + [inverse_value(b, t) for b in _INVERSE_COLUMNS])
        return rows
    lo, hi = KL_RANGE
    curves = _FORWARD_COLUMNS[figure]
    for i in range(points):
        kl = lo + (hi - lo) * i / (points - 1)
        rows.append([kl] + [forward_value(b, kl) for b in curves])
    return rows


def _format_cell(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return repr(x)


def render_figure_csv(figure: FigureId, points: int) -> str:
    lines = [",".join(figure_header(figure))]
    for row in figure_rows(figure, points):
        lines.append(",".join(_format_cell(x) for x in row))
    return "\n".join(lines) + "\n"


def write_figure_csv(figure: FigureId, points: int, path) -> None:
    """Emit the figure to ``path`` atomically (temp file, then rename)."""
    text = render_figure_csv(figure, points)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
