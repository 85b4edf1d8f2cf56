"""Game refinement, complexity, learning coefficient and GR tendency.

Aggregation is means-first: GR and C are computed from per-cell means of
S, N, D and B, never averaged per match.
"""

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np
import structlog

from scrabblelab.errors import DomainError
from scrabblelab.sim.match import MatchSummary

log = structlog.get_logger()

APPROPRIATE_ZONE = (0.07, 0.08)
DEFAULT_TENDENCY_EPSILON = 0.05
MIN_TENDENCY_POINTS = 4


class Tendency(Enum):
    DEC = "Dec"
    INC = "Inc"
    DEC_THEN_INC = "DecThenInc"
    INC_THEN_DEC = "IncThenDec"
    FLAT = "Flat"

    @property
    def label(self) -> str:
        """Human-readable form for tables."""
        return {
            Tendency.DEC_THEN_INC: "Dec then Inc",
            Tendency.INC_THEN_DEC: "Inc then Dec",
        }.get(self, self.value)


@dataclass(frozen=True)
class CellAggregate:
    board: int
    d: float
    p: float
    matches: int
    mean_s: float
    mean_n: float
    mean_b: float
    mean_d: float
    gr: float
    c: float


@dataclass(frozen=True)
class LearningCoefficientResult:
    """Slope m of complexity against p for one dictionary fraction, and L = m / d."""

    board: int
    d: float
    m: float
    L: float


@dataclass(frozen=True)
class SeriesSummary:
    """One (board, d) series: GR range over p, tendency and learning coefficient."""

    board: int
    d: float
    gr_min: float
    gr_max: float
    tendency: Tendency | None
    L: float | None


def game_refinement(g: float, t: float) -> float:
    """
    sqrt(G) / T, with G the successful attempts (or swings) and T the
    attempts (or game length).

    Raises:
        DomainError: If t <= 0 or g < 0
    """
    if t <= 0:
        raise DomainError("T", t, "T > 0")
    if g < 0:
        raise DomainError("G", g, "G >= 0")
    return math.sqrt(g) / t


def complexity(b: float, d: float) -> float:
    """
    D * ln(B) for average branching factor B and game length D.

    Raises:
        DomainError: If b < 1 or d < 0
    """
    if b < 1:
        raise DomainError("B", b, "B >= 1")
    if d < 0:
        raise DomainError("D", d, "D >= 0")
    return d * math.log(b)


def in_appropriate_zone(gr: float) -> bool:
    low, high = APPROPRIATE_ZONE
    return low <= gr <= high


def _ols_slope(x: np.ndarray, y: np.ndarray) -> float:
    dx = x - x.mean()
    return float(np.dot(dx, y - y.mean()) / np.dot(dx, dx))


def fit_slope(points: Sequence[tuple[float, float]]) -> float:
    """
    Ordinary least-squares slope of y on x.

    Raises:
        DomainError: If fewer than two distinct x values are given
    """
    if len({x for x, _ in points}) < 2:
        raise DomainError("points", len(points), "at least two distinct p values")
    x = np.array([p for p, _ in points], dtype=float)
    y = np.array([c for _, c in points], dtype=float)
    return _ols_slope(x, y)


def learning_coefficient(m: float, d: float) -> float:
    """L = m / d."""
    if d <= 0:
        raise DomainError("d", d, "d > 0")
    return m / d


def _sign(relative_change: float, epsilon: float) -> int:
    if relative_change > epsilon:
        return 1
    if relative_change < -epsilon:
        return -1
    return 0


def classify_tendency(
    series: Sequence[float],
    epsilon: float = DEFAULT_TENDENCY_EPSILON,
    x: Sequence[float] | None = None,
) -> Tendency:
    """
    Shape of a GR series ordered by p.

    The series is split at the point nearest the extremum of a least-squares
    quadratic (when that point is interior); each half's linear slope times
    its x-span, relative to the series' mean magnitude, is compared to
    +/- epsilon. Without an interior extremum both halves use the whole
    series' slope. A half inside the tolerance takes the other half's sign.

    Args:
        series: GR values in increasing p order
        epsilon: Relative flatness tolerance
        x: Abscissae (p values); defaults to 0, 1, 2, ...

    Raises:
        DomainError: If fewer than four points are given
    """
    n = len(series)
    if n < MIN_TENDENCY_POINTS:
        raise DomainError("series", n, f"at least {MIN_TENDENCY_POINTS} points")
    y = np.asarray(series, dtype=float)
    xs = np.arange(n, dtype=float) if x is None else np.asarray(x, dtype=float)

    scale = float(np.mean(np.abs(y)))
    if scale == 0.0:
        return Tendency.FLAT

    def relative_change(lo: int, hi: int) -> float:
        part_x, part_y = xs[lo:hi + 1], y[lo:hi + 1]
        return _ols_slope(part_x, part_y) * float(part_x[-1] - part_x[0]) / scale

    a, b, _ = np.polyfit(xs, y, 2)
    split = None
    if a != 0.0:
        vertex = -b / (2.0 * a)
        k = int(np.argmin(np.abs(xs - vertex)))
        if 1 <= k <= n - 2:
            split = k

    if split is None:
        whole = _sign(relative_change(0, n - 1), epsilon)
        left = right = whole
    else:
        left = _sign(relative_change(0, split), epsilon)
        right = _sign(relative_change(split, n - 1), epsilon)

    if left == 0:
        left = right
    if right == 0:
        right = left
    return {
        (-1, -1): Tendency.DEC,
        (1, 1): Tendency.INC,
        (-1, 1): Tendency.DEC_THEN_INC,
        (1, -1): Tendency.INC_THEN_DEC,
        (0, 0): Tendency.FLAT,
    }[(left, right)]


def aggregate_cells(rows: Iterable[MatchSummary]) -> list[CellAggregate]:
    """
    Per-cell means of S, N, D and B, then GR and C from those means.

    Mean B is the per-match mean branching weighted by each match's turns.
    Cells come back sorted by (board, d, p).
    """
    cells: dict[tuple[int, float, float], list[MatchSummary]] = {}
    for row in rows:
        cells.setdefault((row.board, row.d, row.p), []).append(row)

    aggregates = []
    for (board, d, p), matches in sorted(cells.items()):
        count = len(matches)
        mean_s = sum(m.swings for m in matches) / count
        mean_n = sum(m.total_moves for m in matches) / count
        mean_d = sum(m.game_length for m in matches) / count
        turns = sum(m.total_moves for m in matches)
        if turns > 0:
            mean_b = sum(m.mean_branching * m.total_moves for m in matches) / turns
        else:
            mean_b = sum(m.mean_branching for m in matches) / count
        aggregates.append(
            CellAggregate(
                board=board,
                d=d,
                p=p,
                matches=count,
                mean_s=mean_s,
                mean_n=mean_n,
                mean_b=mean_b,
                mean_d=mean_d,
                gr=game_refinement(mean_s, mean_n),
                c=complexity(mean_b, mean_d),
            )
        )
    return aggregates


def _series(aggregates: Iterable[CellAggregate]) -> dict[tuple[int, float], list[CellAggregate]]:
    grouped: dict[tuple[int, float], list[CellAggregate]] = {}
    for agg in aggregates:
        grouped.setdefault((agg.board, agg.d), []).append(agg)
    return {key: sorted(cells, key=lambda a: a.p) for key, cells in sorted(grouped.items())}


def learning_results(
    aggregates: Iterable[CellAggregate],
    fit_range: tuple[float, float] | None = None,
) -> list[LearningCoefficientResult]:
    """
    Complexity slope over p and learning coefficient for every (board, d).

    Series with fewer than two distinct p values inside ``fit_range`` are
    skipped with a warning.
    """
    results = []
    for (board, d), cells in _series(aggregates).items():
        points = [
            (a.p, a.c)
            for a in cells
            if fit_range is None or fit_range[0] <= a.p <= fit_range[1]
        ]
        if len({p for p, _ in points}) < 2:
            log.warning("learning_fit_skipped", board=board, d=d, points=len(points))
            continue
        m = fit_slope(points)
        results.append(LearningCoefficientResult(board, d, m, learning_coefficient(m, d)))
    return results


def tendencies(
    aggregates: Iterable[CellAggregate],
    epsilon: float = DEFAULT_TENDENCY_EPSILON,
) -> dict[tuple[int, float], Tendency | None]:
    """GR tendency per (board, d); None where the series is too short."""
    labels: dict[tuple[int, float], Tendency | None] = {}
    for key, cells in _series(aggregates).items():
        if len(cells) < MIN_TENDENCY_POINTS:
            labels[key] = None
            continue
        labels[key] = classify_tendency(
            [a.gr for a in cells], epsilon, x=[a.p for a in cells]
        )
    return labels


def series_summaries(
    aggregates: Sequence[CellAggregate],
    fit_range: tuple[float, float] | None = None,
    epsilon: float = DEFAULT_TENDENCY_EPSILON,
) -> list[SeriesSummary]:
    learning = {(r.board, r.d): r.L for r in learning_results(aggregates, fit_range)}
    labels = tendencies(aggregates, epsilon)
    summaries = []
    for (board, d), cells in _series(aggregates).items():
        grs = [a.gr for a in cells]
        summaries.append(
            SeriesSummary(
                board=board,
                d=d,
                gr_min=min(grs),
                gr_max=max(grs),
                tendency=labels[(board, d)],
                L=learning.get((board, d)),
            )
        )
    return summaries
