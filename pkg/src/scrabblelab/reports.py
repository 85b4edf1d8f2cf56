"""CSV outputs, game record files, the summary table and SVG charts.

CSV headers are frozen. Floats are written with repr(), which is the
shortest exact round-trip form, so output is byte-stable and a report
rebuilt from the telemetry CSV matches the one written at simulation time.
"""

import csv
import math
from collections.abc import Iterable, Sequence
from pathlib import Path
from xml.sax.saxutils import escape

import structlog

from scrabblelab.errors import TelemetrySchemaError
from scrabblelab.metrics import (
    APPROPRIATE_ZONE,
    CellAggregate,
    LearningCoefficientResult,
    SeriesSummary,
    Tendency,
)
from scrabblelab.record import format_record
from scrabblelab.sim.match import MatchRow, MatchTelemetry

log = structlog.get_logger()

TELEMETRY_HEADER = (
    "board", "d", "p", "match", "seed", "S", "N", "D", "mean_B", "scoreA", "scoreB",
)
TURNS_HEADER = (
    "board", "d", "p", "match", "turn", "mover", "kind", "points", "legal_moves", "cumA", "cumB",
)
METRICS_HEADER = ("board", "d", "p", "matches", "mean_S", "mean_N", "mean_B", "mean_D", "GR", "C")
LEARNING_HEADER = ("board", "d", "m", "L", "tendency")

TELEMETRY_FILE = "telemetry.csv"
TURNS_FILE = "turns.csv"
METRICS_FILE = "metrics.csv"
LEARNING_FILE = "learning.csv"
RECORDS_DIR = "records"

NAMED_VARIATIONS = {
    (15, 1.0): "Standard",
    (13, 1.0): "Entertainment",
    (15, 0.04): "Education",
    (15, 0.1): "Balance",
}


def format_float(value: float) -> str:
    return repr(float(value))


def _write_rows(path: Path, header: Sequence[str], rows: Iterable[Sequence[object]]) -> int:
    count = 0
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
            count += 1
    log.debug("csv_written", path=str(path), rows=count)
    return count


def write_telemetry_csv(path: Path, rows: Iterable[MatchRow]) -> int:
    return _write_rows(
        path,
        TELEMETRY_HEADER,
        (
            (
                r.board,
                format_float(r.d),
                format_float(r.p),
                r.match_index,
                r.seed,
                r.swings,
                r.total_moves,
                r.game_length,
                format_float(r.mean_branching),
                r.score_a,
                r.score_b,
            )
            for r in rows
        ),
    )


def write_turns_csv(path: Path, telemetry: Iterable[MatchTelemetry]) -> int:
    return _write_rows(
        path,
        TURNS_HEADER,
        (
            (
                match.board,
                format_float(match.d),
                format_float(match.p),
                match.match_index,
                t.turn,
                t.mover,
                t.kind,
                t.points,
                t.legal_move_count,
                t.cum_a,
                t.cum_b,
            )
            for match in telemetry
            for t in match.turns
        ),
    )


def write_metrics_csv(path: Path, aggregates: Iterable[CellAggregate]) -> int:
    return _write_rows(
        path,
        METRICS_HEADER,
        (
            (
                a.board,
                format_float(a.d),
                format_float(a.p),
                a.matches,
                format_float(a.mean_s),
                format_float(a.mean_n),
                format_float(a.mean_b),
                format_float(a.mean_d),
                format_float(a.gr),
                format_float(a.c),
            )
            for a in aggregates
        ),
    )


def write_learning_csv(
    path: Path,
    results: Iterable[LearningCoefficientResult],
    labels: dict[tuple[int, float], Tendency | None],
) -> int:
    def tendency_token(board: int, d: float) -> str:
        label = labels.get((board, d))
        return label.value if label is not None else "-"

    return _write_rows(
        path,
        LEARNING_HEADER,
        (
            (r.board, format_float(r.d), format_float(r.m), format_float(r.L),
             tendency_token(r.board, r.d))
            for r in results
        ),
    )


def record_filename(match: MatchTelemetry) -> str:
    return f"b{match.board}_d{match.d:g}_p{match.p:g}_m{match.match_index:04d}.rec"


def write_records(directory: Path, telemetry: Iterable[MatchTelemetry]) -> int:
    """One game record file per match."""
    directory.mkdir(parents=True, exist_ok=True)
    count = 0
    for match in telemetry:
        (directory / record_filename(match)).write_text(
            format_record(match.game_record()), encoding="utf-8"
        )
        count += 1
    return count


def _parse_row(path: Path, line_no: int, values: list[str]) -> MatchRow:
    if len(values) != len(TELEMETRY_HEADER):
        raise TelemetrySchemaError(
            f"{path}:{line_no}: expected {len(TELEMETRY_HEADER)} fields, got {len(values)}"
        )
    try:
        return MatchRow(
            board=int(values[0]),
            d=float(values[1]),
            p=float(values[2]),
            match_index=int(values[3]),
            seed=int(values[4]),
            swings=int(values[5]),
            total_moves=int(values[6]),
            game_length=int(values[7]),
            mean_branching=float(values[8]),
            score_a=int(values[9]),
            score_b=int(values[10]),
        )
    except ValueError as e:
        raise TelemetrySchemaError(f"{path}:{line_no}: {e}") from e


def read_telemetry_csv(path: Path) -> list[MatchRow]:
    """
    Read a telemetry CSV back into rows.

    Raises:
        TelemetrySchemaError: If the file is empty, the header differs from
            the frozen one, or a row is malformed
        OSError: If the file cannot be read
    """
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None:
            raise TelemetrySchemaError(f"{path}: empty file")
        if tuple(header) != TELEMETRY_HEADER:
            raise TelemetrySchemaError(
                f"{path}: header {','.join(header)!r} does not match "
                f"{','.join(TELEMETRY_HEADER)!r}"
            )
        rows = [
            _parse_row(path, line_no, values)
            for line_no, values in enumerate(reader, start=2)
            if values
        ]
    if not rows:
        raise TelemetrySchemaError(f"{path}: no telemetry rows")
    log.info("telemetry_loaded", path=str(path), rows=len(rows))
    return rows


def variation_name(board: int, d: float) -> str:
    for (named_board, named_d), name in NAMED_VARIATIONS.items():
        if board == named_board and math.isclose(d, named_d):
            return name
    return "Custom"


def render_summary_table(summaries: Sequence[SeriesSummary], policy: str = "greedy") -> str:
    """Plain-text summary: one row per (board, d) series."""
    header = ("Variation", "Board", "d", "GR range", "Tendency", "L")
    rows = [
        (
            variation_name(s.board, s.d),
            f"{s.board}x{s.board}",
            f"{s.d:g}",
            f"{s.gr_min:.4f} - {s.gr_max:.4f}",
            s.tendency.label if s.tendency is not None else "-",
            f"{s.L:.4f}" if s.L is not None else "-",
        )
        for s in summaries
    ]
    widths = [max([len(header[i]), *(len(row[i]) for row in rows)]) for i in range(len(header))]

    def line(cells: Sequence[str]) -> str:
        return "  ".join(cell.ljust(width) for cell, width in zip(cells, widths)).rstrip()

    low, high = APPROPRIATE_ZONE
    out = [
        f"# agent policy: {policy}; appropriate GR zone {low:g} - {high:g}",
        line(header),
        line(["-" * w for w in widths]),
    ]
    out.extend(line(row) for row in rows)
    return "\n".join(out) + "\n"


# SVG line charts ------------------------------------------------------------

_WIDTH, _HEIGHT = 640, 400
_MARGIN_LEFT, _MARGIN_RIGHT, _MARGIN_TOP, _MARGIN_BOTTOM = 70, 150, 40, 50
_COLORS = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def _extent(values: list[float]) -> tuple[float, float]:
    low, high = min(values), max(values)
    if low == high:
        pad = abs(low) * 0.1 or 1.0
        return low - pad, high + pad
    return low, high


def line_chart_svg(
    series: dict[str, list[tuple[float, float]]],
    title: str,
    x_label: str,
    y_label: str,
    band: tuple[float, float] | None = None,
) -> str:
    """Polyline chart, one line per named series; ``band`` shades a y range."""
    plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM
    xs = [x for points in series.values() for x, _ in points] or [0.0, 1.0]
    ys = [y for points in series.values() for _, y in points] or [0.0, 1.0]
    if band is not None:
        ys = [*ys, *band]
    x0, x1 = _extent(xs)
    y0, y1 = _extent(ys)

    def sx(x: float) -> float:
        return _MARGIN_LEFT + (x - x0) / (x1 - x0) * plot_w

    def sy(y: float) -> float:
        return _MARGIN_TOP + plot_h - (y - y0) / (y1 - y0) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="24" text-anchor="middle" font-size="16">'
        f"{escape(title)}</text>",
    ]
    if band is not None:
        top, bottom = sy(band[1]), sy(band[0])
        parts.append(
            f'<rect x="{_MARGIN_LEFT}" y="{top:.2f}" width="{plot_w}" '
            f'height="{bottom - top:.2f}" fill="#2ca02c" fill-opacity="0.15"/>'
        )
    parts.append(
        f'<rect x="{_MARGIN_LEFT}" y="{_MARGIN_TOP}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="black"/>'
    )
    for i in range(5):
        xv = x0 + (x1 - x0) * i / 4
        yv = y0 + (y1 - y0) * i / 4
        parts.append(
            f'<text x="{sx(xv):.2f}" y="{_MARGIN_TOP + plot_h + 16}" text-anchor="middle" '
            f'font-size="11">{xv:.3g}</text>'
        )
        parts.append(
            f'<text x="{_MARGIN_LEFT - 6}" y="{sy(yv) + 4:.2f}" text-anchor="end" '
            f'font-size="11">{yv:.4g}</text>'
        )
    parts.append(
        f'<text x="{_MARGIN_LEFT + plot_w / 2:.1f}" y="{_HEIGHT - 10}" text-anchor="middle" '
        f'font-size="13">{escape(x_label)}</text>'
    )
    parts.append(
        f'<text x="16" y="{_MARGIN_TOP + plot_h / 2:.1f}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 16 {_MARGIN_TOP + plot_h / 2:.1f})">{escape(y_label)}</text>'
    )
    for index, (name, points) in enumerate(series.items()):
        color = _COLORS[index % len(_COLORS)]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in sorted(points))
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="2"/>'
        )
        legend_y = _MARGIN_TOP + 14 + index * 16
        legend_x = _WIDTH - _MARGIN_RIGHT + 12
        parts.append(
            f'<line x1="{legend_x}" y1="{legend_y - 4}" x2="{legend_x + 18}" '
            f'y2="{legend_y - 4}" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{legend_x + 24}" y="{legend_y}" font-size="11">{escape(name)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_charts(
    directory: Path,
    aggregates: Sequence[CellAggregate],
    learning: Sequence[LearningCoefficientResult],
) -> list[Path]:
    """GR vs p (with the appropriate zone), C vs p, and L vs d."""
    directory.mkdir(parents=True, exist_ok=True)
    gr_series: dict[str, list[tuple[float, float]]] = {}
    c_series: dict[str, list[tuple[float, float]]] = {}
    for a in aggregates:
        name = f"{a.board}x{a.board} d = {a.d:g}"
        gr_series.setdefault(name, []).append((a.p, a.gr))
        c_series.setdefault(name, []).append((a.p, a.c))
    l_series: dict[str, list[tuple[float, float]]] = {}
    for r in learning:
        l_series.setdefault(f"{r.board}x{r.board}", []).append((r.d, r.L))

    charts = {
        "gr_vs_p.svg": line_chart_svg(
            gr_series, "Game refinement by knowledge base", "knowledge base p",
            "game refinement", band=APPROPRIATE_ZONE,
        ),
        "c_vs_p.svg": line_chart_svg(
            c_series, "Complexity by knowledge base", "knowledge base p", "complexity"
        ),
        "l_vs_d.svg": line_chart_svg(
            l_series, "Learning coefficient by dictionary size", "dictionary size d",
            "learning coefficient",
        ),
    }
    written = []
    for filename, svg in charts.items():
        path = directory / filename
        path.write_text(svg, encoding="utf-8")
        written.append(path)
    log.info("charts_written", directory=str(directory), charts=len(written))
    return written
