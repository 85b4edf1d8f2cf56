"""Command-line entry point.

Subcommands: simulate, report, board, replay, fuzz-movegen, lexicon-stats.
Exit codes: 0 ok, 1 verification failure, 2 usage or config error, 3 I/O error.
"""

import argparse
import sys
from collections import Counter
from collections.abc import Sequence
from pathlib import Path

from scrabblelab import __version__
from scrabblelab.board import layout_for
from scrabblelab.config import (
    LOG_LEVELS,
    Config,
    LoggingConfig,
    load_config,
    load_experiment_config,
)
from scrabblelab.error_handling import EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION, cli_errors
from scrabblelab.errors import ConfigError, DomainError
from scrabblelab.lexicon import (
    OCTWL_WORD_COUNT,
    SOWPODS_WORD_COUNT,
    build_automaton,
    file_sha256,
    load_word_file,
    subset_size,
    trie_node_count,
)
from scrabblelab.logging_config import get_logger, setup_logging
from scrabblelab.manifest import RunManifest, write_manifest
from scrabblelab.metrics import aggregate_cells, learning_results, series_summaries, tendencies
from scrabblelab.movegen import fuzz_movegen
from scrabblelab.record import parse_record, replay
from scrabblelab.reports import (
    LEARNING_FILE,
    METRICS_FILE,
    RECORDS_DIR,
    TELEMETRY_FILE,
    TURNS_FILE,
    read_telemetry_csv,
    render_summary_table,
    write_charts,
    write_learning_csv,
    write_metrics_csv,
    write_records,
    write_telemetry_csv,
    write_turns_csv,
)
from scrabblelab.sim import run_experiment

log = get_logger("cli")


def resolve_workers(flag: int | None, env: int | None, configured: int) -> int:
    """Worker count: command-line flag, then SCRABBLELAB_WORKERS, then the config file."""
    for value in (flag, env):
        if value is not None:
            return value
    return configured


@cli_errors("simulate")
def cmd_simulate(
    config_path: Path,
    output_dir: Path,
    per_turn: bool = False,
    records: bool = False,
    workers: int | None = None,
    env_workers: int | None = None,
    log_settings: LoggingConfig | None = None,
) -> int:
    """Run the configured grid and write telemetry, metrics, learning CSVs and the manifest."""
    config = load_experiment_config(config_path)
    workers = resolve_workers(workers, env_workers, config.workers)
    if workers < 1:
        raise ConfigError(f"workers: {workers} must be >= 1")
    lexicon = load_word_file(config.dictionary_path)
    manifest = RunManifest(
        config=dict(config.raw),
        word_list_path=str(config.dictionary_path),
        word_list_sha256=file_sha256(config.dictionary_path),
        master_seed=config.seed,
    )

    telemetry = run_experiment(config, lexicon, workers=workers, log_settings=log_settings)
    rows = [match.to_row() for match in telemetry]
    aggregates = aggregate_cells(rows)
    learning = learning_results(aggregates, config.fit_range)
    labels = tendencies(aggregates, config.tendency_epsilon)
    if len(config.p_values) < 2:
        log.warning("learning_needs_two_p_values", p_values=config.p_values)

    output_dir.mkdir(parents=True, exist_ok=True)
    outputs = [TELEMETRY_FILE, METRICS_FILE, LEARNING_FILE]
    write_telemetry_csv(output_dir / TELEMETRY_FILE, rows)
    write_metrics_csv(output_dir / METRICS_FILE, aggregates)
    write_learning_csv(output_dir / LEARNING_FILE, learning, labels)
    if per_turn or config.per_turn:
        write_turns_csv(output_dir / TURNS_FILE, telemetry)
        outputs.append(TURNS_FILE)
    if records or config.records:
        write_records(output_dir / RECORDS_DIR, telemetry)
        outputs.append(RECORDS_DIR)

    manifest.finish(outputs)
    write_manifest(output_dir, manifest)
    log.info("simulation_written", output_dir=str(output_dir), matches=len(telemetry))

    summaries = series_summaries(aggregates, config.fit_range, config.tendency_epsilon)
    print(render_summary_table(summaries, policy=manifest.policy), end="")
    return EXIT_OK


@cli_errors("report")
def cmd_report(
    telemetry_path: Path,
    svg_dir: Path | None = None,
    fit_range: tuple[float, float] | None = None,
    epsilon: float = 0.05,
) -> int:
    """Print the summary table for a telemetry CSV; optionally write SVG charts."""
    rows = read_telemetry_csv(telemetry_path)
    aggregates = aggregate_cells(rows)
    print(render_summary_table(series_summaries(aggregates, fit_range, epsilon)), end="")
    if svg_dir is not None:
        for path in write_charts(svg_dir, aggregates, learning_results(aggregates, fit_range)):
            print(f"wrote {path}")
    return EXIT_OK


@cli_errors("board")
def cmd_board(variant: int) -> int:
    print(layout_for(variant).render())
    return EXIT_OK


@cli_errors("replay")
def cmd_replay(record_path: Path, dictionary_path: Path) -> int:
    """Re-apply a game record; exit 1 if any score or turn disagrees."""
    with open(record_path, encoding="utf-8") as f:
        record = parse_record(f)
    dictionary = build_automaton(load_word_file(dictionary_path))
    result = replay(record, dictionary)
    for mismatch in result.mismatches:
        print(mismatch)
    if not result.ok:
        return EXIT_VERIFICATION
    print(f"replayed {len(record.turns)} turns, final scores {result.final_scores}")
    return EXIT_OK


@cli_errors("fuzz-movegen")
def cmd_fuzz_movegen(iterations: int, seed: int) -> int:
    """Compare the move generator with the brute-force oracle on random positions."""
    if iterations < 0:
        raise DomainError("iterations", iterations, ">= 0")
    report = fuzz_movegen(iterations, seed)
    if report.counterexample is not None:
        print(report.counterexample.describe())
        return EXIT_VERIFICATION
    print(f"{report.iterations} positions checked, generator matches oracle")
    return EXIT_OK


@cli_errors("lexicon-stats")
def cmd_lexicon_stats(path: Path, fractions: Sequence[float] = ()) -> int:
    """Word counts, automaton size and d' sizes for a word list."""
    lexicon = load_word_file(path)
    automaton = build_automaton(lexicon)
    trie_nodes = trie_node_count(lexicon.sorted_words)
    lengths = Counter(len(word) for word in lexicon.words)

    print(f"source: {path}")
    print(f"sha256: {file_sha256(path)}")
    print(f"words: {len(lexicon)}")
    print(f"skipped: {lexicon.skipped}")
    print(f"automaton nodes: {automaton.node_count}")
    print(f"trie nodes: {trie_nodes}")
    print(f"compression: {trie_nodes / automaton.node_count:.2f}x")
    print("lengths: " + " ".join(f"{n}:{lengths[n]}" for n in sorted(lengths)))
    for d in fractions:
        print(
            f"d={d:g}: {subset_size(len(lexicon), d)} words "
            f"(OCTWL {subset_size(OCTWL_WORD_COUNT, d)}, "
            f"SOWPODS {subset_size(SOWPODS_WORD_COUNT, d)})"
        )
    return EXIT_OK


def _fractions(text: str) -> list[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scrabblelab",
        description="Scrabble self-play experiments: game refinement, complexity, learning.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level", type=str.upper, choices=LOG_LEVELS, help="Override SCRABBLELAB_LOG_LEVEL"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", help="Run an experiment grid")
    simulate.add_argument("config", type=Path)
    simulate.add_argument("-o", "--output", type=Path, required=True)
    simulate.add_argument("--per-turn", action="store_true", help="Also write turns.csv")
    simulate.add_argument("--records", action="store_true", help="Also write game records")
    simulate.add_argument("--workers", type=int, help="Worker processes")

    report = commands.add_parser("report", help="Summarize a telemetry CSV")
    report.add_argument("telemetry", type=Path)
    report.add_argument("--svg", type=Path, metavar="DIR", help="Write SVG charts to DIR")
    report.add_argument("--fit-p-min", type=float)
    report.add_argument("--fit-p-max", type=float)
    report.add_argument("--epsilon", type=float, default=0.05, help="Tendency tolerance")

    board = commands.add_parser("board", help="Print a board layout")
    board.add_argument("variant", type=int, help="15 or 13")

    replay_cmd = commands.add_parser("replay", help="Verify a game record")
    replay_cmd.add_argument("record", type=Path)
    replay_cmd.add_argument("--dict", type=Path, required=True, dest="dictionary")

    fuzz = commands.add_parser("fuzz-movegen", help="Check move generation against the oracle")
    fuzz.add_argument("--iterations", type=int, default=100)
    fuzz.add_argument("--seed", type=int, default=0)

    stats = commands.add_parser("lexicon-stats", help="Describe a word list")
    stats.add_argument("path", type=Path)
    stats.add_argument("--d", type=_fractions, default=[], dest="fractions")

    return parser


def dispatch(args: argparse.Namespace, config: Config) -> int:
    if args.command == "simulate":
        return cmd_simulate(
            args.config,
            args.output,
            args.per_turn,
            args.records,
            args.workers,
            config.workers,
            config.logging,
        )
    if args.command == "report":
        fit_range = None
        if args.fit_p_min is not None or args.fit_p_max is not None:
            low = args.fit_p_min if args.fit_p_min is not None else 0.0
            high = args.fit_p_max if args.fit_p_max is not None else 1.0
            fit_range = (low, high)
        return cmd_report(args.telemetry, args.svg, fit_range, args.epsilon)
    if args.command == "board":
        return cmd_board(args.variant)
    if args.command == "replay":
        return cmd_replay(args.record, args.dictionary)
    if args.command == "fuzz-movegen":
        return cmd_fuzz_movegen(args.iterations, args.seed)
    return cmd_lexicon_stats(args.path, args.fractions)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config()
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.log_level:
        config.logging.level = args.log_level
    setup_logging(config)
    return dispatch(args, config)


if __name__ == "__main__":
    sys.exit(main())
