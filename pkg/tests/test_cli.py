"""Tests for the command-line interface."""

import csv
import json
from pathlib import Path

import pytest

from scrabblelab.cli import build_parser, main, resolve_workers
from scrabblelab.error_handling import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION
from scrabblelab.metrics import aggregate_cells
from scrabblelab.reports import TELEMETRY_HEADER, read_telemetry_csv


@pytest.fixture
def grid(tmp_path: Path, words_path: Path) -> Path:
    """A tiny experiment config next to a copy of the test word list."""
    (tmp_path / "words.txt").write_text(words_path.read_text())
    config = tmp_path / "grid.cfg"
    config.write_text("board=15\nd=1.0\np=0.5,1.0\nmatches=2\nseed=42\ndict=words.txt\n")
    return config


class TestResolveWorkers:
    """Worker count precedence."""

    def test_flag_wins(self):
        assert resolve_workers(4, 2, 1) == 4

    def test_env_over_config(self):
        assert resolve_workers(None, 2, 1) == 2

    def test_config_default(self):
        assert resolve_workers(None, None, 3) == 3


class TestParser:
    """Tests for argument parsing."""

    def test_subcommand_required(self):
        with pytest.raises(SystemExit) as excinfo:
            build_parser().parse_args([])
        assert excinfo.value.code == 2

    def test_lexicon_stats_fractions(self):
        args = build_parser().parse_args(["lexicon-stats", "w.txt", "--d", "0.04,0.1"])
        assert args.fractions == [0.04, 0.1]

    def test_log_level_case_insensitive(self):
        args = build_parser().parse_args(["--log-level", "debug", "board", "15"])
        assert args.log_level == "DEBUG"


class TestBoard:
    """Tests for the board subcommand."""

    def test_standard(self, capsys):
        assert main(["board", "15"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 15
        assert lines[0].split()[0] == "TW"
        assert lines[7].split()[7] == "DW"

    def test_small(self, capsys):
        assert main(["board", "13"]) == EXIT_OK
        out = capsys.readouterr().out
        assert len(out.splitlines()) == 13
        assert "TW" not in out

    def test_unknown_variant(self, capsys):
        assert main(["board", "14"]) == EXIT_USAGE
        assert "board" in capsys.readouterr().err


class TestSimulate:
    """Tests for the simulate subcommand."""

    def test_writes_outputs(self, grid, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["simulate", str(grid), "-o", str(out), "--records"]) == EXIT_OK
        for name in ("telemetry.csv", "metrics.csv", "learning.csv", "manifest.json"):
            assert (out / name).exists()
        telemetry = (out / "telemetry.csv").read_text().splitlines()
        assert telemetry[0] == ",".join(TELEMETRY_HEADER)
        assert len(telemetry) == 1 + 4
        assert len(list((out / "records").glob("*.rec"))) == 4
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["master_seed"] == 42
        assert manifest["config"]["p"] == "0.5,1.0"
        assert len(manifest["word_list_sha256"]) == 64
        assert "Standard" in capsys.readouterr().out

    def test_rerun_is_byte_identical(self, grid, tmp_path):
        """The same config and seed give the same CSV bytes."""
        first, second = tmp_path / "a", tmp_path / "b"
        assert main(["simulate", str(grid), "-o", str(first)]) == EXIT_OK
        assert main(["simulate", str(grid), "-o", str(second), "--per-turn"]) == EXIT_OK
        for name in ("telemetry.csv", "metrics.csv", "learning.csv"):
            assert (first / name).read_bytes() == (second / name).read_bytes()
        assert (second / "turns.csv").exists()
        assert not (first / "turns.csv").exists()

    def test_missing_dictionary(self, tmp_path):
        config = tmp_path / "grid.cfg"
        config.write_text("board=15\nd=1\np=1\nmatches=1\nseed=1\ndict=absent.txt\n")
        assert main(["simulate", str(config), "-o", str(tmp_path / "out")]) == EXIT_IO

    def test_bad_config(self, tmp_path):
        config = tmp_path / "grid.cfg"
        config.write_text("board=14\nd=1\np=1\nmatches=1\nseed=1\ndict=w.txt\n")
        assert main(["simulate", str(config), "-o", str(tmp_path / "out")]) == EXIT_USAGE

    def test_missing_config(self, tmp_path):
        assert main(["simulate", str(tmp_path / "absent.cfg"), "-o", str(tmp_path)]) == EXIT_IO

    def test_bad_worker_flag(self, grid, tmp_path):
        args = ["simulate", str(grid), "-o", str(tmp_path / "out"), "--workers", "0"]
        assert main(args) == EXIT_USAGE


class TestReport:
    """Tests for the report subcommand."""

    def test_report_from_telemetry(self, grid, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["simulate", str(grid), "-o", str(out)]) == EXIT_OK
        simulated = capsys.readouterr().out
        svg = tmp_path / "svg"
        assert main(["report", str(out / "telemetry.csv"), "--svg", str(svg)]) == EXIT_OK
        reported = capsys.readouterr().out
        assert reported.startswith(simulated)
        assert (svg / "gr_vs_p.svg").exists()

    def test_empty_csv(self, tmp_path):
        path = tmp_path / "telemetry.csv"
        path.write_text("")
        assert main(["report", str(path)]) == EXIT_USAGE

    def test_missing_csv(self, tmp_path):
        assert main(["report", str(tmp_path / "absent.csv")]) == EXIT_IO


class TestReplay:
    """Tests for the replay subcommand."""

    def test_replays_recorded_games(self, grid, tmp_path, words_path, capsys):
        out = tmp_path / "out"
        assert main(["simulate", str(grid), "-o", str(out), "--records"]) == EXIT_OK
        record = sorted((out / "records").glob("*.rec"))[0]
        capsys.readouterr()
        assert main(["replay", str(record), "--dict", str(words_path)]) == EXIT_OK
        assert "replayed" in capsys.readouterr().out

    def test_tampered_record(self, grid, tmp_path, words_path, capsys):
        out = tmp_path / "out"
        main(["simulate", str(grid), "-o", str(out), "--records"])
        record = sorted((out / "records").glob("*.rec"))[0]
        lines = record.read_text().splitlines()
        lines[-1] = "# final 99999 -99999"
        record.write_text("\n".join(lines) + "\n")
        capsys.readouterr()
        assert main(["replay", str(record), "--dict", str(words_path)]) == EXIT_VERIFICATION
        assert "final scores" in capsys.readouterr().out

    def test_malformed_record(self, tmp_path, words_path):
        record = tmp_path / "bad.rec"
        record.write_text("# board=15 seed=1 bag_seed=2\n1 0 place\n")
        assert main(["replay", str(record), "--dict", str(words_path)]) == EXIT_USAGE


class TestFuzzMovegen:
    """Tests for the fuzz-movegen subcommand."""

    def test_passes(self, capsys):
        assert main(["fuzz-movegen", "--iterations", "3", "--seed", "5"]) == EXIT_OK
        assert "generator matches oracle" in capsys.readouterr().out

    def test_zero_iterations(self, capsys):
        assert main(["fuzz-movegen", "--iterations", "0"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("0 positions checked")

    def test_negative_iterations(self):
        assert main(["fuzz-movegen", "--iterations", "-1"]) == EXIT_USAGE


class TestLexiconStats:
    """Tests for the lexicon-stats subcommand."""

    def test_stats(self, words_path, capsys):
        assert main(["lexicon-stats", str(words_path), "--d", "0.04"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "words: 534" in out
        assert "skipped: 0" in out
        assert "OCTWL 7505" in out

    def test_missing(self, tmp_path):
        assert main(["lexicon-stats", str(tmp_path / "absent.txt")]) == EXIT_IO


@pytest.mark.slow
class TestPublishedWordList:
    """Desk-scale runs against a full published word list (SCRABBLELAB_WORDLIST)."""

    def test_standard_cell_gr_band(self, published_word_list, tmp_path, capsys):
        """The standard full-knowledge cell lands in a plausible GR band."""
        config = tmp_path / "grid.cfg"
        config.write_text(
            f"board=15\nd=1.0\np=1.0\nmatches=200\nseed=2024\nworkers=4\n"
            f"dict={published_word_list}\n"
        )
        out = tmp_path / "out"
        assert main(["simulate", str(config), "-o", str(out)]) == EXIT_OK
        [cell] = aggregate_cells(read_telemetry_csv(out / "telemetry.csv"))
        assert 0.06 <= cell.gr <= 0.11

    def test_complexity_grows_with_knowledge(self, published_word_list, tmp_path, capsys):
        """At d=0.1 full knowledge at least triples complexity over p=0.1."""
        config = tmp_path / "grid.cfg"
        config.write_text(
            f"board=15\nd=0.1\np=0.1,1.0\nmatches=100\nseed=7\nworkers=4\n"
            f"dict={published_word_list}\n"
        )
        out = tmp_path / "out"
        assert main(["simulate", str(config), "-o", str(out)]) == EXIT_OK
        low, high = aggregate_cells(read_telemetry_csv(out / "telemetry.csv"))
        assert (low.p, high.p) == (0.1, 1.0)
        assert high.c >= 3 * low.c

    def test_subset_size(self, published_word_list, capsys):
        assert main(["lexicon-stats", str(published_word_list), "--d", "0.04"]) == EXIT_OK
        assert "d=0.04:" in capsys.readouterr().out


def _simulate_bundled(tmp_path: Path, words_path: Path, name: str, body: str) -> Path:
    """Run simulate on the bundled word list and return the output directory."""
    (tmp_path / "words.txt").write_text(words_path.read_text())
    config = tmp_path / f"{name}.cfg"
    config.write_text(body + "dict=words.txt\nworkers=4\n")
    out = tmp_path / name
    assert main(["simulate", str(config), "-o", str(out)]) == EXIT_OK
    return out


def _csv_rows(path: Path) -> list[dict[str, str]]:
    with path.open(newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


@pytest.mark.slow
class TestGridEffects:
    """Grid-level effects on the bundled word list."""

    def test_learning_coefficient_falls_with_dictionary_size(self, tmp_path, words_path, capsys):
        """L shrinks as the dictionary fraction grows."""
        p_values = ",".join(f"{p / 10:.1f}" for p in range(1, 11))
        out = _simulate_bundled(
            tmp_path,
            words_path,
            "learning",
            f"board=15\nd=0.1,0.5,1.0\np={p_values}\nmatches=50\nseed=11\n",
        )
        learning = {float(row["d"]): float(row["L"]) for row in _csv_rows(out / "learning.csv")}
        assert sorted(learning) == [0.1, 0.5, 1.0]
        assert learning[0.1] > learning[0.5] > learning[1.0]

    def test_small_board_branches_less(self, tmp_path, words_path, capsys):
        """At full dictionary and knowledge the 13x13 board offers fewer placements."""
        branching = {}
        for board in (15, 13):
            out = _simulate_bundled(
                tmp_path,
                words_path,
                f"board{board}",
                f"board={board}\nd=1.0\np=1.0\nmatches=100\nseed=5\n",
            )
            [row] = _csv_rows(out / "metrics.csv")
            branching[board] = float(row["mean_B"])
        assert branching[13] < branching[15]
