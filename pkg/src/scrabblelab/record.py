"""Line-oriented game records and replay.

Format (whitespace separated, '#' lines are headers or comments):

    # scrabblelab game record v1
    # board=15 seed=123 bag_seed=456
    1 0 place H8 across CAt CAT 10
    2 1 exchange - - QVZ - 0
    3 0 pass - - - - 0
    # final 10 -3

Coordinates are A1-style: column letter then 1-based row, so H8 is the
centre of the 15x15 board. Lowercase tile letters are blanks.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import structlog

from scrabblelab.board import layout_for, standard_tile_bag
from scrabblelab.engine import (
    Direction,
    Exchange,
    GameState,
    Move,
    Pass,
    Placement,
    apply_move,
    final_adjust,
    new_game,
)
from scrabblelab.errors import RecordFormatError
from scrabblelab.lexicon import WordAutomaton

log = structlog.get_logger()

HEADER = "# scrabblelab game record v1"


def format_coord(row: int, col: int) -> str:
    return f"{chr(ord('A') + col)}{row + 1}"


def parse_coord(token: str) -> tuple[int, int]:
    if len(token) < 2 or not token[0].isalpha() or not token[1:].isdigit():
        raise RecordFormatError(token, "coordinate must look like H8")
    return int(token[1:]) - 1, ord(token[0].upper()) - ord("A")


@dataclass(frozen=True)
class RecordedTurn:
    """One move line."""

    turn: int
    player: int
    move: Move
    word: str
    score: int


@dataclass
class GameRecord:
    """Parsed record: seeds, board variant, turns and recorded final scores."""

    board: int
    seed: int
    bag_seed: int
    turns: list[RecordedTurn] = field(default_factory=list)
    final_scores: tuple[int, int] | None = None


def format_turn(turn: RecordedTurn) -> str:
    mv = turn.move
    if isinstance(mv, Placement):
        fields = [
            "place",
            format_coord(mv.row, mv.col),
            mv.direction.value,
            mv.letters,
            turn.word or "-",
        ]
    elif isinstance(mv, Exchange):
        fields = ["exchange", "-", "-", "".join(mv.tiles), "-"]
    else:
        fields = ["pass", "-", "-", "-", "-"]
    return " ".join([str(turn.turn), str(turn.player), *fields, str(turn.score)])


def format_record(record: GameRecord) -> str:
    lines = [
        HEADER,
        f"# board={record.board} seed={record.seed} bag_seed={record.bag_seed}",
    ]
    lines.extend(format_turn(turn) for turn in record.turns)
    if record.final_scores is not None:
        lines.append(f"# final {record.final_scores[0]} {record.final_scores[1]}")
    return "\n".join(lines) + "\n"


def _parse_move(line: str, parts: Sequence[str]) -> Move:
    kind, coord, direction, tiles = parts[2], parts[3], parts[4], parts[5]
    if kind == "place":
        row, col = parse_coord(coord)
        try:
            parsed_direction = Direction(direction)
        except ValueError as e:
            raise RecordFormatError(line, f"unknown direction {direction!r}") from e
        return Placement(row, col, parsed_direction, tiles)
    if kind == "exchange":
        return Exchange(tuple(tiles))
    if kind == "pass":
        return Pass()
    raise RecordFormatError(line, f"unknown move kind {kind!r}")


def parse_record(lines: Iterable[str]) -> GameRecord:
    """Parse record text lines into a GameRecord."""
    header: dict[str, int] = {}
    turns: list[RecordedTurn] = []
    final_scores = None
    for raw in lines:
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("final"):
                parts = body.split()
                try:
                    final_scores = (int(parts[1]), int(parts[2]))
                except (IndexError, ValueError) as e:
                    raise RecordFormatError(line, "final needs two integer scores") from e
                if len(parts) != 3:
                    raise RecordFormatError(line, "final needs two integer scores")
            elif "=" in body:
                for item in body.split():
                    key, _, value = item.partition("=")
                    try:
                        header[key] = int(value)
                    except ValueError as e:
                        raise RecordFormatError(line, f"bad header value {item!r}") from e
            continue
        parts = line.split()
        if len(parts) != 8:
            raise RecordFormatError(line, f"expected 8 fields, got {len(parts)}")
        try:
            turn, player, score = int(parts[0]), int(parts[1]), int(parts[7])
        except ValueError as e:
            raise RecordFormatError(line, "turn, player and score must be integers") from e
        word = "" if parts[6] == "-" else parts[6]
        turns.append(RecordedTurn(turn, player, _parse_move(line, parts), word, score))

    for key in ("board", "seed", "bag_seed"):
        if key not in header:
            raise RecordFormatError(HEADER, f"missing header field {key!r}")
    return GameRecord(
        board=header["board"],
        seed=header["seed"],
        bag_seed=header["bag_seed"],
        turns=turns,
        final_scores=final_scores,
    )


@dataclass
class ReplayResult:
    """Outcome of re-applying a record."""

    state: GameState
    final_scores: tuple[int, int] | None
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def replay(record: GameRecord, dictionary: WordAutomaton) -> ReplayResult:
    """
    Re-apply every recorded move from the recorded seeds.

    Any dictionary containing the game's d' works: legality only gets
    looser and scores do not depend on it. Score or turn-order
    disagreements are collected as mismatches; illegal moves raise.
    """
    state = new_game(
        layout_for(record.board), standard_tile_bag(record.bag_seed), dictionary, record.seed
    )
    mismatches = []
    for recorded in record.turns:
        if recorded.player != state.mover:
            mismatches.append(
                f"turn {recorded.turn}: recorded player {recorded.player}, expected {state.mover}"
            )
        state, outcome = apply_move(state, recorded.move)
        if outcome.points != recorded.score:
            mismatches.append(
                f"turn {recorded.turn}: recorded {recorded.score} points, replay gives "
                f"{outcome.points}"
            )

    final_scores = final_adjust(state) if state.terminal else None
    if record.final_scores is not None and final_scores != record.final_scores:
        mismatches.append(f"final scores: recorded {record.final_scores}, replay {final_scores}")

    log.info("record_replayed", turns=len(record.turns), mismatches=len(mismatches))
    return ReplayResult(state=state, final_scores=final_scores, mismatches=mismatches)
