"""One self-play game and the telemetry the metrics are computed from."""

import statistics
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Protocol

import structlog

from scrabblelab.board import BoardLayout, standard_tile_bag
from scrabblelab.engine import apply_move, final_adjust, new_game
from scrabblelab.lexicon import WordAutomaton
from scrabblelab.record import GameRecord, RecordedTurn
from scrabblelab.seeding import derive_seed
from scrabblelab.sim.agent import Agent

log = structlog.get_logger()


@dataclass(frozen=True, order=True)
class CellId:
    """Experiment grid cell: board variant, dictionary fraction d, knowledge fraction p."""

    board: int
    d: float
    p: float


@dataclass(frozen=True)
class TurnRecord:
    turn: int
    mover: int
    kind: str
    points: int
    legal_move_count: int
    cum_a: int
    cum_b: int


class MatchSummary(Protocol):
    """What aggregation needs from a match, in memory or read back from CSV."""

    @property
    def board(self) -> int: ...
    @property
    def d(self) -> float: ...
    @property
    def p(self) -> float: ...
    @property
    def swings(self) -> int: ...
    @property
    def total_moves(self) -> int: ...
    @property
    def game_length(self) -> int: ...
    @property
    def mean_branching(self) -> float: ...


@dataclass
class MatchTelemetry:
    """
    Everything recorded about one finished game.

    swings is S, total_moves is N and game_length is D (equal to N here);
    mean_branching averages max(legal placements, 1) over all turns.
    """

    cell: CellId
    match_index: int
    seed: int
    bag_seed: int
    turns: list[TurnRecord]
    swings: int
    final_scores: tuple[int, int]
    moves: list[RecordedTurn] = field(default_factory=list)

    @property
    def board(self) -> int:
        return self.cell.board

    @property
    def d(self) -> float:
        return self.cell.d

    @property
    def p(self) -> float:
        return self.cell.p

    @property
    def total_moves(self) -> int:
        return len(self.turns)

    @property
    def game_length(self) -> int:
        return len(self.turns)

    @property
    def mean_branching(self) -> float:
        if not self.turns:
            return 1.0
        return statistics.fmean(max(t.legal_move_count, 1) for t in self.turns)

    def game_record(self) -> GameRecord:
        return GameRecord(
            board=self.cell.board,
            seed=self.seed,
            bag_seed=self.bag_seed,
            turns=list(self.moves),
            final_scores=self.final_scores,
        )

    def to_row(self) -> "MatchRow":
        return MatchRow(
            board=self.board,
            d=self.d,
            p=self.p,
            match_index=self.match_index,
            seed=self.seed,
            swings=self.swings,
            total_moves=self.total_moves,
            game_length=self.game_length,
            mean_branching=self.mean_branching,
            score_a=self.final_scores[0],
            score_b=self.final_scores[1],
        )


@dataclass(frozen=True)
class MatchRow:
    """One telemetry CSV row."""

    board: int
    d: float
    p: float
    match_index: int
    seed: int
    swings: int
    total_moves: int
    game_length: int
    mean_branching: float
    score_a: int
    score_b: int


def count_sign_flips(differences: Iterable[int]) -> int:
    """Sign changes in a score-difference series; zero keeps the previous sign."""
    sign = 0
    flips = 0
    for difference in differences:
        current = (difference > 0) - (difference < 0)
        if current == 0:
            continue
        if sign != 0 and current != sign:
            flips += 1
        sign = current
    return flips


def count_swings(turns: Sequence[TurnRecord]) -> int:
    """Lead changes between consecutive turns (S)."""
    return count_sign_flips(t.cum_a - t.cum_b for t in turns)


def run_match(
    layout: BoardLayout,
    dictionary: WordAutomaton,
    agents: Sequence[Agent],
    match_seed: int,
    cell: CellId | None = None,
    match_index: int = 0,
) -> MatchTelemetry:
    """
    Play one game to the end between two agents.

    The bag order comes from a seed derived from ``match_seed``, so the
    recorded (seed, bag_seed) pair replays the game exactly. Legal
    placement counts are taken from the mover's knowledge before each move.
    """
    cell = cell or CellId(layout.size, 1.0, 1.0)
    bag_seed = derive_seed(match_seed, "bag")
    state = new_game(layout, standard_tile_bag(bag_seed), dictionary, match_seed)

    turns: list[TurnRecord] = []
    moves: list[RecordedTurn] = []
    while not state.terminal:
        mover = state.mover
        move, legal_count = agents[mover].choose(state)
        state, outcome = apply_move(state, move)
        turn = len(turns) + 1
        turns.append(
            TurnRecord(
                turn=turn,
                mover=mover,
                kind=move.kind,
                points=outcome.points,
                legal_move_count=legal_count,
                cum_a=state.scores[0],
                cum_b=state.scores[1],
            )
        )
        word = outcome.words_formed[0] if outcome.words_formed else ""
        moves.append(RecordedTurn(turn, mover, move, word, outcome.points))

    final_scores = final_adjust(state)
    telemetry = MatchTelemetry(
        cell=cell,
        match_index=match_index,
        seed=match_seed,
        bag_seed=bag_seed,
        turns=turns,
        swings=count_swings(turns),
        final_scores=final_scores,
        moves=moves,
    )
    log.debug(
        "match_finished",
        board=cell.board,
        d=cell.d,
        p=cell.p,
        match=match_index,
        turns=len(turns),
        swings=telemetry.swings,
        ended_by=state.ended_by.value if state.ended_by else None,
        final_scores=final_scores,
    )
    return telemetry
