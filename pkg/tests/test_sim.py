"""Tests for agents, matches and the experiment grid."""

from dataclasses import replace
from pathlib import Path

import pytest

from scrabblelab.board import TileBag, standard_layout
from scrabblelab.config import ExperimentConfig
from scrabblelab.engine import Direction, Exchange, Pass, Placement
from scrabblelab.errors import DomainError
from scrabblelab.lexicon import build_automaton
from scrabblelab.movegen import GeneratedMove
from scrabblelab.sim import (
    AgentSpec,
    CellDictionaries,
    CellId,
    TurnRecord,
    count_sign_flips,
    count_swings,
    make_agent,
    plan_tasks,
    run_experiment,
    run_match,
    select_greedy,
)


def _config(words_path: Path, **overrides) -> ExperimentConfig:
    values = dict(
        board=15,
        d_values=[1.0],
        p_values=[1.0],
        matches=2,
        seed=42,
        dictionary_path=words_path,
    )
    values.update(overrides)
    return ExperimentConfig(**values)


def _turns(diffs):
    return [TurnRecord(i + 1, i % 2, "place", 0, 1, diff, 0) for i, diff in enumerate(diffs)]


class TestSwings:
    """Tests for lead-change counting."""

    @pytest.mark.parametrize(
        "diffs,expected",
        [
            ((10, 5, 7), 0),
            ((10, -10, 10), 2),
            ((10, 0, -5), 1),
            ((0, 0, 0), 0),
            ((), 0),
            ((0, -3, 0, 4), 1),
        ],
    )
    def test_sign_flips(self, diffs, expected):
        """Ties keep the previous leader; only strict sign changes count."""
        assert count_sign_flips(diffs) == expected

    def test_count_swings_uses_cumulative_scores(self):
        assert count_swings(_turns([10, -10, 10])) == 2


class TestGreedySelection:
    """Tests for the greedy policy."""

    def test_single_move(self, make_state):
        state = make_state(["AT"], "AT")
        move = GeneratedMove(Placement(2, 1, Direction.ACROSS, "AT"), 2)
        assert select_greedy(state, [move]) == move.placement

    def test_highest_score(self, make_state):
        state = make_state(["AT"], "AT")
        low = GeneratedMove(Placement(1, 1, Direction.ACROSS, "AT"), 8)
        high = GeneratedMove(Placement(2, 2, Direction.DOWN, "AT"), 10)
        assert select_greedy(state, [low, high]) == high.placement

    def test_tie_break(self, make_state):
        """Ties go to lower row, then column, then Across, then letters."""
        state = make_state(["AT"], "AT")
        moves = [
            GeneratedMove(Placement(2, 1, Direction.ACROSS, "AT"), 5),
            GeneratedMove(Placement(1, 2, Direction.DOWN, "TA"), 5),
            GeneratedMove(Placement(1, 2, Direction.DOWN, "AT"), 5),
            GeneratedMove(Placement(1, 3, Direction.ACROSS, "AT"), 5),
        ]
        assert select_greedy(state, moves) == Placement(1, 2, Direction.DOWN, "AT")

    def test_exchange_when_stuck(self, make_state):
        """No placement and a full bag: swap the whole rack."""
        state = make_state(["QI"], "AEEOOUU")
        assert len(state.bag) == 86
        assert select_greedy(state, []) == Exchange(tuple(state.rack))

    def test_pass_when_bag_low(self, make_state):
        """No placement and fewer than seven tiles in the bag: pass."""
        state = make_state(["QI"], "AEEOOUU")
        state = replace(state, bag=TileBag(state.bag.tiles[:6], state.bag.distribution))
        assert select_greedy(state, []) == Pass()


class TestAgents:
    """Tests for agent construction."""

    def test_bad_fraction(self):
        with pytest.raises(DomainError):
            AgentSpec(0.0, 1)

    def test_unknown_policy(self):
        with pytest.raises(DomainError):
            AgentSpec(0.5, 1, policy="random")

    def test_full_knowledge_reuses_automaton(self, small_lexicon):
        automaton = build_automaton(small_lexicon)
        agent = make_agent(small_lexicon, AgentSpec(1.0, 3), automaton)
        assert agent.knowledge is automaton

    def test_partial_knowledge(self, small_lexicon):
        agent = make_agent(small_lexicon, AgentSpec(0.5, 3))
        assert len(agent.knowledge) == 267


class TestRunMatch:
    """Tests for single matches."""

    @pytest.fixture
    def players(self, small_lexicon):
        automaton = build_automaton(small_lexicon)
        agents = [
            make_agent(small_lexicon, AgentSpec(0.5, seed), automaton) for seed in (1, 2)
        ]
        return automaton, agents

    def test_deterministic(self, players):
        """The same seed replays the same game."""
        automaton, agents = players
        first = run_match(standard_layout(), automaton, agents, 99)
        second = run_match(standard_layout(), automaton, agents, 99)
        assert first == second

    def test_telemetry_consistent(self, players):
        """Swings, lengths and branching agree with the turn log."""
        automaton, agents = players
        telemetry = run_match(
            standard_layout(), automaton, agents, 7, cell=CellId(15, 1.0, 0.5), match_index=3
        )
        assert telemetry.swings == count_swings(telemetry.turns)
        assert telemetry.total_moves == telemetry.game_length == len(telemetry.turns) > 0
        assert telemetry.mean_branching >= 1.0
        assert [t.mover for t in telemetry.turns[:2]] == [0, 1]
        row = telemetry.to_row()
        assert (row.board, row.d, row.p, row.match_index) == (15, 1.0, 0.5, 3)
        assert len(telemetry.moves) == len(telemetry.turns)


class TestExperiment:
    """Tests for the experiment grid."""

    def test_plan_order(self, words_path):
        config = _config(words_path, d_values=[0.5, 1.0], p_values=[0.2, 0.4], matches=2)
        tasks = plan_tasks(config)
        assert len(tasks) == 8
        assert [(t.d, t.p, t.match_index) for t in tasks[:3]] == [
            (0.5, 0.2, 0),
            (0.5, 0.2, 1),
            (0.5, 0.4, 0),
        ]

    def test_cell_dictionary_cached(self, small_lexicon):
        cells = CellDictionaries(small_lexicon, 5)
        assert cells.get(0.5) is cells.get(0.5)
        assert len(cells.get(0.5)[0]) == 267

    def test_single_cell(self, small_lexicon, words_path):
        """One cell with two matches gives two telemetry records for that cell."""
        telemetry = run_experiment(_config(words_path), small_lexicon)
        assert len(telemetry) == 2
        assert {t.cell for t in telemetry} == {CellId(15, 1.0, 1.0)}
        assert [t.match_index for t in telemetry] == [0, 1]
        assert telemetry[0].seed != telemetry[1].seed

    def test_loads_dictionary_when_omitted(self, words_path):
        telemetry = run_experiment(_config(words_path, matches=1))
        assert len(telemetry) == 1

    def test_workers_match_sequential(self, small_lexicon, words_path):
        """Parallel runs return the same telemetry in the same order."""
        config = _config(words_path, p_values=[0.5, 1.0], matches=2)
        sequential = run_experiment(config, small_lexicon, workers=1)
        parallel = run_experiment(config, small_lexicon, workers=2)
        assert [t.to_row() for t in parallel] == [t.to_row() for t in sequential]

    @pytest.mark.slow
    def test_self_play_is_balanced(self, small_lexicon, words_path):
        """Identical full-knowledge agents finish level on average.

        The allowance covers the first-move advantage and sampling noise.
        """
        telemetry = run_experiment(_config(words_path, matches=200), small_lexicon, workers=4)
        diffs = [t.final_scores[0] - t.final_scores[1] for t in telemetry]
        totals = [t.final_scores[0] + t.final_scores[1] for t in telemetry]
        mean_diff = sum(diffs) / len(diffs)
        mean_score = sum(totals) / (2 * len(totals))
        assert abs(mean_diff) < 0.15 * mean_score
