"""Seeded self-play over the (board, d, p) experiment grid.

- agent: knowledge-limited greedy players
- match: one game and its telemetry (swings, length, branching)
- experiment: the grid runner, sequential or across worker processes
"""

from scrabblelab.sim.agent import Agent, AgentSpec, greedy_policy, make_agent, select_greedy
from scrabblelab.sim.experiment import CellDictionaries, MatchTask, plan_tasks, run_experiment
from scrabblelab.sim.match import (
    CellId,
    MatchRow,
    MatchSummary,
    MatchTelemetry,
    TurnRecord,
    count_sign_flips,
    count_swings,
    run_match,
)

__all__ = [
    "Agent",
    "AgentSpec",
    "greedy_policy",
    "make_agent",
    "select_greedy",
    "CellDictionaries",
    "MatchTask",
    "plan_tasks",
    "run_experiment",
    "CellId",
    "MatchRow",
    "MatchSummary",
    "MatchTelemetry",
    "TurnRecord",
    "count_sign_flips",
    "count_swings",
    "run_match",
]
