"""Knowledge-limited greedy players."""

from dataclasses import dataclass

from scrabblelab.board import RACK_SIZE
from scrabblelab.engine import Exchange, GameState, Move, Pass
from scrabblelab.errors import DomainError
from scrabblelab.lexicon import (
    KnowledgeSpec,
    Lexicon,
    WordAutomaton,
    build_automaton,
    sample_knowledge,
)
from scrabblelab.movegen import GeneratedMove, generate_moves, placement_key


@dataclass(frozen=True)
class AgentSpec:
    """Policy, knowledge fraction p of the game dictionary and its sampling seed."""

    knowledge_fraction: float
    knowledge_seed: int
    policy: str = "greedy"

    def __post_init__(self) -> None:
        if not 0.0 < self.knowledge_fraction <= 1.0:
            raise DomainError("p", self.knowledge_fraction, "a fraction in (0, 1]")
        if self.policy != "greedy":
            raise DomainError("policy", self.policy, "greedy")


@dataclass(frozen=True)
class Agent:
    spec: AgentSpec
    knowledge: WordAutomaton

    def choose(self, state: GameState) -> tuple[Move, int]:
        """The move to play and the number of placements it was chosen from."""
        moves = generate_moves(state, self.knowledge)
        return select_greedy(state, moves), len(moves)


def make_agent(
    dictionary: Lexicon, spec: AgentSpec, dictionary_automaton: WordAutomaton | None = None
) -> Agent:
    """Sample the agent's knowledge from d' and compile it.

    When the sample is all of d' the dictionary's own automaton is reused.
    """
    knowledge = sample_knowledge(
        dictionary, KnowledgeSpec(spec.knowledge_fraction, spec.knowledge_seed)
    )
    if dictionary_automaton is not None and len(knowledge) == len(dictionary):
        return Agent(spec, dictionary_automaton)
    return Agent(spec, build_automaton(knowledge))


def select_greedy(state: GameState, moves: list[GeneratedMove]) -> Move:
    """
    Highest-scoring placement; ties go to the lowest row, then lowest column,
    then Across before Down, then the alphabetically smallest placed letters.

    With no placement available: exchange the whole rack if the bag can
    cover it, otherwise pass.
    """
    if moves:
        best = min(moves, key=lambda m: (-m.points, placement_key(m.placement)))
        return best.placement
    if len(state.bag) >= RACK_SIZE and state.rack:
        return Exchange(tuple(state.rack))
    return Pass()


def greedy_policy(state: GameState, knowledge: WordAutomaton) -> Move:
    return select_greedy(state, generate_moves(state, knowledge))
