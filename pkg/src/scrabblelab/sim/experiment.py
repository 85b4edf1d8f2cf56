"""Experiment grid runner."""

import concurrent.futures
from dataclasses import dataclass

import structlog

from scrabblelab.board import layout_for
from scrabblelab.config import ExperimentConfig, LoggingConfig
from scrabblelab.lexicon import (
    Lexicon,
    SubsetSpec,
    WordAutomaton,
    build_automaton,
    load_word_file,
    sample_subset,
)
from scrabblelab.logging_config import ErrorContext, setup_worker_logging
from scrabblelab.seeding import derive_seed
from scrabblelab.sim.agent import AgentSpec, make_agent
from scrabblelab.sim.match import CellId, MatchTelemetry, run_match

log = structlog.get_logger()


@dataclass(frozen=True)
class MatchTask:
    d: float
    p: float
    match_index: int


def plan_tasks(config: ExperimentConfig) -> list[MatchTask]:
    """Every match of the grid in output order: d, then p, then match index."""
    return [
        MatchTask(d, p, index)
        for d in config.d_values
        for p in config.p_values
        for index in range(config.matches)
    ]


class CellDictionaries:
    """Per-process cache of d' and its automaton, sampled once per d."""

    def __init__(self, lexicon: Lexicon, master_seed: int):
        self._lexicon = lexicon
        self._master_seed = master_seed
        self._cache: dict[float, tuple[Lexicon, WordAutomaton]] = {}

    def get(self, d: float) -> tuple[Lexicon, WordAutomaton]:
        if d not in self._cache:
            spec = SubsetSpec(d, derive_seed(self._master_seed, "dict", d))
            dictionary = sample_subset(self._lexicon, spec)
            self._cache[d] = (dictionary, build_automaton(dictionary))
            log.debug("cell_dictionary_built", d=d, words=len(dictionary))
        return self._cache[d]


def play_task(
    cells: CellDictionaries, board: int, master_seed: int, task: MatchTask
) -> MatchTelemetry:
    """Run one match; every seed is derived from the master seed and the task."""
    dictionary, automaton = cells.get(task.d)
    agents = []
    for agent_index in (0, 1):
        knowledge_seed = derive_seed(
            master_seed, "knowledge", task.d, task.p, task.match_index, agent_index
        )
        agents.append(make_agent(dictionary, AgentSpec(task.p, knowledge_seed), automaton))
    match_seed = derive_seed(master_seed, "match", task.d, task.p, task.match_index)
    return run_match(
        layout_for(board),
        automaton,
        agents,
        match_seed,
        cell=CellId(board, task.d, task.p),
        match_index=task.match_index,
    )


_worker_cells: CellDictionaries | None = None


def _init_worker(
    lexicon: Lexicon, master_seed: int, log_settings: LoggingConfig | None
) -> None:
    global _worker_cells
    if log_settings is not None:
        setup_worker_logging(log_settings)
    _worker_cells = CellDictionaries(lexicon, master_seed)


def _play_in_worker(board: int, master_seed: int, task: MatchTask) -> MatchTelemetry:
    assert _worker_cells is not None
    return play_task(_worker_cells, board, master_seed, task)


def run_experiment(
    config: ExperimentConfig,
    lexicon: Lexicon | None = None,
    workers: int | None = None,
    log_settings: LoggingConfig | None = None,
) -> list[MatchTelemetry]:
    """
    Run every match of the grid.

    Output is ordered by (d, p, match index) as listed in the config, and is
    identical whether matches run in this process or across workers.

    Args:
        config: The experiment grid
        lexicon: Master word list; loaded from config.dictionary_path if omitted
        workers: Worker processes; defaults to config.workers
        log_settings: Logging setup replayed in each worker process

    Raises:
        WordListError: If the dictionary file cannot be read
    """
    if lexicon is None:
        lexicon = load_word_file(config.dictionary_path)
    workers = workers if workers is not None else config.workers
    tasks = plan_tasks(config)

    with ErrorContext(
        log,
        "run_experiment",
        board=config.board,
        cells=len(config.d_values) * len(config.p_values),
        matches=len(tasks),
        workers=workers,
    ):
        if workers <= 1:
            cells = CellDictionaries(lexicon, config.seed)
            return [play_task(cells, config.board, config.seed, task) for task in tasks]

        results: dict[MatchTask, MatchTelemetry] = {}
        with concurrent.futures.ProcessPoolExecutor(
            max_workers=workers,
            initializer=_init_worker,
            initargs=(lexicon, config.seed, log_settings),
        ) as executor:
            futures = {
                executor.submit(_play_in_worker, config.board, config.seed, task): task
                for task in tasks
            }
            for done, future in enumerate(concurrent.futures.as_completed(futures), start=1):
                results[futures[future]] = future.result()
                if done % max(1, len(tasks) // 10) == 0:
                    log.info("experiment_progress", done=done, total=len(tasks))
        return [results[task] for task in tasks]
