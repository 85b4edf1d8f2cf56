"""Shared fixtures."""

import os
from collections.abc import Callable, Iterable
from dataclasses import replace
from pathlib import Path

import pytest

from scrabblelab.board import BoardLayout, standard_tile_bag
from scrabblelab.engine import GameState, PlacedTile, new_game
from scrabblelab.lexicon import Lexicon, build_automaton, load_word_file

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def words_path() -> Path:
    return DATA_DIR / "words.txt"


@pytest.fixture
def small_lexicon(words_path: Path) -> Lexicon:
    return load_word_file(words_path)


@pytest.fixture
def published_word_list() -> Path:
    """A full published word list, for the slow acceptance runs."""
    value = os.getenv("SCRABBLELAB_WORDLIST")
    if not value:
        pytest.skip("SCRABBLELAB_WORDLIST not set")
    return Path(value)


StateFactory = Callable[..., GameState]


@pytest.fixture
def make_state() -> StateFactory:
    """
    Build a position directly: given words, the mover's rack and tiles
    already on the board as {(row, col): letter} (lowercase for blanks).
    """

    def factory(
        words: Iterable[str],
        rack: str,
        tiles: dict[tuple[int, int], str] | None = None,
        layout: BoardLayout | None = None,
        seed: int = 1,
    ) -> GameState:
        layout = layout or BoardLayout.plain(5)
        state = new_game(layout, standard_tile_bag(seed), build_automaton(words), seed)
        distribution = state.bag.distribution
        rows = [[None] * layout.size for _ in range(layout.size)]
        for (row, col), ch in (tiles or {}).items():
            rows[row][col] = PlacedTile(ch.upper(), distribution.value(ch), blank=ch.islower())
        return replace(
            state,
            cells=tuple(tuple(row) for row in rows),
            racks=(tuple(sorted(rack)), state.racks[1]),
        )

    return factory
