"""Legal placement enumeration.

generate_moves follows the Appel-Jacobson scheme over a forward DAWG:
anchors are empty squares next to tiles (or the centre on an empty
board); for each anchor a left part is grown from the rack through
non-anchor squares (or read from tiles already left of the anchor), then
extended rightwards under per-square cross-check sets.

oracle_generate is the independent brute-force reference: it tries every
origin, direction and rack realization, and judges each candidate by a
full-board rescan and a naive re-score.
"""

import random
from collections import Counter
from collections.abc import Collection
from dataclasses import dataclass

import structlog

from scrabblelab.board import (
    BLANK,
    RACK_SIZE,
    BoardLayout,
    TileDistribution,
    layout_13x13,
    shuffled_bag,
    standard_layout,
)
from scrabblelab.engine import (
    BINGO_BONUS,
    Direction,
    GameState,
    Placement,
    Square,
    apply_move,
    new_game,
    score_placement,
)
from scrabblelab.lexicon import NO_STATE, WordAutomaton, build_automaton
from scrabblelab.seeding import derive_seed

log = structlog.get_logger()

ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
ALL_LETTERS = frozenset(ALPHABET)
_DIRECTION_ORDER = {Direction.ACROSS: 0, Direction.DOWN: 1}


@dataclass(frozen=True)
class Anchor:
    """Empty square a new word must cover, with its cross-check letters."""

    row: int
    col: int
    direction: Direction
    cross_letters: frozenset[str]


@dataclass(frozen=True)
class GeneratedMove:
    """A legal placement and its engine score."""

    placement: Placement
    points: int


def placement_key(placement: Placement) -> tuple[int, int, int, str]:
    """Canonical order: row, column, Across before Down, placed letters."""
    return (
        placement.row,
        placement.col,
        _DIRECTION_ORDER[placement.direction],
        placement.letters,
    )


def _line_square(line: int, index: int, direction: Direction) -> Square:
    return (line, index) if direction is Direction.ACROSS else (index, line)


def cross_checks(
    state: GameState,
    cell: Square,
    direction: Direction,
    automaton: WordAutomaton | None = None,
) -> frozenset[str]:
    """
    Letters placeable on an empty ``cell`` for a word running in ``direction``.

    A letter qualifies when the perpendicular run through the cell stays a
    single tile or spells a word accepted by ``automaton`` (default: the
    game dictionary).
    """
    automaton = automaton or state.dictionary
    dr, dc = direction.perpendicular.step
    row, col = cell
    layout = state.layout

    before = []
    r, c = row - dr, col - dc
    while layout.in_bounds(r, c) and state.cells[r][c] is not None:
        before.append(state.cells[r][c].letter)
        r, c = r - dr, c - dc
    after = []
    r, c = row + dr, col + dc
    while layout.in_bounds(r, c) and state.cells[r][c] is not None:
        after.append(state.cells[r][c].letter)
        r, c = r + dr, c + dc

    if not before and not after:
        return ALL_LETTERS

    node = automaton.follow("".join(reversed(before)))
    if node == NO_STATE:
        return frozenset()
    suffix = "".join(after)
    allowed = set()
    for letter, child in automaton.transitions[node].items():
        end = automaton.follow(suffix, child)
        if end != NO_STATE and automaton.finals[end]:
            allowed.add(letter)
    return frozenset(allowed)


def _has_neighbour(state: GameState, row: int, col: int) -> bool:
    for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
        r, c = row + dr, col + dc
        if state.layout.in_bounds(r, c) and state.cells[r][c] is not None:
            return True
    return False


def anchors(
    state: GameState,
    direction: Direction,
    automaton: WordAutomaton | None = None,
) -> list[Anchor]:
    """Anchor squares for words in ``direction``."""
    if state.is_board_empty():
        row, col = state.layout.center
        return [Anchor(row, col, direction, ALL_LETTERS)]
    found = []
    for row in range(state.size):
        for col in range(state.size):
            if state.cells[row][col] is None and _has_neighbour(state, row, col):
                letters = cross_checks(state, (row, col), direction, automaton)
                found.append(Anchor(row, col, direction, letters))
    return found


class _LineGenerator:
    """Generates placements along one board line for one direction."""

    def __init__(
        self,
        state: GameState,
        knowledge: WordAutomaton,
        direction: Direction,
        line: int,
        anchor_squares: set[Square],
        rack: Counter,
        found: dict[Placement, GeneratedMove],
    ):
        size = state.size
        self.state = state
        self.direction = direction
        self.line = line
        self.size = size
        self.transitions = knowledge.transitions
        self.finals = knowledge.finals
        self.rack = rack
        self.found = found
        self.letters: list[str | None] = []
        self.cross: list[frozenset[str]] = []
        self.anchor_flags: list[bool] = []
        for index in range(size):
            row, col = _line_square(line, index, direction)
            tile = state.cells[row][col]
            self.letters.append(tile.letter if tile is not None else None)
            if tile is None and _has_neighbour(state, row, col):
                self.cross.append(cross_checks(state, (row, col), direction, knowledge))
            else:
                self.cross.append(ALL_LETTERS)
            self.anchor_flags.append((row, col) in anchor_squares)

    def run(self) -> None:
        for anchor in range(self.size):
            if not self.anchor_flags[anchor]:
                continue
            if anchor > 0 and self.letters[anchor - 1] is not None:
                start = anchor - 1
                while start > 0 and self.letters[start - 1] is not None:
                    start -= 1
                node = 0
                for index in range(start, anchor):
                    node = self.transitions[node].get(self.letters[index], NO_STATE)
                    if node == NO_STATE:
                        break
                if node != NO_STATE:
                    self._extend_right([], node, anchor, anchor, anchor - start)
                continue

            limit = 0
            index = anchor - 1
            while (
                index >= 0
                and self.letters[index] is None
                and not self.anchor_flags[index]
                and limit < RACK_SIZE - 1
            ):
                limit += 1
                index -= 1
            self._left_part([], 0, anchor, limit)

    def _take(self, letter: str):
        """Yield rack tiles able to play ``letter``: the letter itself, then a blank."""
        rack = self.rack
        if rack[letter] > 0:
            rack[letter] -= 1
            yield letter
            rack[letter] += 1
        if rack[BLANK] > 0:
            rack[BLANK] -= 1
            yield letter.lower()
            rack[BLANK] += 1

    def _left_part(self, tiles: list[str], node: int, anchor: int, limit: int) -> None:
        self._extend_right(tiles, node, anchor, anchor, len(tiles))
        if limit == 0:
            return
        for letter, child in self.transitions[node].items():
            for tile in self._take(letter):
                tiles.append(tile)
                self._left_part(tiles, child, anchor, limit - 1)
                tiles.pop()

    def _extend_right(
        self,
        tiles: list[str],
        node: int,
        pos: int,
        anchor: int,
        length: int,
        origin: int | None = None,
    ) -> None:
        if origin is None:
            origin = pos - len(tiles)
        if pos >= self.size or self.letters[pos] is None:
            if self.finals[node] and pos > anchor and tiles and length >= 2:
                self._record(tiles, origin)
            if pos >= self.size:
                return
            allowed = self.cross[pos]
            for letter, child in self.transitions[node].items():
                if letter not in allowed:
                    continue
                for tile in self._take(letter):
                    tiles.append(tile)
                    self._extend_right(tiles, child, pos + 1, anchor, length + 1, origin)
                    tiles.pop()
        else:
            child = self.transitions[node].get(self.letters[pos], NO_STATE)
            if child != NO_STATE:
                self._extend_right(tiles, child, pos + 1, anchor, length + 1, origin)

    def _record(self, tiles: list[str], origin: int) -> None:
        row, col = _line_square(self.line, origin, self.direction)
        placement = Placement(row, col, self.direction, "".join(tiles)).normalized()
        if placement in self.found:
            return
        points = score_placement(self.state, placement, check=False)
        self.found[placement] = GeneratedMove(placement, points)


def generate_moves(state: GameState, knowledge: WordAutomaton) -> list[GeneratedMove]:
    """
    Every legal placement for the mover whose formed words are all known.

    Main and cross words are restricted to ``knowledge``. Results are
    unique per (origin, direction, placed letters) and sorted canonically.
    """
    rack = Counter(state.rack)
    rack.setdefault(BLANK, 0)
    found: dict[Placement, GeneratedMove] = {}
    for direction in Direction:
        anchor_squares = {(a.row, a.col) for a in anchors(state, direction, knowledge)}
        lines = {a[0] if direction is Direction.ACROSS else a[1] for a in anchor_squares}
        for line in sorted(lines):
            _LineGenerator(state, knowledge, direction, line, anchor_squares, rack, found).run()
    return sorted(found.values(), key=lambda m: placement_key(m.placement))


# Brute-force reference ------------------------------------------------------


def _squares_along(state: GameState, row: int, col: int, direction: Direction, k: int):
    dr, dc = direction.step
    squares = []
    r, c = row, col
    while len(squares) < k:
        if not state.layout.in_bounds(r, c):
            return None
        if state.cells[r][c] is None:
            squares.append((r, c))
        r, c = r + dr, c + dc
    return squares


def _main_pattern(state: GameState, squares: list[Square], direction: Direction):
    """Span of the main run as (fixed letter or None) per square, new squares as None."""
    dr, dc = direction.step
    new = set(squares)
    r, c = squares[0]
    while state.layout.in_bounds(r - dr, c - dc) and state.cells[r - dr][c - dc] is not None:
        r, c = r - dr, c - dc
    pattern = []
    while state.layout.in_bounds(r, c) and ((r, c) in new or state.cells[r][c] is not None):
        tile = state.cells[r][c]
        pattern.append(None if (r, c) in new else tile.letter)
        r, c = r + dr, c + dc
    return pattern


def _candidate_letters(pattern, k: int, by_length: dict[int, list[str]]) -> set[str]:
    if k == 1:
        return set(ALPHABET)
    candidates = set()
    for word in by_length.get(len(pattern), ()):
        if all(fixed is None or fixed == ch for fixed, ch in zip(pattern, word)):
            candidates.add("".join(ch for fixed, ch in zip(pattern, word) if fixed is None))
    return candidates


def _realizations(letters: str, rack: Counter) -> list[str]:
    """Every way to spell ``letters`` with rack tiles, blanks as lowercase."""
    results: list[str] = []

    def walk(index: int, built: list[str]) -> None:
        if index == len(letters):
            results.append("".join(built))
            return
        letter = letters[index]
        if rack[letter] > 0:
            rack[letter] -= 1
            built.append(letter)
            walk(index + 1, built)
            built.pop()
            rack[letter] += 1
        if rack[BLANK] > 0:
            rack[BLANK] -= 1
            built.append(letter.lower())
            walk(index + 1, built)
            built.pop()
            rack[BLANK] += 1

    walk(0, [])
    return results


def _rescan_score(
    state: GameState, squares: list[Square], tiles: str, words: frozenset[str]
) -> int | None:
    """Score by rescanning the whole board; None if the placement is illegal."""
    if state.is_board_empty():
        if state.layout.center not in squares:
            return None
    elif not any(_has_neighbour(state, r, c) for r, c in squares):
        return None

    distribution = state.bag.distribution
    new = {}
    for square, ch in zip(squares, tiles):
        new[square] = (ch.upper(), distribution.value(ch))

    def cell(r: int, c: int):
        if (r, c) in new:
            return new[(r, c)]
        tile = state.cells[r][c]
        return None if tile is None else (tile.letter, tile.value)

    size = state.size
    total = 0
    formed = 0
    for direction in Direction:
        for line in range(size):
            run: list[Square] = []
            for index in range(size + 1):
                square = _line_square(line, index, direction) if index < size else None
                if square is not None and cell(*square) is not None:
                    run.append(square)
                    continue
                if len(run) >= 2 and any(sq in new for sq in run):
                    word = "".join(cell(*sq)[0] for sq in run)
                    if word not in words:
                        return None
                    formed += 1
                    word_total = 0
                    multiplier = 1
                    for sq in run:
                        letter_value = cell(*sq)[1]
                        if sq in new:
                            premium = state.layout.premium_at(*sq)
                            letter_value *= premium.letter_multiplier
                            multiplier *= premium.word_multiplier
                        word_total += letter_value
                    total += word_total * multiplier
                run = []
    if formed == 0:
        return None
    if len(squares) == RACK_SIZE:
        total += BINGO_BONUS
    return total


def oracle_generate(state: GameState, words: Collection[str]) -> list[GeneratedMove]:
    """
    Exhaustive reference enumeration for small lexicons.

    Every empty origin, both directions, 1..7 rack tiles and every blank
    assignment. Candidate letters for multi-tile placements are limited to
    those some same-length word could supply along the main run (any other
    choice fails the rescan anyway); single tiles try all 26 letters.
    """
    word_set = frozenset(words)
    by_length: dict[int, list[str]] = {}
    for word in sorted(word_set):
        by_length.setdefault(len(word), []).append(word)

    rack = Counter(state.rack)
    rack.setdefault(BLANK, 0)
    max_tiles = min(RACK_SIZE, len(state.rack))
    found: dict[Placement, GeneratedMove] = {}

    for row in range(state.size):
        for col in range(state.size):
            if state.cells[row][col] is not None:
                continue
            for direction in Direction:
                for k in range(1, max_tiles + 1):
                    if k == 1 and direction is Direction.DOWN:
                        continue
                    squares = _squares_along(state, row, col, direction, k)
                    if squares is None:
                        break
                    pattern = _main_pattern(state, squares, direction)
                    for letters in sorted(_candidate_letters(pattern, k, by_length)):
                        for tiles in _realizations(letters, rack):
                            points = _rescan_score(state, squares, tiles, word_set)
                            if points is None:
                                continue
                            placement = Placement(row, col, direction, tiles)
                            found[placement] = GeneratedMove(placement, points)

    return sorted(found.values(), key=lambda m: placement_key(m.placement))


# Equivalence fuzzing --------------------------------------------------------

FUZZ_MAX_WORDS = 50
FUZZ_SIZES = (5, 7, 9, 11, 13, 15)


@dataclass(frozen=True)
class Counterexample:
    """A state where the generator and the oracle disagree."""

    iteration: int
    board: str
    rack: str
    words: tuple[str, ...]
    missing: tuple[GeneratedMove, ...]
    extra: tuple[GeneratedMove, ...]

    def describe(self) -> str:
        def fmt(moves: tuple[GeneratedMove, ...]) -> str:
            return ", ".join(
                f"({m.placement.row},{m.placement.col},{m.placement.direction.value},"
                f"{m.placement.letters})={m.points}"
                for m in moves
            ) or "-"

        return "\n".join(
            [
                f"iteration {self.iteration}: generator and oracle disagree",
                f"rack: {self.rack}",
                f"words: {' '.join(self.words)}",
                "board:",
                self.board,
                f"only in oracle: {fmt(self.missing)}",
                f"only in generator: {fmt(self.extra)}",
            ]
        )


@dataclass(frozen=True)
class FuzzReport:
    iterations: int
    counterexample: Counterexample | None

    @property
    def ok(self) -> bool:
        return self.counterexample is None


def _move_key(move: GeneratedMove) -> tuple[int, int, int, str]:
    return placement_key(move.placement)


def _render_cells(state: GameState) -> str:
    return "\n".join(
        "".join(
            "." if tile is None else (tile.letter.lower() if tile.blank else tile.letter)
            for tile in row
        )
        for row in state.cells
    )


def random_instance(rng: random.Random) -> tuple[GameState, tuple[str, ...]]:
    """
    A small random position: board 5x5..15x15, at most 50 words over a
    reduced alphabet, and a few moves of recorded legal play.
    """
    size = rng.choice(FUZZ_SIZES)
    if size == 15 and rng.random() < 0.5:
        layout = standard_layout()
    elif size == 13 and rng.random() < 0.5:
        layout = layout_13x13()
    elif rng.random() < 0.5:
        layout = standard_layout().cropped(size)
    else:
        layout = BoardLayout.plain(size)

    alphabet = rng.sample(ALPHABET, rng.randint(3, 6))
    word_count = rng.randint(1, FUZZ_MAX_WORDS)
    words = sorted(
        {
            "".join(rng.choice(alphabet) for _ in range(rng.randint(2, min(5, size))))
            for _ in range(word_count)
        }
    )
    counts = {letter: 10 for letter in alphabet}
    values = {letter: rng.randint(0, 5) for letter in alphabet}
    counts[BLANK] = rng.randint(0, 2)
    values[BLANK] = 0
    distribution = TileDistribution.from_counts(counts, values, label="fuzz")

    automaton = build_automaton(words)
    seed = rng.getrandbits(64)
    state = new_game(layout, shuffled_bag(distribution, seed), automaton, seed)
    for _ in range(rng.randint(0, 8)):
        moves = generate_moves(state, automaton)
        if not moves:
            break
        state, _ = apply_move(state, rng.choice(moves).placement)
        if state.terminal or not state.rack:
            break
    return state, tuple(words)


def fuzz_movegen(iterations: int, seed: int) -> FuzzReport:
    """
    Compare generate_moves with oracle_generate on random small positions.

    Stops at the first disagreement in placements or points.
    """
    if iterations == 0:
        log.warning("fuzz_no_iterations")
    checked = 0
    for iteration in range(iterations):
        rng = random.Random(derive_seed(seed, "fuzz", iteration))
        state, words = random_instance(rng)
        if state.terminal or not state.rack:
            continue
        generated = set(generate_moves(state, state.dictionary))
        expected = set(oracle_generate(state, words))
        checked += 1
        if generated != expected:
            counterexample = Counterexample(
                iteration=iteration,
                board=_render_cells(state),
                rack="".join(state.rack),
                words=words,
                missing=tuple(sorted(expected - generated, key=_move_key)),
                extra=tuple(sorted(generated - expected, key=_move_key)),
            )
            log.warning(
                "fuzz_mismatch",
                iteration=iteration,
                missing=len(counterexample.missing),
                extra=len(counterexample.extra),
            )
            return FuzzReport(iterations=checked, counterexample=counterexample)
    log.info("fuzz_completed", iterations=iterations, checked=checked)
    return FuzzReport(iterations=checked, counterexample=None)
