"""Game rules: legality, scoring, rack/bag bookkeeping and game end.

Engine functions are pure transitions: they take a GameState and return
a new one, never mutating their input. Two players only.

Placement.letters lists the new tiles in board order along the
direction, skipping squares that already hold tiles. A lowercase letter
is a blank standing for that letter.
"""

from collections import Counter
from collections.abc import Callable
from dataclasses import dataclass, replace
from enum import Enum

from scrabblelab.board import BLANK, RACK_SIZE, BoardLayout, TileBag
from scrabblelab.errors import EmptyLexiconError, GameStateError, IllegalMoveError, Rule
from scrabblelab.lexicon import WordAutomaton
from scrabblelab.seeding import derive_seed

BINGO_BONUS = 50
SCORELESS_LIMIT = 6
PLAYERS = 2

Square = tuple[int, int]


class Direction(Enum):
    """Placement direction."""

    ACROSS = "across"
    DOWN = "down"

    @property
    def step(self) -> Square:
        return (0, 1) if self is Direction.ACROSS else (1, 0)

    @property
    def perpendicular(self) -> "Direction":
        return Direction.DOWN if self is Direction.ACROSS else Direction.ACROSS


class EndReason(Enum):
    """Why a game ended."""

    WENT_OUT = "went_out"
    SCORELESS = "scoreless"


@dataclass(frozen=True, slots=True)
class PlacedTile:
    """A tile on the board; blanks carry the letter they stand for."""

    letter: str
    value: int
    blank: bool = False


@dataclass(frozen=True)
class Placement:
    """Put 1-7 rack tiles on the board starting at (row, col)."""

    row: int
    col: int
    direction: Direction
    letters: str

    kind = "place"

    @property
    def tile_count(self) -> int:
        return len(self.letters)

    @property
    def rack_tiles(self) -> list[str]:
        """Rack tiles consumed, blanks as '?'."""
        return [BLANK if ch.islower() else ch for ch in self.letters]

    def normalized(self) -> "Placement":
        """Single-tile placements are always expressed as Across."""
        if len(self.letters) == 1 and self.direction is Direction.DOWN:
            return replace(self, direction=Direction.ACROSS)
        return self


@dataclass(frozen=True)
class Exchange:
    """Swap rack tiles for tiles from the bag."""

    tiles: tuple[str, ...]

    kind = "exchange"


@dataclass(frozen=True)
class Pass:
    """Do nothing this turn."""

    kind = "pass"


Move = Placement | Exchange | Pass


@dataclass(frozen=True)
class MoveOutcome:
    """Result of applying one move."""

    points: int
    words_formed: tuple[str, ...] = ()
    terminal: bool = False


Cells = tuple[tuple[PlacedTile | None, ...], ...]


@dataclass(frozen=True)
class GameState:
    """Complete two-player game position."""

    layout: BoardLayout
    cells: Cells
    racks: tuple[tuple[str, ...], tuple[str, ...]]
    bag: TileBag
    scores: tuple[int, int]
    dictionary: WordAutomaton
    seed: int
    turn_index: int = 0
    scoreless_streak: int = 0
    ended_by: EndReason | None = None
    finisher: int | None = None

    @property
    def mover(self) -> int:
        return self.turn_index % PLAYERS

    @property
    def rack(self) -> tuple[str, ...]:
        """The mover's rack."""
        return self.racks[self.mover]

    @property
    def terminal(self) -> bool:
        return self.ended_by is not None

    @property
    def size(self) -> int:
        return self.layout.size

    def tile_at(self, row: int, col: int) -> PlacedTile | None:
        return self.cells[row][col]

    def placed_count(self) -> int:
        return sum(1 for row in self.cells for cell in row if cell is not None)

    def is_board_empty(self) -> bool:
        return all(cell is None for row in self.cells for cell in row)


def new_game(layout: BoardLayout, bag: TileBag, dictionary: WordAutomaton, seed: int) -> GameState:
    """Empty board, both racks drawn to seven, scores zero."""
    if len(dictionary) == 0:
        raise EmptyLexiconError("dictionary")
    first, bag = bag.draw(RACK_SIZE)
    second, bag = bag.draw(RACK_SIZE)
    empty_row = (None,) * layout.size
    return GameState(
        layout=layout,
        cells=(empty_row,) * layout.size,
        racks=(tuple(sorted(first)), tuple(sorted(second))),
        bag=bag,
        scores=(0, 0),
        dictionary=dictionary,
        seed=seed,
    )


def placed_squares(state: GameState, mv: Placement) -> list[Square]:
    """Squares receiving the new tiles, skipping occupied ones."""
    dr, dc = mv.direction.step
    row, col = mv.row, mv.col
    if not state.layout.in_bounds(row, col):
        raise IllegalMoveError(Rule.OUT_OF_BOUNDS, f"origin ({row}, {col}) off the board")
    if state.cells[row][col] is not None:
        raise IllegalMoveError(Rule.OCCUPIED, f"origin ({row}, {col}) already holds a tile")
    squares: list[Square] = []
    for _ in mv.letters:
        while state.layout.in_bounds(row, col) and state.cells[row][col] is not None:
            row, col = row + dr, col + dc
        if not state.layout.in_bounds(row, col):
            raise IllegalMoveError(Rule.OUT_OF_BOUNDS, f"{mv.letters!r} runs off the board")
        squares.append((row, col))
        row, col = row + dr, col + dc
    return squares


def remove_from_rack(rack: tuple[str, ...], tiles: list[str]) -> tuple[str, ...]:
    """Rack left after taking ``tiles`` out of it."""
    remaining = Counter(rack)
    needed = Counter(tiles)
    for tile, count in needed.items():
        if remaining[tile] < count:
            raise IllegalMoveError(
                Rule.RACK_MISMATCH,
                f"needs {count} x {tile!r}, rack {''.join(rack)!r} holds {remaining[tile]}",
            )
        remaining[tile] -= count
    return tuple(sorted(remaining.elements()))


def _run(
    letter_at: Callable[[int, int], PlacedTile | None],
    layout: BoardLayout,
    square: Square,
    direction: Direction,
) -> list[Square]:
    """Maximal occupied run through ``square`` along ``direction``."""
    dr, dc = direction.step
    row, col = square
    while layout.in_bounds(row - dr, col - dc) and letter_at(row - dr, col - dc) is not None:
        row, col = row - dr, col - dc
    run = []
    while layout.in_bounds(row, col) and letter_at(row, col) is not None:
        run.append((row, col))
        row, col = row + dr, col + dc
    return run


def _new_tiles(state: GameState, mv: Placement, squares: list[Square]) -> dict[Square, PlacedTile]:
    values = state.bag.distribution
    tiles = {}
    for square, ch in zip(squares, mv.letters):
        if ch.islower():
            tiles[square] = PlacedTile(ch.upper(), 0, blank=True)
        else:
            tiles[square] = PlacedTile(ch, values.value(ch))
    return tiles


def _formed_runs(
    state: GameState, mv: Placement, new: dict[Square, PlacedTile]
) -> list[list[Square]]:
    cells = state.cells

    def letter_at(r: int, c: int) -> PlacedTile | None:
        return new.get((r, c)) or cells[r][c]

    squares = list(new)
    runs = []
    main = _run(letter_at, state.layout, squares[0], mv.direction)
    if len(main) >= 2:
        runs.append(main)
    cross_direction = mv.direction.perpendicular
    for square in squares:
        cross = _run(letter_at, state.layout, square, cross_direction)
        if len(cross) >= 2:
            runs.append(cross)
    return runs


def _run_word(state: GameState, new: dict[Square, PlacedTile], run: list[Square]) -> str:
    return "".join((new.get(sq) or state.cells[sq[0]][sq[1]]).letter for sq in run)


def validate_placement(
    state: GameState,
    mv: Placement,
    accepts: Callable[[str], bool] | None = None,
) -> list[str]:
    """
    Check every placement rule and return the words formed.

    Args:
        state: Position before the move
        mv: The placement to check
        accepts: Word acceptance test; defaults to the game dictionary d'

    Raises:
        IllegalMoveError: Naming the first violated rule
    """
    if not 1 <= mv.tile_count <= RACK_SIZE:
        raise IllegalMoveError(Rule.TILE_COUNT, f"{mv.tile_count} tiles placed")
    if not all(ch.isalpha() and ch.isascii() for ch in mv.letters):
        raise IllegalMoveError(Rule.RACK_MISMATCH, f"bad letters {mv.letters!r}")

    squares = placed_squares(state, mv)
    remove_from_rack(state.rack, mv.rack_tiles)

    if state.is_board_empty():
        if state.layout.center not in squares:
            raise IllegalMoveError(Rule.CENTER_NOT_COVERED, "first word must cover the center")
    elif not any(_touches_tile(state, square) for square in squares):
        raise IllegalMoveError(Rule.DISCONNECTED, "placement touches no existing tile")

    new = _new_tiles(state, mv, squares)
    runs = _formed_runs(state, mv, new)
    if not runs:
        raise IllegalMoveError(Rule.NO_WORD, "placement forms no word of two or more letters")

    accepts = accepts or state.dictionary.accepts
    words = [_run_word(state, new, run) for run in runs]
    for word in words:
        if not accepts(word):
            raise IllegalMoveError(Rule.WORD_NOT_ACCEPTED, f"{word} is not in the dictionary")
    return words


def _touches_tile(state: GameState, square: Square) -> bool:
    row, col = square
    for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
        r, c = row + dr, col + dc
        if state.layout.in_bounds(r, c) and state.cells[r][c] is not None:
            return True
    return False


def _score_runs(state: GameState, new: dict[Square, PlacedTile], runs: list[list[Square]]) -> int:
    layout = state.layout
    total = 0
    for run in runs:
        word_total = 0
        word_multiplier = 1
        for square in run:
            tile = new.get(square)
            if tile is None:
                placed = state.cells[square[0]][square[1]]
                assert placed is not None
                word_total += placed.value
            else:
                premium = layout.premium_at(*square)
                word_total += tile.value * premium.letter_multiplier
                word_multiplier *= premium.word_multiplier
        total += word_total * word_multiplier
    if len(new) == RACK_SIZE:
        total += BINGO_BONUS
    return total


def score_placement(state: GameState, mv: Placement, check: bool = True) -> int:
    """
    Points for a placement: each formed word's letter sum (letter premiums on
    newly covered squares) times its new word premiums, plus the bingo bonus
    for seven tiles.

    With check=False the caller vouches for legality (move generation).

    Raises:
        IllegalMoveError: If check is set and the placement is illegal
    """
    if check:
        validate_placement(state, mv)
    squares = placed_squares(state, mv)
    new = _new_tiles(state, mv, squares)
    return _score_runs(state, new, _formed_runs(state, mv, new))


def _refill(rack: tuple[str, ...], bag: TileBag) -> tuple[tuple[str, ...], TileBag]:
    drawn, bag = bag.draw(RACK_SIZE - len(rack))
    return tuple(sorted(rack + drawn)), bag


def _with_rack(racks: tuple[tuple[str, ...], tuple[str, ...]], player: int, rack: tuple[str, ...]):
    return (rack, racks[1]) if player == 0 else (racks[0], rack)


def _advance(state: GameState, points: int, **changes) -> GameState:
    scores = list(state.scores)
    scores[state.mover] += points
    streak = 0 if points > 0 else state.scoreless_streak + 1
    next_state = replace(
        state,
        scores=(scores[0], scores[1]),
        turn_index=state.turn_index + 1,
        scoreless_streak=streak,
        **changes,
    )
    mover = state.mover
    if not next_state.racks[mover] and len(next_state.bag) == 0:
        return replace(next_state, ended_by=EndReason.WENT_OUT, finisher=mover)
    if streak >= SCORELESS_LIMIT:
        return replace(next_state, ended_by=EndReason.SCORELESS)
    return next_state


def apply_move(state: GameState, mv: Move) -> tuple[GameState, MoveOutcome]:
    """
    Apply a move for the player to act.

    Raises:
        GameStateError: If the game is already over
        IllegalMoveError: If the move breaks a rule
    """
    if state.terminal:
        raise GameStateError("game is over")

    if isinstance(mv, Pass):
        next_state = _advance(state, 0)
        return next_state, MoveOutcome(points=0, terminal=next_state.terminal)

    if isinstance(mv, Exchange):
        if len(state.bag) < RACK_SIZE:
            raise IllegalMoveError(
                Rule.BAG_TOO_SMALL, f"exchange needs {RACK_SIZE} tiles in bag, has {len(state.bag)}"
            )
        if not 1 <= len(mv.tiles) <= RACK_SIZE:
            raise IllegalMoveError(Rule.TILE_COUNT, f"exchanging {len(mv.tiles)} tiles")
        kept = remove_from_rack(state.rack, list(mv.tiles))
        drawn, bag = state.bag.draw(len(mv.tiles))
        bag = bag.put_back(mv.tiles, derive_seed(state.seed, "exchange", state.turn_index))
        racks = _with_rack(state.racks, state.mover, tuple(sorted(kept + drawn)))
        next_state = _advance(state, 0, racks=racks, bag=bag)
        return next_state, MoveOutcome(points=0, terminal=next_state.terminal)

    words = validate_placement(state, mv)
    points = score_placement(state, mv, check=False)
    squares = placed_squares(state, mv)
    new = _new_tiles(state, mv, squares)

    rows = [list(row) for row in state.cells]
    for (r, c), tile in new.items():
        rows[r][c] = tile
    cells = tuple(tuple(row) for row in rows)

    rack, bag = _refill(remove_from_rack(state.rack, mv.rack_tiles), state.bag)
    racks = _with_rack(state.racks, state.mover, rack)
    next_state = _advance(state, points, cells=cells, racks=racks, bag=bag)
    return next_state, MoveOutcome(
        points=points, words_formed=tuple(words), terminal=next_state.terminal
    )


def rack_value(state: GameState, player: int) -> int:
    distribution = state.bag.distribution
    return sum(distribution.value(tile) for tile in state.racks[player])


def final_adjust(state: GameState) -> tuple[int, int]:
    """
    Final scores after rack adjustments.

    A player who went out gains the opponent's remaining tile values and
    the opponent loses them. After six scoreless turns each player loses
    their own remaining tile values.

    Raises:
        GameStateError: If the game has not ended
    """
    if not state.terminal:
        raise GameStateError("final_adjust called on a game in progress")
    scores = list(state.scores)
    if state.ended_by is EndReason.WENT_OUT:
        assert state.finisher is not None
        opponent = 1 - state.finisher
        remaining = rack_value(state, opponent)
        scores[state.finisher] += remaining
        scores[opponent] -= remaining
    else:
        for player in range(PLAYERS):
            scores[player] -= rack_value(state, player)
    return scores[0], scores[1]


def board_words(state: GameState) -> list[str]:
    """Every maximal across/down run of two or more tiles, by full rescan."""
    words = []
    size = state.size
    for line in range(size):
        for direction in Direction:
            run = ""
            for i in range(size + 1):
                r, c = (line, i) if direction is Direction.ACROSS else (i, line)
                tile = state.cells[r][c] if i < size else None
                if tile is not None:
                    run += tile.letter
                    continue
                if len(run) >= 2:
                    words.append(run)
                run = ""
    return words


def tile_inventory(state: GameState) -> Counter:
    """All tiles in bag, racks and board; blanks on the board count as '?'."""
    inventory: Counter = Counter(state.bag.tiles)
    for rack in state.racks:
        inventory.update(rack)
    for row in state.cells:
        for tile in row:
            if tile is not None:
                inventory[BLANK if tile.blank else tile.letter] += 1
    return inventory
