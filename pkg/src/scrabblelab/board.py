"""Board geometry, premium layouts and the tile inventory."""

import random
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import Enum
from functools import cache
from importlib import resources
from pathlib import Path

import structlog

from scrabblelab.errors import DomainError, TileDistributionError

log = structlog.get_logger()

BLANK = "?"
RACK_SIZE = 7


class Premium(Enum):
    """Premium square kinds."""

    NONE = ".."
    DOUBLE_LETTER = "DL"
    TRIPLE_LETTER = "TL"
    DOUBLE_WORD = "DW"
    TRIPLE_WORD = "TW"

    @property
    def token(self) -> str:
        return self.value

    @property
    def letter_multiplier(self) -> int:
        return {Premium.DOUBLE_LETTER: 2, Premium.TRIPLE_LETTER: 3}.get(self, 1)

    @property
    def word_multiplier(self) -> int:
        return {Premium.DOUBLE_WORD: 2, Premium.TRIPLE_WORD: 3}.get(self, 1)


@dataclass(frozen=True)
class BoardLayout:
    """Square grid of premium kinds with an odd side length."""

    size: int
    premiums: tuple[tuple[Premium, ...], ...]
    name: str = ""

    @property
    def center(self) -> tuple[int, int]:
        return (self.size // 2, self.size // 2)

    @property
    def area(self) -> int:
        return self.size * self.size

    def premium_at(self, row: int, col: int) -> Premium:
        return self.premiums[row][col]

    def in_bounds(self, row: int, col: int) -> bool:
        return 0 <= row < self.size and 0 <= col < self.size

    def premium_counts(self) -> dict[Premium, int]:
        counts = Counter(p for row in self.premiums for p in row)
        return {kind: counts.get(kind, 0) for kind in Premium}

    def is_rotationally_symmetric(self) -> bool:
        """True when the grid is unchanged by a 180 degree rotation."""
        last = self.size - 1
        return all(
            self.premiums[r][c] == self.premiums[last - r][last - c]
            for r in range(self.size)
            for c in range(self.size)
        )

    def render(self) -> str:
        """ASCII export, one line per row, tokens from {.., DL, TL, DW, TW}."""
        return "\n".join(" ".join(p.token for p in row) for row in self.premiums)

    def cropped(self, size: int) -> "BoardLayout":
        """Centred size x size window of this layout (small verification boards)."""
        if size % 2 == 0 or not 1 <= size <= self.size:
            raise DomainError("size", size, f"odd and <= {self.size}")
        offset = (self.size - size) // 2
        rows = tuple(
            self.premiums[r][offset:offset + size] for r in range(offset, offset + size)
        )
        return BoardLayout(size=size, premiums=rows, name=f"{self.name}/crop{size}")

    @classmethod
    def plain(cls, size: int) -> "BoardLayout":
        """Premium-free odd-sized board, used for small hand-checkable positions."""
        if size % 2 == 0 or size < 1:
            raise DomainError("size", size, "odd and >= 1")
        row = (Premium.NONE,) * size
        return cls(size=size, premiums=(row,) * size, name=f"plain{size}")


def parse_layout(text: str, name: str = "") -> BoardLayout:
    """Parse an ASCII grid of premium tokens into a layout."""
    by_token = {p.token: p for p in Premium}
    rows = []
    for line in text.strip().splitlines():
        tokens = line.split()
        try:
            rows.append(tuple(by_token[t] for t in tokens))
        except KeyError as e:
            raise DomainError("token", e.args[0], "one of .., DL, TL, DW, TW") from e
    size = len(rows)
    if size % 2 == 0 or any(len(row) != size for row in rows):
        raise DomainError("layout", f"{size} rows", "an odd square grid")
    return BoardLayout(size=size, premiums=tuple(rows), name=name)


_STANDARD_15 = """
TW .. .. DL .. .. .. TW .. .. .. DL .. .. TW
.. DW .. .. .. TL .. .. .. TL .. .. .. DW ..
.. .. DW .. .. .. DL .. DL .. .. .. DW .. ..
DL .. .. DW .. .. .. DL .. .. .. DW .. .. DL
.. .. .. .. DW .. .. .. .. .. DW .. .. .. ..
.. TL .. .. .. TL .. .. .. TL .. .. .. TL ..
.. .. DL .. .. .. DL .. DL .. .. .. DL .. ..
TW .. .. DL .. .. .. DW .. .. .. DL .. .. TW
.. .. DL .. .. .. DL .. DL .. .. .. DL .. ..
.. TL .. .. .. TL .. .. .. TL .. .. .. TL ..
.. .. .. .. DW .. .. .. .. .. DW .. .. .. ..
DL .. .. DW .. .. .. DL .. .. .. DW .. .. DL
.. .. DW .. .. .. DL .. DL .. .. .. DW .. ..
.. DW .. .. .. TL .. .. .. TL .. .. .. DW ..
TW .. .. DL .. .. .. TW .. .. .. DL .. .. TW
"""

_VARIANT_13 = """
DW .. .. .. TL .. .. .. TL .. .. .. DW
.. DW .. .. .. DL .. DL .. .. .. DW ..
.. .. DW .. .. .. DL .. .. .. DW .. ..
.. .. .. DW .. .. .. .. .. DW .. .. ..
TL .. .. .. TL .. .. .. TL .. .. .. TL
.. DL .. .. .. DL .. DL .. .. .. DL ..
.. .. DL .. .. .. DW .. .. .. DL .. ..
.. DL .. .. .. DL .. DL .. .. .. DL ..
TL .. .. .. TL .. .. .. TL .. .. .. TL
.. .. .. DW .. .. .. .. .. DW .. .. ..
.. .. DW .. .. .. DL .. .. .. DW .. ..
.. DW .. .. .. DL .. DL .. .. .. DW ..
DW .. .. .. TL .. .. .. TL .. .. .. DW
"""


@cache
def standard_layout() -> BoardLayout:
    """The standard 15x15 board."""
    return parse_layout(_STANDARD_15, name="15x15")


@cache
def layout_13x13() -> BoardLayout:
    """The reduced 13x13 variant."""
    return parse_layout(_VARIANT_13, name="13x13")


def layout_for(variant: int) -> BoardLayout:
    """Layout by side length (15 or 13)."""
    if variant == 15:
        return standard_layout()
    if variant == 13:
        return layout_13x13()
    raise DomainError("board", variant, "15 or 13")


def area_ratio(small: BoardLayout, large: BoardLayout) -> float:
    """Area of ``small`` relative to ``large``."""
    return small.area / large.area


@dataclass(frozen=True)
class TileDistribution:
    """Tile counts and point values per letter, '?' for blank."""

    counts: Mapping[str, int]
    values: Mapping[str, int]
    label: str = ""

    @property
    def total_tiles(self) -> int:
        return sum(self.counts.values())

    @property
    def total_points(self) -> int:
        return sum(self.counts[t] * self.values[t] for t in self.counts)

    def value(self, tile: str) -> int:
        """Point value of a rack tile; lowercase letters are blanks and score 0."""
        if tile == BLANK or tile.islower():
            return 0
        return self.values[tile]

    def tiles(self) -> list[str]:
        """The full multiset in canonical (sorted) order."""
        return [tile for tile in sorted(self.counts) for _ in range(self.counts[tile])]

    @classmethod
    def from_counts(
        cls,
        counts: Mapping[str, int],
        values: Mapping[str, int],
        label: str = "custom",
    ) -> "TileDistribution":
        _validate(counts, values)
        return cls(counts=dict(counts), values=dict(values), label=label)


def _validate(counts: Mapping[str, int], values: Mapping[str, int]) -> None:
    if set(counts) != set(values):
        raise TileDistributionError("counts and values cover different tiles")
    for tile in counts:
        if tile != BLANK and not (len(tile) == 1 and "A" <= tile <= "Z"):
            raise TileDistributionError(f"bad tile {tile!r}")
        if counts[tile] < 0 or values[tile] < 0:
            raise TileDistributionError(f"negative count or value for {tile!r}")
    if values.get(BLANK, 0) != 0:
        raise TileDistributionError("blank tiles must be worth 0")


def parse_tile_distribution(lines: Iterable[str], label: str = "") -> TileDistribution:
    """Parse "LETTER COUNT VALUE" lines; '#' starts a comment."""
    counts: dict[str, int] = {}
    values: dict[str, int] = {}
    for line_no, line in enumerate(lines, start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        parts = content.split()
        if len(parts) != 3:
            raise TileDistributionError(f"expected 3 fields, got {len(parts)}", line_no)
        tile = parts[0].upper()
        if tile in counts:
            raise TileDistributionError(f"duplicate tile {tile!r}", line_no)
        try:
            counts[tile] = int(parts[1])
            values[tile] = int(parts[2])
        except ValueError as e:
            raise TileDistributionError(str(e), line_no) from e
    _validate(counts, values)
    return TileDistribution(counts=counts, values=values, label=label)


@cache
def _bundled_distribution() -> TileDistribution:
    text = resources.files("scrabblelab.data").joinpath("tiles_english.txt").read_text("utf-8")
    return parse_tile_distribution(text.splitlines(), label="english-v1")


def load_tile_distribution(path: Path | None = None) -> TileDistribution:
    """Load a distribution file, or the bundled English set when path is None."""
    if path is None:
        return _bundled_distribution()
    with open(path, encoding="utf-8") as f:
        return parse_tile_distribution(f, label=str(path))


@dataclass(frozen=True)
class TileBag:
    """Ordered, immutable bag; drawing returns a new bag."""

    tiles: tuple[str, ...]
    distribution: TileDistribution

    def __len__(self) -> int:
        return len(self.tiles)

    def draw(self, n: int) -> tuple[tuple[str, ...], "TileBag"]:
        """Take up to n tiles from the front of the bag."""
        n = max(0, min(n, len(self.tiles)))
        return self.tiles[:n], TileBag(self.tiles[n:], self.distribution)

    def put_back(self, tiles: Iterable[str], seed: int) -> "TileBag":
        """Return tiles to the bag and reshuffle it deterministically."""
        merged = sorted(self.tiles + tuple(tiles))
        random.Random(seed).shuffle(merged)
        return TileBag(tuple(merged), self.distribution)


def shuffled_bag(distribution: TileDistribution, seed: int) -> TileBag:
    """A full bag for ``distribution`` in seeded random order."""
    tiles = distribution.tiles()
    random.Random(seed).shuffle(tiles)
    return TileBag(tuple(tiles), distribution)


def standard_tile_bag(seed: int) -> TileBag:
    """The 100-tile English bag (98 letters + 2 blanks), shuffled by seed."""
    return shuffled_bag(load_tile_distribution(), seed)
