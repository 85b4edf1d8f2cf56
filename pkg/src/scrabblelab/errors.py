"""Exception hierarchy for scrabblelab."""

from enum import Enum


class ScrabbleLabError(Exception):
    """Base exception for all scrabblelab errors."""

    pass


class DomainError(ScrabbleLabError, ValueError):
    """Raised when an argument lies outside its mathematical domain."""

    def __init__(self, name: str, value: object, expected: str):
        self.name = name
        self.value = value
        super().__init__(f"{name}={value!r} outside domain: expected {expected}")


class EmptyLexiconError(ScrabbleLabError):
    """Raised when a word list yields no usable words."""

    def __init__(self, source: str, skipped: int = 0):
        self.source = source
        self.skipped = skipped
        super().__init__(f"No valid words in {source} ({skipped} tokens skipped)")


class WordListError(ScrabbleLabError):
    """Raised when a word list cannot be read."""

    def __init__(self, path: str, reason: str):
        self.path = path
        super().__init__(f"Cannot read word list {path}: {reason}")


class TileDistributionError(ScrabbleLabError):
    """Raised when a tile distribution file is malformed."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        where = f" (line {line_no})" if line_no is not None else ""
        super().__init__(f"Invalid tile distribution{where}: {message}")


class Rule(Enum):
    """Game rules a move can violate."""

    TILE_COUNT = "tile_count"
    RACK_MISMATCH = "rack_mismatch"
    OUT_OF_BOUNDS = "out_of_bounds"
    OCCUPIED = "occupied"
    CENTER_NOT_COVERED = "center_not_covered"
    DISCONNECTED = "disconnected"
    NO_WORD = "no_word"
    WORD_NOT_ACCEPTED = "word_not_accepted"
    BAG_TOO_SMALL = "bag_too_small"


class IllegalMoveError(ScrabbleLabError):
    """Raised when a move breaks a game rule."""

    def __init__(self, rule: Rule, detail: str):
        self.rule = rule
        self.detail = detail
        super().__init__(f"Illegal move [{rule.value}]: {detail}")


class GameStateError(ScrabbleLabError):
    """Raised when an operation does not fit the current game state."""

    pass


class ConfigError(ScrabbleLabError):
    """Raised when an experiment config cannot be parsed or validated."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        where = f" (line {line_no})" if line_no is not None else ""
        super().__init__(f"Config error{where}: {message}")


class TelemetrySchemaError(ScrabbleLabError):
    """Raised when a telemetry CSV does not match the expected schema."""

    pass


class RecordFormatError(ScrabbleLabError):
    """Raised when a game record line cannot be parsed."""

    def __init__(self, line: str, reason: str):
        self.line = line
        super().__init__(f"Bad game record line {line!r}: {reason}")
