"""Configuration management for scrabblelab."""

import os
from dataclasses import dataclass, field
from pathlib import Path

from dotenv import load_dotenv

from scrabblelab.errors import ConfigError

load_dotenv()

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class LoggingConfig:
    """Logging configuration."""

    level: str = "INFO"
    log_file: str | None = None
    max_file_size_mb: int = 10
    backup_count: int = 5
    json_format: bool = False


@dataclass
class Config:
    """Process-level configuration read from the environment."""

    logging: LoggingConfig
    workers: int | None = None


def _env_int(name: str, default: str | None) -> int | None:
    value = os.getenv(name, default)
    if not value:
        return None
    try:
        return int(value)
    except ValueError as e:
        raise ConfigError(f"{name}: {value!r} is not an integer") from e


def load_config(env_path: Path | None = None) -> Config:
    """Load configuration from environment variables.

    Raises:
        ConfigError: If a numeric variable does not parse
    """
    if env_path:
        load_dotenv(env_path, override=True)

    level = os.getenv("SCRABBLELAB_LOG_LEVEL", "INFO").upper()
    if level not in LOG_LEVELS:
        raise ConfigError(
            f"SCRABBLELAB_LOG_LEVEL: {level!r} is not one of {', '.join(LOG_LEVELS)}"
        )

    logging_config = LoggingConfig(
        level=level,
        log_file=os.getenv("SCRABBLELAB_LOG_FILE") or None,
        max_file_size_mb=_env_int("SCRABBLELAB_LOG_MAX_FILE_SIZE_MB", "10") or 10,
        backup_count=_env_int("SCRABBLELAB_LOG_BACKUP_COUNT", "5") or 0,
        json_format=os.getenv("SCRABBLELAB_LOG_JSON", "false").lower() == "true",
    )

    workers = _env_int("SCRABBLELAB_WORKERS", None)
    if workers is not None and workers < 1:
        raise ConfigError(f"SCRABBLELAB_WORKERS: {workers} must be >= 1")

    return Config(logging=logging_config, workers=workers)


@dataclass
class ExperimentConfig:
    """One experiment grid: board variant x dictionary fractions x knowledge fractions."""

    board: int
    d_values: list[float]
    p_values: list[float]
    matches: int
    seed: int
    dictionary_path: Path
    workers: int = 1
    fit_p_min: float | None = None
    fit_p_max: float | None = None
    tendency_epsilon: float = 0.05
    per_turn: bool = False
    records: bool = False
    raw: dict[str, str] = field(default_factory=dict)

    @property
    def fit_range(self) -> tuple[float, float] | None:
        """The p sub-range used for slope fits, or None for the full grid."""
        if self.fit_p_min is None and self.fit_p_max is None:
            return None
        low = self.fit_p_min if self.fit_p_min is not None else 0.0
        high = self.fit_p_max if self.fit_p_max is not None else 1.0
        return (low, high)


_REQUIRED_KEYS = ("board", "d", "p", "matches", "seed", "dict")
_OPTIONAL_KEYS = (
    "workers",
    "fit_p_min",
    "fit_p_max",
    "tendency_epsilon",
    "per_turn",
    "records",
)


def _parse_fractions(key: str, value: str) -> list[float]:
    fractions = []
    for item in value.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            fraction = float(item)
        except ValueError as e:
            raise ConfigError(f"{key}: {item!r} is not a number") from e
        if not 0.0 < fraction <= 1.0:
            raise ConfigError(f"{key}: {fraction} outside (0, 1]")
        if fraction in fractions:
            raise ConfigError(f"{key}: {fraction} listed twice")
        fractions.append(fraction)
    if not fractions:
        raise ConfigError(f"{key}: empty list")
    return fractions


def _parse_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError as e:
        raise ConfigError(f"{key}: {value!r} is not an integer") from e


def _parse_float(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError as e:
        raise ConfigError(f"{key}: {value!r} is not a number") from e


def _parse_bool(key: str, value: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise ConfigError(f"{key}: {value!r} is not a boolean")


def parse_experiment_config(text: str, base_dir: Path | None = None) -> ExperimentConfig:
    """Parse flat key=value experiment config text.

    Lines starting with '#' and blank lines are ignored. List values are
    comma-separated. A relative dictionary path resolves against base_dir.
    """
    raw: dict[str, str] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"expected key=value, got {stripped!r}", line_no)
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key not in _REQUIRED_KEYS and key not in _OPTIONAL_KEYS:
            raise ConfigError(f"unknown key {key!r}", line_no)
        if key in raw:
            raise ConfigError(f"duplicate key {key!r}", line_no)
        raw[key] = value

    missing = [key for key in _REQUIRED_KEYS if key not in raw]
    if missing:
        raise ConfigError(f"missing keys: {', '.join(missing)}")

    board = _parse_int("board", raw["board"])
    if board not in (15, 13):
        raise ConfigError(f"board: {board} is not a supported variant (15 or 13)")

    matches = _parse_int("matches", raw["matches"])
    if matches < 1:
        raise ConfigError(f"matches: {matches} must be >= 1")

    seed = _parse_int("seed", raw["seed"])
    if not 0 <= seed < 2**64:
        raise ConfigError(f"seed: {seed} is not a 64-bit unsigned integer")

    workers = _parse_int("workers", raw["workers"]) if "workers" in raw else 1
    if workers < 1:
        raise ConfigError(f"workers: {workers} must be >= 1")

    dictionary_path = Path(raw["dict"])
    if not dictionary_path.is_absolute() and base_dir is not None:
        dictionary_path = base_dir / dictionary_path

    epsilon = (
        _parse_float("tendency_epsilon", raw["tendency_epsilon"])
        if "tendency_epsilon" in raw
        else 0.05
    )
    if epsilon < 0:
        raise ConfigError(f"tendency_epsilon: {epsilon} must be >= 0")

    return ExperimentConfig(
        board=board,
        d_values=_parse_fractions("d", raw["d"]),
        p_values=_parse_fractions("p", raw["p"]),
        matches=matches,
        seed=seed,
        dictionary_path=dictionary_path,
        workers=workers,
        fit_p_min=_parse_float("fit_p_min", raw["fit_p_min"]) if "fit_p_min" in raw else None,
        fit_p_max=_parse_float("fit_p_max", raw["fit_p_max"]) if "fit_p_max" in raw else None,
        tendency_epsilon=epsilon,
        per_turn=_parse_bool("per_turn", raw["per_turn"]) if "per_turn" in raw else False,
        records=_parse_bool("records", raw["records"]) if "records" in raw else False,
        raw=raw,
    )


def load_experiment_config(path: Path) -> ExperimentConfig:
    """Load an experiment config file.

    Raises ConfigError for malformed content; OSError propagates for
    unreadable files.
    """
    text = path.read_text(encoding="utf-8")
    return parse_experiment_config(text, base_dir=path.parent)
