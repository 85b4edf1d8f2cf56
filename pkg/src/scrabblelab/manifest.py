"""Run manifest written next to every simulation output set."""

import json
from dataclasses import asdict, dataclass, field
from datetime import datetime
from pathlib import Path
from zoneinfo import ZoneInfo

from scrabblelab import __version__

MANIFEST_FILE = "manifest.json"


def utc_now() -> str:
    """Current UTC time as an ISO 8601 string."""
    return datetime.now(ZoneInfo("UTC")).isoformat(timespec="seconds")


@dataclass
class RunManifest:
    """What produced an output set: config echo, word-list hash, version, seed, timing."""

    config: dict[str, str]
    word_list_path: str
    word_list_sha256: str
    master_seed: int
    tool_version: str = __version__
    policy: str = "greedy"
    started_at: str = field(default_factory=utc_now)
    finished_at: str | None = None
    outputs: list[str] = field(default_factory=list)

    def finish(self, outputs: list[str]) -> None:
        self.outputs = sorted(outputs)
        self.finished_at = utc_now()

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


def write_manifest(directory: Path, manifest: RunManifest) -> Path:
    path = directory / MANIFEST_FILE
    path.write_text(manifest.to_json(), encoding="utf-8")
    return path


def read_manifest(path: Path) -> RunManifest:
    return RunManifest(**json.loads(path.read_text(encoding="utf-8")))
