"""Word lists, fractional sub-dictionaries and knowledge bases."""

import hashlib
import math
import random
import re
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import structlog

from scrabblelab.errors import DomainError, EmptyLexiconError, WordListError

log = structlog.get_logger()

MIN_WORD_LENGTH = 2
MAX_WORD_LENGTH = 15

# Published word-list sizes, kept for lexicon-stats arithmetic
OCTWL_WORD_COUNT = 187_632
SOWPODS_WORD_COUNT = 267_751

_WORD_RE = re.compile(r"^[A-Z]+$")


@dataclass(frozen=True)
class Lexicon:
    """An immutable set of uppercase A-Z words of length 2..15."""

    words: frozenset[str]
    source_label: str
    skipped: int = 0

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: object) -> bool:
        return word in self.words

    @cached_property
    def sorted_words(self) -> tuple[str, ...]:
        return tuple(sorted(self.words))


@dataclass(frozen=True)
class SubsetSpec:
    """Custom dictionary d' = t*d drawn from the master list."""

    fraction_d: float
    seed: int


@dataclass(frozen=True)
class KnowledgeSpec:
    """Agent knowledge base: a fraction p of the custom dictionary d'.

    A learner who picks up x new words moves from p to p + x/|d'|; x is a
    modelling quantity only and is never sampled.
    """

    fraction_p: float
    seed: int


def _normalize(token: str) -> str | None:
    word = token.strip().upper()
    if not word:
        return None
    if not _WORD_RE.match(word):
        return None
    if not MIN_WORD_LENGTH <= len(word) <= MAX_WORD_LENGTH:
        return None
    return word


def load_word_list(stream: Iterable[str], source_label: str = "<stream>") -> Lexicon:
    """
    Load a line-oriented word list.

    Tokens are upper-cased; tokens with characters outside A-Z or length
    outside [2, 15] are skipped and counted. Blank lines are ignored
    without counting.

    Raises:
        EmptyLexiconError: If no valid word remains
    """
    words: set[str] = set()
    skipped = 0
    for line in stream:
        if not line.strip():
            continue
        word = _normalize(line)
        if word is None:
            skipped += 1
            continue
        words.add(word)

    if not words:
        raise EmptyLexiconError(source_label, skipped)

    log.info("word_list_loaded", source=source_label, words=len(words), skipped=skipped)
    return Lexicon(words=frozenset(words), source_label=source_label, skipped=skipped)


def load_word_file(path: Path) -> Lexicon:
    """Load a UTF-8 word list file (LF or CRLF)."""
    try:
        with open(path, encoding="utf-8") as f:
            return load_word_list(f, source_label=str(path))
    except (OSError, UnicodeDecodeError) as e:
        raise WordListError(str(path), str(e)) from e


def file_sha256(path: Path) -> str:
    """Hex SHA-256 of a file's bytes."""
    digest = hashlib.sha256()
    try:
        with open(path, "rb") as f:
            for chunk in iter(lambda: f.read(1 << 16), b""):
                digest.update(chunk)
    except OSError as e:
        raise WordListError(str(path), str(e)) from e
    return digest.hexdigest()


def subset_size(total: int, fraction: float) -> int:
    """round-half-up(total * fraction), floored at 1."""
    if not 0.0 < fraction <= 1.0:
        raise DomainError("fraction", fraction, "0 < fraction <= 1")
    return max(1, math.floor(total * fraction + 0.5))


def _sample(lex: Lexicon, fraction: float, seed: int, label: str) -> Lexicon:
    size = subset_size(len(lex), fraction)
    if size >= len(lex):
        return Lexicon(words=lex.words, source_label=label)
    chosen = random.Random(seed).sample(lex.sorted_words, size)
    return Lexicon(words=frozenset(chosen), source_label=label)


def sample_subset(lex: Lexicon, spec: SubsetSpec) -> Lexicon:
    """Draw the custom dictionary d' uniformly without replacement."""
    if not 0.0 < spec.fraction_d <= 1.0:
        raise DomainError("fraction_d", spec.fraction_d, "0 < d <= 1")
    return _sample(lex, spec.fraction_d, spec.seed, f"{lex.source_label}[d={spec.fraction_d:g}]")


def sample_knowledge(dictionary: Lexicon, spec: KnowledgeSpec) -> Lexicon:
    """Draw an agent knowledge base from d' (independent per p, not nested)."""
    if not 0.0 < spec.fraction_p <= 1.0:
        raise DomainError("fraction_p", spec.fraction_p, "0 < p <= 1")
    label = f"{dictionary.source_label}[p={spec.fraction_p:g}]"
    return _sample(dictionary, spec.fraction_p, spec.seed, label)
