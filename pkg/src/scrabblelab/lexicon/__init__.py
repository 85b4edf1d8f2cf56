"""Lexicon package.

- wordlist: loading, fractional sub-dictionaries (d') and knowledge bases (p)
- automaton: DAWG compilation used by move generation
"""

from scrabblelab.lexicon.automaton import (
    NO_STATE,
    WordAutomaton,
    build_automaton,
    trie_node_count,
)
from scrabblelab.lexicon.wordlist import (
    MAX_WORD_LENGTH,
    MIN_WORD_LENGTH,
    OCTWL_WORD_COUNT,
    SOWPODS_WORD_COUNT,
    KnowledgeSpec,
    Lexicon,
    SubsetSpec,
    file_sha256,
    load_word_file,
    load_word_list,
    sample_knowledge,
    sample_subset,
    subset_size,
)

__all__ = [
    "NO_STATE",
    "WordAutomaton",
    "build_automaton",
    "trie_node_count",
    "MAX_WORD_LENGTH",
    "MIN_WORD_LENGTH",
    "OCTWL_WORD_COUNT",
    "SOWPODS_WORD_COUNT",
    "KnowledgeSpec",
    "Lexicon",
    "SubsetSpec",
    "file_sha256",
    "load_word_file",
    "load_word_list",
    "sample_knowledge",
    "sample_subset",
    "subset_size",
]
