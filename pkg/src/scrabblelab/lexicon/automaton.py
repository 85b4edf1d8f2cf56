"""Directed acyclic word graph (minimal deterministic automaton) over A-Z.

Built incrementally from the sorted word list, registering each finished
suffix so equal right-languages share one node. The result is frozen into
flat tables: state 0 is the root, ``transitions[state]`` maps a letter to
the next state (read-only by convention), ``finals[state]`` marks
accepting states.
"""

from collections.abc import Iterable, Iterator, Mapping

import structlog

from scrabblelab.errors import EmptyLexiconError
from scrabblelab.lexicon.wordlist import Lexicon

log = structlog.get_logger()

NO_STATE = -1


class _BuildNode:
    __slots__ = ("final", "edges", "key")

    def __init__(self) -> None:
        self.final = False
        self.edges: dict[str, _BuildNode] = {}
        self.key = -1

    def signature(self) -> tuple:
        edges = tuple((letter, child.key) for letter, child in sorted(self.edges.items()))
        return (self.final, edges)


class WordAutomaton:
    """Immutable DAWG accepting exactly the words it was built from."""

    def __init__(
        self,
        transitions: tuple[Mapping[str, int], ...],
        finals: tuple[bool, ...],
        word_count: int,
    ):
        self._transitions = transitions
        self._finals = finals
        self._word_count = word_count

    root = 0

    @property
    def transitions(self) -> tuple[Mapping[str, int], ...]:
        return self._transitions

    @property
    def finals(self) -> tuple[bool, ...]:
        return self._finals

    @property
    def node_count(self) -> int:
        return len(self._transitions)

    def __len__(self) -> int:
        return self._word_count

    def child(self, state: int, letter: str) -> int:
        """Next state on ``letter``, or NO_STATE."""
        return self._transitions[state].get(letter, NO_STATE)

    def is_final(self, state: int) -> bool:
        return self._finals[state]

    def follow(self, letters: str, state: int = 0) -> int:
        """Walk ``letters`` from ``state``; NO_STATE if the walk falls off."""
        for letter in letters:
            state = self._transitions[state].get(letter, NO_STATE)
            if state == NO_STATE:
                return NO_STATE
        return state

    def accepts(self, word: str) -> bool:
        state = self.follow(word)
        return state != NO_STATE and self._finals[state]

    def __contains__(self, word: object) -> bool:
        return isinstance(word, str) and self.accepts(word)

    def words(self) -> Iterator[str]:
        """Accepted words in lexicographic order."""
        stack: list[tuple[int, str]] = [(self.root, "")]
        while stack:
            state, prefix = stack.pop()
            if self._finals[state]:
                yield prefix
            for letter in sorted(self._transitions[state], reverse=True):
                stack.append((self._transitions[state][letter], prefix + letter))


def build_automaton(lex: Lexicon | Iterable[str]) -> WordAutomaton:
    """
    Compile a word set into a minimal DAWG.

    Raises:
        EmptyLexiconError: If there are no words
    """
    words = lex.sorted_words if isinstance(lex, Lexicon) else tuple(sorted(set(lex)))
    if not words:
        raise EmptyLexiconError(getattr(lex, "source_label", "<words>"))

    root = _BuildNode()
    registry: dict[tuple, _BuildNode] = {}
    unchecked: list[tuple[_BuildNode, str, _BuildNode]] = []
    previous = ""

    def minimize(down_to: int) -> None:
        while len(unchecked) > down_to:
            parent, letter, child = unchecked.pop()
            signature = child.signature()
            existing = registry.get(signature)
            if existing is not None:
                parent.edges[letter] = existing
            else:
                child.key = len(registry)
                registry[signature] = child

    for word in words:
        common = 0
        for a, b in zip(word, previous):
            if a != b:
                break
            common += 1
        minimize(common)

        node = unchecked[-1][2] if unchecked else root
        for letter in word[common:]:
            nxt = _BuildNode()
            node.edges[letter] = nxt
            unchecked.append((node, letter, nxt))
            node = nxt
        node.final = True
        previous = word

    minimize(0)

    # Freeze into flat tables, root first, breadth-first numbering
    index: dict[int, int] = {id(root): 0}
    order: list[_BuildNode] = [root]
    cursor = 0
    while cursor < len(order):
        node = order[cursor]
        cursor += 1
        for _, child in sorted(node.edges.items()):
            if id(child) not in index:
                index[id(child)] = len(order)
                order.append(child)

    transitions = tuple(
        {letter: index[id(child)] for letter, child in sorted(node.edges.items())}
        for node in order
    )
    finals = tuple(node.final for node in order)

    automaton = WordAutomaton(transitions, finals, len(words))
    log.debug("automaton_built", words=len(words), nodes=automaton.node_count)
    return automaton


def trie_node_count(words: Iterable[str]) -> int:
    """Nodes an uncompressed trie over ``words`` would need, root included."""
    prefixes = {""}
    for word in words:
        for end in range(1, len(word) + 1):
            prefixes.add(word[:end])
    return len(prefixes)
