"""Tests for the word automaton."""

import string

from hypothesis import given, settings
from hypothesis import strategies as st

from scrabblelab.lexicon import NO_STATE, build_automaton, trie_node_count

words_strategy = st.text(alphabet="ABCDE", min_size=2, max_size=6)


class TestBuildAutomaton:
    """Tests for build_automaton and membership."""

    def test_single_word(self):
        """A one-word automaton accepts exactly that word."""
        automaton = build_automaton(["CAT"])
        assert automaton.accepts("CAT")
        assert not automaton.accepts("CA")
        assert not automaton.accepts("CATS")
        assert "CAT" in automaton
        assert len(automaton) == 1

    def test_shared_prefix_compresses(self):
        """CARE and CARS share their prefix and final state."""
        automaton = build_automaton(["CARE", "CARS"])
        assert automaton.node_count < len("CARE") + len("CARS") + 1
        assert automaton.accepts("CARE")
        assert automaton.accepts("CARS")
        assert not automaton.accepts("CAR")

    def test_suffix_sharing(self):
        """Common suffixes merge into one chain."""
        automaton = build_automaton(["BAT", "CAT", "HAT"])
        # root, one state after the first letter, one after A, one final
        assert automaton.node_count == 4

    def test_follow_and_child(self):
        """follow walks a prefix; unknown letters fall off."""
        automaton = build_automaton(["CAT", "CAR"])
        state = automaton.follow("CA")
        assert state != NO_STATE
        assert automaton.is_final(automaton.child(state, "T"))
        assert automaton.child(state, "Z") == NO_STATE
        assert automaton.follow("DOG") == NO_STATE

    def test_words_in_order(self, small_lexicon):
        """words() enumerates the lexicon in sorted order."""
        automaton = build_automaton(small_lexicon)
        assert tuple(automaton.words()) == small_lexicon.sorted_words

    def test_smaller_than_trie(self, small_lexicon):
        """The minimized automaton never needs more nodes than a trie."""
        automaton = build_automaton(small_lexicon)
        assert automaton.node_count <= trie_node_count(small_lexicon.words)

    def test_non_string_not_contained(self):
        """Membership of non-strings is False."""
        assert 3 not in build_automaton(["CAT"])


class TestMembershipProperty:
    """Automaton membership agrees with plain set lookup."""

    @given(
        words=st.sets(words_strategy, min_size=1, max_size=40),
        queries=st.lists(words_strategy, max_size=60),
    )
    @settings(max_examples=50, deadline=None)
    def test_matches_set(self, words, queries):
        """Random queries get the same answers as the set."""
        automaton = build_automaton(words)
        for query in list(words) + queries:
            assert automaton.accepts(query) == (query in words)

    @given(words=st.sets(st.text(alphabet=string.ascii_uppercase, min_size=2, max_size=8),
                         min_size=1, max_size=30))
    @settings(max_examples=30, deadline=None)
    def test_round_trips_word_set(self, words):
        """words() returns exactly the input set."""
        assert set(build_automaton(words).words()) == words


def test_trie_node_count():
    """Trie nodes count every distinct prefix plus the root."""
    assert trie_node_count(["CARE", "CARS"]) == 6
