"""Tests for game refinement, complexity, learning coefficient and tendency."""

import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from scrabblelab.errors import DomainError
from scrabblelab.metrics import (
    APPROPRIATE_ZONE,
    Tendency,
    aggregate_cells,
    classify_tendency,
    complexity,
    fit_slope,
    game_refinement,
    in_appropriate_zone,
    learning_coefficient,
    learning_results,
    series_summaries,
    tendencies,
)
from scrabblelab.sim import MatchRow

P_GRID = [round(0.1 * i, 1) for i in range(1, 11)]

# Published GR-by-knowledge series for the two extreme dictionary sizes
GR_D01 = [0.2204, 0.1262, 0.1115, 0.0894, 0.0886, 0.0831, 0.0887, 0.0766, 0.0795, 0.0731]
GR_D08 = [0.0772, 0.0812, 0.0755, 0.0824, 0.0786, 0.0837, 0.0832, 0.0892, 0.0887, 0.0903]


def _row(d=1.0, p=1.0, swings=4, moves=20, branching=1.0, index=0, board=15):
    return MatchRow(
        board=board,
        d=d,
        p=p,
        match_index=index,
        seed=index,
        swings=swings,
        total_moves=moves,
        game_length=moves,
        mean_branching=branching,
        score_a=0,
        score_b=0,
    )


class TestGameRefinement:
    """Tests for game_refinement."""

    @pytest.mark.parametrize(
        "g,t,printed",
        [
            (2.64, 22, 0.073),
            (36.38, 82.01, 0.073),
            (0.976, 12.684, 0.078),
            (46.336, 79.344, 0.086),
            (54.863, 96.465, 0.077),
            (68.6, 106.2, 0.078),
        ],
    )
    def test_sports_fixtures(self, g, t, printed):
        """Published sports figures reproduce to the printed precision."""
        assert game_refinement(g, t) == pytest.approx(printed, abs=0.0015)

    def test_soccer_exact(self):
        assert game_refinement(2.64, 22) == pytest.approx(0.0739, abs=1e-4)

    def test_badminton_exact(self):
        assert game_refinement(46.336, 79.344) == pytest.approx(0.0858, abs=1e-4)

    def test_zero_swings(self):
        assert game_refinement(0, 30) == 0.0

    def test_scale_identity(self):
        """Quadrupling swings and doubling length keeps the value."""
        assert game_refinement(4, 20) == game_refinement(16, 40) == 0.1

    @pytest.mark.parametrize("g,t", [(1, 0), (1, -5), (-1, 10)])
    def test_domain(self, g, t):
        with pytest.raises(DomainError):
            game_refinement(g, t)

    def test_zone(self):
        assert APPROPRIATE_ZONE == (0.07, 0.08)
        assert in_appropriate_zone(0.075)
        assert not in_appropriate_zone(0.0926)


class TestComplexity:
    """Tests for complexity."""

    @pytest.mark.parametrize(
        "b,d,expected",
        [(9, 9, 19.775), (35, 80, 284.428), (250, 208, 1148.464)],
    )
    def test_board_game_fixtures(self, b, d, expected):
        assert complexity(b, d) == pytest.approx(expected, abs=1e-3)

    def test_single_option(self):
        assert complexity(1, 50) == 0.0

    def test_domain(self):
        with pytest.raises(DomainError):
            complexity(0.5, 10)
        with pytest.raises(DomainError):
            complexity(2, -1)

    @settings(deadline=None)
    @given(
        b=st.floats(1.0, 1000.0),
        d=st.floats(0.0, 500.0),
        db=st.floats(0.01, 100.0),
        dd=st.floats(0.01, 100.0),
    )
    def test_monotone(self, b, d, db, dd):
        """More branching or longer games never lower complexity."""
        assert complexity(b + db, d) >= complexity(b, d)
        assert complexity(b, d + dd) >= complexity(b, d)


class TestFitSlope:
    """Tests for the least-squares slope."""

    def test_exact_line(self):
        points = [(p, 100 * p) for p in P_GRID]
        assert fit_slope(points) == pytest.approx(100, rel=1e-12)

    def test_flat(self):
        assert fit_slope([(0, 1), (1, 1)]) == 0.0

    def test_three_points(self):
        assert fit_slope([(0, 0), (0.5, 1), (1, 1)]) == pytest.approx(1.0)

    def test_too_few_distinct(self):
        with pytest.raises(DomainError):
            fit_slope([(0.5, 1), (0.5, 2)])


class TestLearningCoefficient:
    """Tests for L = m / d."""

    def test_full_dictionary(self):
        assert learning_coefficient(98.7323, 1.0) == 98.7323

    def test_zero_slope(self):
        assert learning_coefficient(0, 0.3) == 0

    def test_inverse(self):
        assert 1073.907 * 0.1 == pytest.approx(107.3907)
        assert learning_coefficient(107.3907, 0.1) == pytest.approx(1073.907)

    def test_domain(self):
        with pytest.raises(DomainError):
            learning_coefficient(1.0, 0.0)

    @settings(deadline=None)
    @given(m=st.floats(-1e6, 1e6), d=st.floats(0.001, 1.0))
    def test_times_d_recovers_m(self, m, d):
        assert learning_coefficient(m, d) * d == pytest.approx(m, rel=1e-12, abs=1e-9)


class TestClassifyTendency:
    """Tests for classify_tendency."""

    def test_small_dictionary_series(self):
        """GR falls with knowledge when the dictionary is tiny."""
        assert classify_tendency(GR_D01, x=P_GRID) is Tendency.DEC

    def test_large_dictionary_series(self):
        """GR rises with knowledge when the dictionary is large."""
        assert classify_tendency(GR_D08, x=P_GRID) is Tendency.INC

    def test_increasing(self):
        assert classify_tendency([1, 2, 3, 4, 5]) is Tendency.INC

    def test_decreasing(self):
        assert classify_tendency([5, 4, 3, 2, 1]) is Tendency.DEC

    def test_valley(self):
        assert classify_tendency([5, 3, 1, 3, 5]) is Tendency.DEC_THEN_INC
        assert Tendency.DEC_THEN_INC.label == "Dec then Inc"

    def test_peak(self):
        assert classify_tendency([1, 3, 5, 3, 1]) is Tendency.INC_THEN_DEC

    def test_flat(self):
        assert classify_tendency([1.0, 1.01, 0.99, 1.0, 1.0]) is Tendency.FLAT
        assert classify_tendency([0, 0, 0, 0]) is Tendency.FLAT

    @pytest.mark.parametrize(
        "series,expected",
        [
            ([1, 2, 3, 3, 3], Tendency.INC),
            ([5, 4, 3, 3, 3], Tendency.DEC),
            ([3, 3, 3, 2, 1], Tendency.DEC),
        ],
    )
    def test_level_half_takes_other_sign(self, series, expected):
        """A half inside the tolerance follows the sloped half."""
        assert classify_tendency(series) is expected

    def test_too_short(self):
        """Four points are the minimum."""
        with pytest.raises(DomainError, match="at least 4 points"):
            classify_tendency([1, 2, 3])
        assert classify_tendency([1, 2, 3, 4]) is Tendency.INC

    @settings(deadline=None)
    @given(
        series=st.lists(st.floats(0.01, 1.0), min_size=4, max_size=10),
        exponent=st.integers(-8, 8),
    )
    def test_scale_invariant(self, series, exponent):
        """Scaling the whole series does not change its label."""
        assume(len(set(series)) > 1)
        scaled = [value * 2.0**exponent for value in series]
        assert classify_tendency(scaled) is classify_tendency(series)


class TestAggregation:
    """Tests for means-first cell aggregation."""

    def test_single_match(self):
        [cell] = aggregate_cells([_row(swings=4, moves=20)])
        assert cell.gr == pytest.approx(0.1)
        assert cell.matches == 1

    def test_means_first(self):
        """GR comes from mean S and mean N, not from per-match GR."""
        [cell] = aggregate_cells([_row(swings=1, moves=10), _row(swings=3, moves=30, index=1)])
        assert cell.mean_s == 2
        assert cell.mean_n == 20
        assert cell.gr == pytest.approx(math.sqrt(2) / 20)

    def test_complexity_from_means(self):
        [cell] = aggregate_cells([_row(moves=10, branching=math.e**2)])
        assert cell.c == pytest.approx(20)

    def test_branching_weighted_by_turns(self):
        [cell] = aggregate_cells(
            [_row(moves=10, branching=2.0), _row(moves=30, branching=6.0, index=1)]
        )
        assert cell.mean_b == pytest.approx(5.0)

    def test_cells_sorted(self):
        rows = [_row(d=1.0, p=0.5), _row(d=0.5, p=1.0), _row(d=0.5, p=0.2)]
        keys = [(a.d, a.p) for a in aggregate_cells(rows)]
        assert keys == [(0.5, 0.2), (0.5, 1.0), (1.0, 0.5)]


class TestSeries:
    """Tests for per-(board, d) learning and tendency results."""

    @pytest.fixture
    def aggregates(self):
        # complexity grows as 10 * ln(B) with B = e**(10p), so C = 100p
        rows = [
            _row(d=d, p=p, moves=10, branching=math.exp(10 * p), swings=int(p * 10))
            for d in (0.5, 1.0)
            for p in (0.2, 0.4, 0.6, 0.8)
        ]
        return aggregate_cells(rows)

    def test_learning(self, aggregates):
        results = learning_results(aggregates)
        assert [(r.d, r.m) for r in results] == [
            (0.5, pytest.approx(100)),
            (1.0, pytest.approx(100)),
        ]
        assert results[0].L == pytest.approx(200)

    def test_fit_range(self, aggregates):
        results = learning_results(aggregates, fit_range=(0.2, 0.4))
        assert results[0].m == pytest.approx(100)

    def test_fit_range_too_narrow_skips(self, aggregates):
        assert learning_results(aggregates, fit_range=(0.2, 0.2)) == []

    def test_tendencies(self, aggregates):
        labels = tendencies(aggregates)
        assert set(labels) == {(15, 0.5), (15, 1.0)}
        assert all(label is Tendency.INC for label in labels.values())

    def test_short_series_has_no_tendency(self):
        aggregates = aggregate_cells([_row(p=p) for p in (0.5, 1.0)])
        assert tendencies(aggregates) == {(15, 1.0): None}

    def test_summaries(self, aggregates):
        summaries = series_summaries(aggregates)
        assert len(summaries) == 2
        first = summaries[0]
        assert first.gr_min == pytest.approx(math.sqrt(2) / 10)
        assert first.gr_max == pytest.approx(math.sqrt(8) / 10)
        assert first.L == pytest.approx(200)
