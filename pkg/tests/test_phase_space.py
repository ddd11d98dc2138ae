"""Phase space: shift dynamics, iteration, and the metric."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chaosmark import (
    BoundViolation,
    DimensionMismatch,
    PhasePoint,
    SpaceConfig,
    Strategy,
    apply_g,
    as_vector,
    check_strategy_bounds,
    d_inf,
    d_phase,
    d_strategy,
    d_strategy_truncated,
    initial,
    iterate_g,
    shift,
)

BOUND = 10.0
SPACE2 = SpaceConfig(nv=2, bound_n=BOUND)
SPACE3 = SpaceConfig(nv=3, bound_n=BOUND)

components = st.floats(min_value=-BOUND, max_value=BOUND,
                       allow_nan=False, allow_infinity=False, width=64)
media_components = st.floats(min_value=-100.0, max_value=100.0,
                             allow_nan=False, allow_infinity=False, width=64)


def vectors(dim, elements=components):
    return st.lists(elements, min_size=dim, max_size=dim)


@st.composite
def strategies3(draw):
    prefix = draw(st.lists(vectors(3), min_size=0, max_size=3))
    tail = draw(st.one_of(
        st.just(()),
        st.lists(vectors(3), min_size=1, max_size=2)))
    return Strategy(3, tuple(prefix), tuple(tail))


@st.composite
def points3(draw):
    return PhasePoint(draw(strategies3()), draw(vectors(3, media_components)))


class TestVectors:
    def test_as_vector_is_readonly_float64(self):
        v = as_vector([1, 2, 3])
        assert v.dtype == np.float64
        with pytest.raises(ValueError):
            v[0] = 5.0

    def test_rejects_nan_and_empty(self):
        with pytest.raises(ValueError):
            as_vector([1.0, float("nan")])
        with pytest.raises(DimensionMismatch):
            as_vector([])
        with pytest.raises(DimensionMismatch):
            as_vector([1.0, 2.0], dim=3)


class TestStrategy:
    def test_term_prefix_then_tail_then_zero(self):
        s = Strategy(2, (np.array([1.0, 2.0]),), (np.array([3.0, 4.0]),
                                                  np.array([5.0, 6.0])))
        assert s.term(0).tolist() == [1.0, 2.0]
        assert s.term(1).tolist() == [3.0, 4.0]
        assert s.term(2).tolist() == [5.0, 6.0]
        assert s.term(3).tolist() == [3.0, 4.0]
        z = Strategy.zero(2)
        assert z.term(7).tolist() == [0.0, 0.0]

    def test_shift_drops_prefix_head(self):
        s = Strategy.from_terms([[1.0, 0.0], [2.0, 0.0]], dim=2)
        t = shift(s)
        assert t.term(0).tolist() == [2.0, 0.0]
        assert len(t.prefix) == 1

    def test_shift_rotates_periodic_tail(self):
        s = Strategy(2, (), (np.array([1.0, 1.0]), np.array([-1.0, -1.0])))
        t = shift(s)
        assert t.term(0).tolist() == [-1.0, -1.0]
        assert t.term(1).tolist() == [1.0, 1.0]

    def test_zero_strategy_is_shift_fixed_point(self):
        z = Strategy.zero(3)
        assert shift(z) is z

    def test_shift_matches_term_reindexing(self):
        s = Strategy(2, (np.array([1.0, 2.0]),), (np.array([3.0, 4.0]),
                                                  np.array([5.0, 6.0])))
        t = shift(s)
        for k in range(8):
            assert t.term(k).tolist() == s.term(k + 1).tolist()

    def test_unroll_preserves_terms(self):
        s = Strategy(2, (np.array([9.0, 9.0]),), (np.array([1.0, 0.0]),
                                                  np.array([0.0, 1.0])))
        for count in range(5):
            u = s.unroll(count)
            assert len(u.prefix) == 1 + count
            for k in range(10):
                assert u.term(k).tolist() == s.term(k).tolist()

    def test_with_term_replaces_only_that_index(self):
        s = Strategy(2, (), (np.array([1.0, 1.0]),))
        t = s.with_term(3, [7.0, 7.0])
        assert t.term(3).tolist() == [7.0, 7.0]
        for k in [0, 1, 2, 4, 5]:
            assert t.term(k).tolist() == [1.0, 1.0]

    def test_bounds_check(self):
        s = Strategy.from_terms([[11.0, 0.0]], dim=2)
        with pytest.raises(BoundViolation):
            check_strategy_bounds(s, 10.0)
        check_strategy_bounds(s, 11.0)

    def test_mixed_dimensions_rejected(self):
        with pytest.raises(DimensionMismatch):
            Strategy(2, (np.array([1.0, 2.0, 3.0]),))


class TestMap:
    def test_apply_g_absorbs_head_term(self):
        s = Strategy.from_terms([[1.0, 2.0], [3.0, 4.0]], dim=2)
        x = PhasePoint(s, [10.0, 20.0])
        y = apply_g(x)
        assert y.media.tolist() == [11.0, 22.0]
        assert y.strategy.term(0).tolist() == [3.0, 4.0]
        assert initial(x.strategy).tolist() == [1.0, 2.0]

    def test_iterate_matches_repeated_apply(self):
        s = Strategy(2, (np.array([1.0, 0.0]),), (np.array([0.0, 2.0]),))
        x = PhasePoint(s, [0.0, 0.0])
        stepped = x
        for n in range(6):
            direct = iterate_g(x, n)
            assert direct.media.tolist() == stepped.media.tolist()
            assert d_strategy(direct.strategy, stepped.strategy, SPACE2) == 0.0
            stepped = apply_g(stepped)

    def test_iterate_zero_steps_is_identity(self):
        x = PhasePoint(Strategy.zero(2), [1.0, 2.0])
        assert iterate_g(x, 0) is x
        with pytest.raises(ValueError):
            iterate_g(x, -1)

    def test_point_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            PhasePoint(Strategy.zero(2), [1.0, 2.0, 3.0])

    @settings(max_examples=100, deadline=None)
    @given(points3(), st.integers(min_value=0, max_value=12))
    def test_media_accumulation_identity(self, x, n):
        """After n steps the media equals start plus the first n terms."""
        expected = np.array(x.media, dtype=np.float64)
        for k in range(n):
            expected = expected + x.strategy.term(k)
        got = iterate_g(x, n).media
        assert np.allclose(got, expected, rtol=0.0, atol=1e-9)

    @settings(max_examples=60, deadline=None)
    @given(points3(), st.integers(min_value=0, max_value=4))
    def test_iteration_commutes_with_unrolling(self, x, count):
        """Re-representing the strategy never changes the orbit."""
        alt = PhasePoint(x.strategy.unroll(count), x.media)
        for n in range(4):
            a = iterate_g(x, n)
            b = iterate_g(alt, n)
            assert d_phase(a, b, SPACE3) == 0.0


class TestMetric:
    def test_d_inf_basic(self):
        assert d_inf(np.array([1.0, 5.0]), np.array([4.0, 5.0])) == 3.0
        with pytest.raises(DimensionMismatch):
            d_inf(np.array([1.0]), np.array([1.0, 2.0]))

    def test_identical_strategies_have_zero_distance(self):
        s = Strategy(2, (np.array([1.0, 2.0]),), (np.array([3.0, 4.0]),))
        assert d_strategy(s, s, SPACE2) == 0.0

    def test_single_term_difference_scores_nine(self):
        a = Strategy.zero(2)
        b = Strategy.from_terms([[10.0, 0.0]], dim=2)
        assert d_strategy(a, b, SPACE2) == 9.0

    def test_alternating_full_swing_scores_ten(self):
        a = Strategy.zero(2)
        b = Strategy(2, (), (np.full(2, 10.0), np.full(2, -10.0)))
        assert d_strategy(a, b, SPACE2) == 10.0

    def test_exact_agrees_with_truncated_series(self):
        cases = [
            (Strategy.zero(2), Strategy.zero(2)),
            (Strategy.zero(2), Strategy.from_terms([[10.0, 0.0]], dim=2)),
            (Strategy.zero(2),
             Strategy(2, (), (np.full(2, 10.0), np.full(2, -10.0)))),
            (Strategy(2, (np.array([1.5, -2.0]),), (np.array([0.25, 3.0]),)),
             Strategy(2, (), (np.array([-1.0, 1.0]), np.array([2.0, 0.5])))),
        ]
        for a, b in cases:
            exact = d_strategy(a, b, SPACE2)
            approx, tail_bound = d_strategy_truncated(a, b, SPACE2)
            assert tail_bound == 2e-63
            # the truncated evaluator carries its own float summation error
            assert abs(exact - approx) <= tail_bound + 1e-12

    def test_distance_between_representations_is_zero(self):
        s = Strategy(2, (np.array([1.0, 1.0]),), (np.array([2.0, 2.0]),
                                                  np.array([3.0, 3.0])))
        assert d_strategy(s, s.unroll(1), SPACE2) == 0.0
        assert d_strategy(s, s.unroll(5), SPACE2) == 0.0

    def test_d_phase_media_only_difference(self):
        s = Strategy.zero(2)
        x = PhasePoint(s, [0.0, 0.0])
        y = PhasePoint(s, [1.0, 0.0])
        assert d_phase(x, y, SPACE2) == 1.0

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(DimensionMismatch):
            d_strategy(Strategy.zero(2), Strategy.zero(3), SPACE2)

    @settings(max_examples=150, deadline=None)
    @given(points3(), points3())
    def test_symmetry_and_nonnegativity(self, x, y):
        dxy = d_phase(x, y, SPACE3)
        dyx = d_phase(y, x, SPACE3)
        assert dxy >= 0.0
        assert dxy == dyx

    @settings(max_examples=150, deadline=None)
    @given(points3())
    def test_self_distance_is_exactly_zero(self, x):
        assert d_phase(x, x, SPACE3) == 0.0

    @settings(max_examples=150, deadline=None)
    @given(points3(), points3(), points3())
    def test_triangle_inequality(self, x, y, z):
        dxz = d_phase(x, z, SPACE3)
        dxy = d_phase(x, y, SPACE3)
        dyz = d_phase(y, z, SPACE3)
        assert dxz <= dxy + dyz + 1e-12

    @settings(max_examples=100, deadline=None)
    @given(strategies3(), strategies3())
    def test_shift_contracts_tail_of_series(self, s, t):
        """Strategy distance never exceeds the full-swing ceiling."""
        d = d_strategy(s, t, SPACE3)
        # terms differ by at most 2N, so the series tops out at 20/0.9 scaled
        assert d <= (9.0 / BOUND) * 2.0 * BOUND * (10.0 / 9.0) + 1e-12


class TestSpaceConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            SpaceConfig(nv=0)
        with pytest.raises(ValueError):
            SpaceConfig(nv=4, bound_n=0.0)
        with pytest.raises(ValueError):
            SpaceConfig(nv=4, series_truncation=0)
