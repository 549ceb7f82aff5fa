from fractions import Fraction as F

import pytest
from conftest import intervals
from hypothesis import given
from hypothesis import strategies as st

from affine_planner.credal import (
    ONE,
    Distribution,
    EUInterval,
    Interval,
    StateSpace,
    UtilityFunction,
    dist_mix,
    interval_add,
    interval_hull,
    interval_mul,
    interval_subsumes,
    parse_rational,
)
from affine_planner.errors import AffineVectorError


def iv(lo, hi):
    return Interval(F(lo), F(hi))


class TestParse:
    def test_decimal_strings_are_exact(self):
        assert parse_rational("0.3") == F(3, 10)

    def test_ratio_strings(self):
        assert parse_rational(" 7/20 ") == F(7, 20)

    def test_ints_and_fractions(self):
        assert parse_rational(2) == 2
        assert parse_rational(F(1, 3)) == F(1, 3)

    @pytest.mark.parametrize("bad", [0.3, True, None, [1]])
    def test_rejects_inexact_types(self, bad):
        with pytest.raises(TypeError):
            parse_rational(bad)

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_rational("1/0")


class TestStateSpace:
    def test_order_and_index(self):
        s = StateSpace(("x", "y"))
        assert s.index("y") == 1
        assert s.ordered({"y", "x"}) == ("x", "y")

    @pytest.mark.parametrize("states", [(), ("a", "a")])
    def test_invalid(self, states):
        with pytest.raises(ValueError):
            StateSpace(states)


class TestInterval:
    def test_bounds_checked(self):
        with pytest.raises(ValueError):
            Interval(F(1, 2), F(1, 3))
        with pytest.raises(ValueError):
            Interval(F(0), F(3, 2))

    def test_add(self):
        assert interval_add(iv("1/10", "2/10"), iv("3/10", "4/10")) == iv("4/10", "6/10")
        assert interval_add(iv(0, 0), iv("3/10", "7/10")) == iv("3/10", "7/10")

    def test_add_clamps(self):
        assert interval_add(iv("8/10", "9/10"), iv("5/10", "6/10")) == iv(1, 1)

    def test_mul(self):
        assert interval_mul(iv("1/2", "1/2"), iv("3/10", "7/10")) == iv("3/20", "7/20")
        assert interval_mul(iv(0, 1), iv("2/10", "4/10")) == iv(0, "4/10")
        q = iv("1/5", "3/5")
        assert interval_mul(iv(1, 1), q) == q

    def test_subsumes(self):
        assert interval_subsumes(iv(0, 1), iv("2/10", "3/10"))
        assert not interval_subsumes(iv("2/10", "3/10"), iv("1/10", "3/10"))

    def test_hull(self):
        assert interval_hull([iv("1/2", "1/2"), iv("3/10", "3/10")]) == iv("3/10", "1/2")

    @given(intervals(), intervals())
    def test_add_mul_commute(self, a, b):
        assert interval_add(a, b) == interval_add(b, a)
        assert interval_mul(a, b) == interval_mul(b, a)

    @given(intervals(), intervals(), intervals())
    def test_mul_associative(self, a, b, c):
        assert interval_mul(interval_mul(a, b), c) == interval_mul(a, interval_mul(b, c))

    @given(intervals(), intervals(), intervals())
    def test_add_associative_without_clamping(self, a, b, c):
        if a.hi + b.hi + c.hi <= 1:
            assert interval_add(interval_add(a, b), c) == interval_add(a, interval_add(b, c))

    @given(intervals(), intervals(), intervals())
    def test_subsumption_is_a_partial_order(self, a, b, c):
        assert interval_subsumes(a, a)
        if interval_subsumes(a, b) and interval_subsumes(b, a):
            assert a == b
        if interval_subsumes(a, b) and interval_subsumes(b, c):
            assert interval_subsumes(a, c)


class TestDistribution:
    def test_validation(self, abc):
        with pytest.raises(ValueError):
            Distribution(abc, [F(1, 2), F(1, 3), 0])
        with pytest.raises(ValueError):
            Distribution(abc, [F(3, 2), F(-1, 2), 0])

    def test_mix_examples(self):
        ab = StateSpace(("a", "b"))
        da, db = Distribution.point(ab, "a"), Distribution.point(ab, "b")
        assert dist_mix([F(1, 2), F(1, 2)], [da, db]) == Distribution(ab, [F(1, 2), F(1, 2)])
        p = Distribution(ab, [F(1, 4), F(3, 4)])
        assert dist_mix([ONE, 0], [p, db]) == p
        half = Distribution(ab, [F(1, 2), F(1, 2)])
        assert dist_mix([F(7, 10), F(3, 10)], [da, half]) == Distribution(ab, [F(17, 20), F(3, 20)])

    def test_mix_rejects_bad_weights(self, abc):
        d = Distribution.uniform(abc)
        with pytest.raises(AffineVectorError):
            dist_mix([F(1, 2), F(1, 3)], [d, d])
        with pytest.raises(AffineVectorError):
            dist_mix([F(3, 2), F(-1, 2)], [d, d])
        with pytest.raises(AffineVectorError):
            dist_mix([ONE], [d, d])

    @given(st.lists(st.integers(min_value=0, max_value=9), min_size=3, max_size=3).filter(any))
    def test_mix_sums_to_one(self, raw):
        space = StateSpace(("a", "b", "c"))
        total = sum(raw)
        w = [F(r, total) for r in raw]
        dists = [Distribution.point(space, s) for s in space]
        assert sum(dist_mix(w, dists).probs) == 1


def test_utility_and_eu_interval(abc):
    f = UtilityFunction(abc, [0, -10, F(1, 2)])
    assert f.expectation(Distribution.uniform(abc)) == F(-19, 6)
    assert EUInterval(-3, 4).contains(EUInterval(-1, 4))
    with pytest.raises(ValueError):
        EUInterval(2, 1)
