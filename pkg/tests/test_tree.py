import random
from fractions import Fraction as F

import pytest
from conftest import SMALL, seeds
from hypothesis import given, settings

from affine_planner.credal import Distribution, Interval, StateSpace
from affine_planner.errors import NotStandardizableError
from affine_planner.oracle import generators as gen
from affine_planner.oracle.vertices import member, subsumes_exact, world_vertices
from affine_planner.tree import (
    FiniteLeaf,
    IntervalMassAssignment,
    MassAssignment,
    SetLeaf,
    Star,
    StateLeaf,
    canonicalize,
    depth,
    flatten,
    from_belief,
    from_distribution,
    from_ima,
    leaf_count,
    merge_branches,
    merge_stars,
    sample_member,
    standardize,
    validate,
)


def iv(lo, hi):
    return Interval(F(lo), F(hi))


def star(*branches):
    return Star([(iv(*q), c) for q, c in branches])


class TestValidate:
    def test_feasible_star(self):
        t = star((("1/2", "1/2"), StateLeaf("a")), (("1/2", "1/2"), StateLeaf("b")))
        assert validate(t).ok

    def test_infeasible_star(self):
        report = validate(star((("2/10", "4/10"), StateLeaf("a"))))
        assert not report.ok
        assert "sum hi = 2/5" in report.messages()[0]

    def test_empty_set_leaf(self):
        assert not validate(SetLeaf(())).ok

    def test_reports_paths(self):
        bad = star((("0", "1"), star((("0", "1/2"), StateLeaf("a")))))
        assert validate(bad).issues[0].path == (0,)

    def test_unknown_state(self, abc):
        assert not validate(StateLeaf("z"), abc).ok


class TestConstructors:
    def test_from_distribution(self, abc):
        t = from_distribution(Distribution(abc, [F(7, 10), F(3, 10), 0]))
        assert t == star((("7/10", "7/10"), StateLeaf("a")), (("3/10", "3/10"), StateLeaf("b")))

    def test_from_distribution_point(self, abc):
        assert from_distribution(Distribution.point(abc, "a")) == star(((1, 1), StateLeaf("a")))

    def test_from_distribution_uniform(self, abc):
        t = from_distribution(Distribution.uniform(abc))
        assert t.intervals == (iv("1/3", "1/3"),) * 3

    def test_from_belief(self):
        m = MassAssignment([({"a"}, F(3, 10)), ({"a", "b"}, F(7, 10))])
        assert from_belief(m) == star(
            (("3/10", "3/10"), SetLeaf({"a"})), (("7/10", "7/10"), SetLeaf({"a", "b"}))
        )

    def test_vacuous_belief_is_everything(self, abc):
        t = from_belief(MassAssignment([(abc.all, 1)]))
        assert subsumes_exact(t, SetLeaf(abc.all), abc)

    def test_belief_rejects_bad_masses(self):
        with pytest.raises(ValueError):
            MassAssignment([({"a"}, F(1, 2))])

    def test_ima(self):
        ima = IntervalMassAssignment([({"a"}, (F(2, 10), F(5, 10))), ({"a", "b"}, (F(5, 10), F(8, 10)))])
        assert from_ima(ima).intervals == (iv("2/10", "5/10"), iv("5/10", "8/10"))

    def test_point_ima_matches_belief(self):
        m = MassAssignment([({"a"}, F(1, 4)), ({"b", "c"}, F(3, 4))])
        ima = IntervalMassAssignment([(b, (q, q)) for b, q in m.focals])
        assert from_ima(ima) == from_belief(m)


class TestTransforms:
    def test_flatten_example(self):
        t = star(
            (("1/2", "1/2"), star((("3/10", "7/10"), SetLeaf("a")), (("3/10", "7/10"), SetLeaf("b")))),
            (("1/2", "1/2"), SetLeaf("c")),
        )
        assert flatten(t) == star(
            (("3/20", "7/20"), SetLeaf("a")),
            (("3/20", "7/20"), SetLeaf("b")),
            (("1/2", "1/2"), SetLeaf("c")),
        )

    def test_flatten_depth_one_identity(self):
        t = star((("0", "1"), SetLeaf("ab")), (("1/2", "1"), StateLeaf("c")))
        assert flatten(t) == t

    def test_merge_branches_example(self):
        t = star((("1/5", "2/5"), SetLeaf("a")), (("1/5", "2/5"), SetLeaf("b")), (("1/5", "3/5"), SetLeaf("c")))
        assert merge_branches(t, [0, 1]) == star(
            (("2/5", "4/5"), SetLeaf("ab")), (("1/5", "3/5"), SetLeaf("c"))
        )

    def test_merge_all_branches_clamps(self):
        t = star((("1/2", "3/4"), SetLeaf("a")), (("1/2", "3/4"), SetLeaf("bc")))
        assert merge_branches(t, [0, 1]) == star(((1, 1), SetLeaf("abc")))

    def test_merge_heterogeneous_wraps(self):
        inner = star((("0", "1"), StateLeaf("a")), (("0", "1"), StateLeaf("b")))
        t = star((("1/2", "1/2"), inner), (("1/2", "1/2"), StateLeaf("c")))
        merged = merge_branches(t, [0, 1])
        assert merged == star(((1, 1), star((("0", "1"), inner), (("0", "1"), StateLeaf("c")))))

    def test_merge_branches_errors(self):
        t = star((("1/2", "1/2"), StateLeaf("a")), (("1/2", "1/2"), StateLeaf("b")))
        with pytest.raises(IndexError):
            merge_branches(t, [0, 5])
        with pytest.raises(ValueError):
            merge_branches(t, [1])

    def test_merge_stars_example(self):
        s1 = star((("1/2", "1/2"), SetLeaf("a")), (("1/2", "1/2"), SetLeaf("b")))
        s2 = star((("3/10", "3/10"), SetLeaf("a")), (("7/10", "7/10"), SetLeaf("c")))
        assert merge_stars([s1, s2]) == star((("3/10", "1/2"), SetLeaf("a")), (("1/2", "7/10"), SetLeaf("bc")))

    def test_merge_stars_idempotent(self):
        s = star((("1/4", "1/2"), SetLeaf("a")), (("1/2", "3/4"), StateLeaf("b")))
        assert merge_stars([s, s]) == s

    def test_merge_stars_arity_mismatch(self):
        s1 = star(((1, 1), SetLeaf("a")))
        s2 = star((("1/2", "1/2"), SetLeaf("a")), (("1/2", "1/2"), SetLeaf("b")))
        with pytest.raises(ValueError):
            merge_stars([s1, s2])

    def test_standardize(self, abc):
        assert standardize(SetLeaf("ab"), abc) == star((("0", "1"), StateLeaf("a")), (("0", "1"), StateLeaf("b")))
        assert standardize(StateLeaf("a"), abc) == StateLeaf("a")
        assert standardize(SetLeaf("c"), abc) == StateLeaf("c")
        with pytest.raises(NotStandardizableError):
            standardize(FiniteLeaf("ab"), abc)

    def test_standardized_belief_counts(self, abc):
        t = standardize(from_belief(MassAssignment([({"a"}, F(1, 2)), ({"b", "c"}, F(1, 2))])), abc)
        assert (depth(t), leaf_count(t)) == (2, 3)

    def test_metrics(self):
        assert (depth(StateLeaf("a")), leaf_count(StateLeaf("a"))) == (0, 1)
        t = star((("0", "1"), StateLeaf("a")), (("0", "1"), SetLeaf("b")), (("0", "1"), StateLeaf("c")))
        assert (depth(t), leaf_count(t)) == (1, 3)


class TestSampling:
    def test_point_leaves(self, abc):
        rng = random.Random(0)
        assert sample_member(StateLeaf("a"), abc, rng) == Distribution.point(abc, "a")
        assert sample_member(star(((1, 1), StateLeaf("a"))), abc, rng) == Distribution.point(abc, "a")

    @settings(max_examples=60, deadline=None)
    @given(seeds)
    def test_samples_are_members(self, seed):
        rng = random.Random(seed)
        space = gen.random_space(rng, SMALL)
        t = gen.random_tree(rng, space, SMALL)
        vs = world_vertices(t, space)
        for _ in range(3):
            assert member(sample_member(t, space, rng), vs)


class TestWorldLaws:
    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_standardize_preserves_world(self, seed):
        rng = random.Random(seed)
        space = gen.random_space(rng, SMALL)
        t = gen.random_tree(rng, space, SMALL)
        s = standardize(t, space)
        assert subsumes_exact(t, s, space) and subsumes_exact(s, t, space)

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_flatten_idempotent(self, seed):
        rng = random.Random(seed)
        space = gen.random_space(rng, SMALL)
        t = gen.random_tree(rng, space, SMALL)
        once = flatten(t)
        assert canonicalize(flatten(once), space) == canonicalize(once, space)

    def test_monotone_hull(self):
        space = StateSpace(("a", "b", "c", "d"))
        for b in ("a", "ab", "abc"):
            for c in ("a", "ab", "abd", "abcd"):
                assert subsumes_exact(SetLeaf(c), SetLeaf(b), space) == (set(b) <= set(c))
