import random
from fractions import Fraction as F

import pytest
from conftest import SMALL, seeds
from hypothesis import given, settings

from affine_planner.abstraction import (
    BranchGroup,
    bundle_branches,
    combine_branches,
    compose_branches,
    inter_abstract,
    intra_abstract,
    seq_abstract,
)
from affine_planner.actions import (
    AbstractAction,
    AbstractBranch,
    AbstractEffect,
    effect_compose,
    effect_union,
    normalize_conditions,
    validate_abstract,
)
from affine_planner.credal import Interval, StateSpace
from affine_planner.errors import ActionValidationError, PairingError
from affine_planner.oracle import generators as gen
from affine_planner.oracle.vertices import subsumes_exact
from affine_planner.projection import pr2
from affine_planner.tree import StateLeaf, canonicalize, standardize

E1 = AbstractEffect({"a": "b", "b": "bc", "c": "c"})
E2 = AbstractEffect({"a": "a", "b": "a", "c": "ab"})


def iv(lo, hi):
    return Interval(F(lo), F(hi))


def br(cond, lo, hi, e):
    return AbstractBranch(cond, (F(lo), F(hi)), e)


def t2(action, w, space):
    return standardize(pr2(action, standardize(w, space)), space)


class TestBundle:
    def test_equal_conditions_add(self):
        out = bundle_branches([br("a", "2/10", "3/10", E1), br("a", "4/10", "5/10", E2)])
        assert out == AbstractBranch("a", iv("6/10", "8/10"), effect_union(E1, E2))

    def test_different_conditions(self):
        out = bundle_branches([br("a", "2/10", "3/10", E1), br("b", "4/10", "5/10", E2)])
        assert out == AbstractBranch("ab", iv("2/10", "8/10"), effect_union(E1, E2))

    def test_worked_action_clamps(self, lam_x, abc):
        out = bundle_branches(lam_x.branches)
        assert out == AbstractBranch(abc.all, iv("8/10", 1), effect_union(E1, AbstractEffect.identity(abc)))

    def test_nary_order_irrelevant(self):
        brs = [br("a", "1/10", "2/10", E1), br("ab", "1/10", "3/10", E2), br("c", "1/5", "1/5", E1)]
        assert bundle_branches(brs) == bundle_branches(brs[::-1])

    def test_needs_two(self):
        with pytest.raises(ValueError):
            bundle_branches([br("a", 0, 1, E1)])


class TestCombine:
    def test_equal_conditions_hull(self):
        out = combine_branches([br("a", "2/10", "3/10", E1), br("a", "4/10", "5/10", E2)])
        assert out == AbstractBranch("a", iv("2/10", "5/10"), effect_union(E1, E2))

    def test_different_conditions(self):
        out = combine_branches([br("a", "2/10", "3/10", E1), br("b", "4/10", "5/10", E2)])
        assert out == AbstractBranch("ab", iv(0, "5/10"), effect_union(E1, E2))

    def test_idempotent(self):
        b = br("ab", "1/3", "1/2", E1)
        assert combine_branches([b, b]) == b


class TestCompose:
    def test_example(self, abc):
        second = br("b", "1/2", 1, E2)
        out = compose_branches(br(abc.all, "6/10", "8/10", E1), second)
        assert out == AbstractBranch("ab", iv("3/10", "8/10"), effect_compose(E1, E2))

    def test_identity_on_right(self, abc):
        first = br(abc.all, "6/10", "8/10", E1)
        ident = br(abc.all, 1, 1, AbstractEffect.identity(abc))
        assert compose_branches(first, ident) == first

    def test_unreachable(self, abc):
        assert compose_branches(br("a", 1, 1, E1), br("a", 1, 1, E2)) is None
        assert compose_branches(br("c", 1, 1, AbstractEffect.identity(abc)), br("ab", 1, 1, E2)) is None


class TestBranchGroup:
    def test_partition_checked(self):
        BranchGroup([[0, 1], [2]], 3)
        with pytest.raises(ValueError):
            BranchGroup([[0], [0, 1]], 2)
        with pytest.raises(ValueError):
            BranchGroup([[0]], 2)
        with pytest.raises(ValueError):
            BranchGroup([[0, 1], []], 2)


class TestIntra:
    def test_all_grouped(self, lam_x, abc):
        out = intra_abstract(lam_x, [[0, 1]])
        assert out.branches == (bundle_branches(lam_x.branches),)

    def test_singletons_identity(self, lam_x):
        assert intra_abstract(lam_x, [[1], [0]]) == lam_x

    def test_bad_groups(self, lam_x):
        with pytest.raises(ValueError):
            intra_abstract(lam_x, [[0]])

    def test_uninstantiable_result(self):
        space = StateSpace(("a", "b"))
        ident = AbstractEffect.identity(space)
        lam = AbstractAction(space, [
            br("a", 1, 1, ident), br("b", "1/2", "1/2", ident), br("b", "1/2", "1/2", ident),
        ])
        # the bundle is one shared probability: state a needs it at 1, state b at 1/2
        with pytest.raises(ActionValidationError):
            intra_abstract(lam, [[0, 1], [2]])

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_correct(self, seed):
        rng = random.Random(seed)
        space = gen.random_space(rng, SMALL)
        lam = gen.random_abstract_action(rng, space, SMALL, n=2)
        try:
            out = intra_abstract(lam, [[0, 1]])
        except ActionValidationError:
            return
        w = gen.random_tree(rng, space, SMALL, standard=True)
        assert subsumes_exact(t2(out, w, space), t2(lam, w, space), space)


class TestInter:
    def test_copies(self, lam_x):
        assert inter_abstract([lam_x, lam_x]) == normalize_conditions(lam_x)

    def test_widened_copy(self, lam_x, abc):
        wide = AbstractAction(abc, [br(abc.all, "5/10", "8/10", E1), lam_x.branches[1]])
        out = inter_abstract([lam_x, wide])
        assert out.branches[0].prob == iv("5/10", "8/10")

    def test_pairing_error(self, lam_x, abc):
        one = AbstractAction(abc, [br(abc.all, 1, 1, E1)])
        with pytest.raises(PairingError):
            inter_abstract([lam_x, one])

    def test_space_mismatch(self, lam_x):
        ab = StateSpace(("a", "b"))
        other = AbstractAction(ab, [br(ab.all, 1, 1, AbstractEffect.identity(ab))])
        with pytest.raises(PairingError):
            inter_abstract([lam_x, other])

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_correct(self, seed):
        rng = random.Random(seed)
        space = gen.random_space(rng, SMALL)
        first = gen.random_abstract_action(rng, space, SMALL)
        conds = [b.condition for b in first.branches]
        second = gen.random_abstract_action(rng, space, SMALL, conditions=conds)
        out = inter_abstract([first, second])
        w = gen.random_tree(rng, space, SMALL, standard=True)
        big = t2(out, w, space)
        for lam in (first, second):
            assert subsumes_exact(big, t2(lam, w, space), space)

    @settings(max_examples=30, deadline=None)
    @given(seeds)
    def test_order_insensitive(self, seed):
        rng = random.Random(seed)
        space = gen.random_space(rng, SMALL)
        first = gen.random_abstract_action(rng, space, SMALL)
        conds = [b.condition for b in first.branches]
        second = gen.random_abstract_action(rng, space, SMALL, conditions=conds)
        w = StateLeaf(space.states[0])
        a = t2(inter_abstract([first, second]), w, space)
        b = t2(inter_abstract([second, first]), w, space)
        assert canonicalize(a, space) == canonicalize(b, space)


class TestSeq:
    def test_identity_first(self, lam_x, abc):
        ident = AbstractAction(abc, [br(abc.all, 1, 1, AbstractEffect.identity(abc))])
        assert seq_abstract(ident, lam_x) == lam_x

    def test_worked_pair_count(self, lam_x):
        assert len(seq_abstract(lam_x, lam_x).branches) == 4

    def test_drops_unreachable_pairs(self):
        space = StateSpace(("a", "b"))
        to_a = AbstractEffect({"a": "a", "b": "a"})
        first = AbstractAction(space, [br(space.all, 1, 1, to_a)])
        second = AbstractAction(space, [br("a", 1, 1, to_a), br("b", 1, 1, to_a)])
        out = seq_abstract(first, second)
        assert len(out.branches) == 1 and validate_abstract(out).ok

    def test_product_rule_can_lose_mass(self):
        # first step lands on a or b; the second step's branches each cover only
        # one of them, so the composed intervals force a 1/2 split that the
        # concrete plan never has to make
        space = StateSpace(("a", "b"))
        first = AbstractAction(space, [br(space.all, 1, 1, AbstractEffect({"a": "ab", "b": "ab"}))])
        second = AbstractAction(space, [
            br("a", "1/2", 1, AbstractEffect({"a": "a", "b": "a"})),
            br("b", "1/2", 1, AbstractEffect({"a": "b", "b": "b"})),
        ])
        composed = seq_abstract(first, second)
        w = StateLeaf("a")
        concrete = t2(second, t2(first, w, space), space)
        abstract = t2(composed, w, space)
        assert not subsumes_exact(abstract, concrete, space)
