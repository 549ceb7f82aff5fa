import random
from fractions import Fraction as F

import pytest
from conftest import DEFAULT, SMALL, seeds
from hypothesis import given, settings

from affine_planner.actions import (
    AbstractAction,
    AbstractBranch,
    AbstractEffect,
    PrimitiveAction,
    PrimitiveBranch,
    PrimitiveEffect,
    action_instantiates,
    apply_primitive_dist,
    apply_primitive_state,
    effect_compose,
    effect_instantiates,
    effect_union,
    normalize_conditions,
    sample_instantiation,
    to_abstract,
    validate_abstract,
    validate_primitive,
)
from affine_planner.credal import Distribution, StateSpace, dist_mix
from affine_planner.errors import InstantiationError
from affine_planner.oracle import generators as gen

AB = StateSpace(("a", "b"))


def prim(space, *branches):
    return PrimitiveAction(space, [PrimitiveBranch(c, F(p), e) for c, p, e in branches])


@pytest.fixture
def move():
    """Jump to a with probability 7/10, else stay."""
    return prim(
        AB,
        (AB.all, "7/10", PrimitiveEffect.constant(AB, "a")),
        (AB.all, "3/10", PrimitiveEffect.identity(AB)),
    )


class TestValidatePrimitive:
    def test_ok(self, move):
        assert validate_primitive(move).ok

    def test_sum_violation(self):
        bad = prim(AB, (AB.all, "7/10", PrimitiveEffect.constant(AB, "a")),
                   (AB.all, "4/10", PrimitiveEffect.identity(AB)))
        report = validate_primitive(bad)
        assert [i.path for i in report.issues] == [("state", "a"), ("state", "b")]
        assert "11/10" in report.messages()[0]

    def test_not_exhaustive(self):
        report = validate_primitive(prim(AB, ({"a"}, 1, PrimitiveEffect.identity(AB))))
        assert not report.ok
        assert report.issues[0].path == ("state", "b")


class TestApply:
    def test_state(self, move):
        assert apply_primitive_state(move, "b") == Distribution(AB, [F(7, 10), F(3, 10)])
        assert apply_primitive_state(move, "a") == Distribution.point(AB, "a")

    def test_identity(self, abc):
        ident = prim(abc, (abc.all, 1, PrimitiveEffect.identity(abc)))
        for s in abc:
            assert apply_primitive_state(ident, s) == Distribution.point(abc, s)
        p = Distribution(abc, [F(1, 6), F(1, 3), F(1, 2)])
        assert apply_primitive_dist(ident, p) == p

    def test_dist(self, move):
        half = Distribution(AB, [F(1, 2), F(1, 2)])
        assert apply_primitive_dist(move, half) == Distribution(AB, [F(17, 20), F(3, 20)])
        assert apply_primitive_dist(move, Distribution.point(AB, "b")) == apply_primitive_state(move, "b")

    @settings(max_examples=60, deadline=None)
    @given(seeds)
    def test_affine(self, seed):
        rng = random.Random(seed)
        space = gen.random_space(rng, DEFAULT)
        lam = gen.random_primitive_action(rng, space, DEFAULT)
        p, q = (Distribution(space, gen.random_point_weights(rng, len(space))) for _ in range(2))
        alpha = F(rng.randint(0, 12), 12)
        lhs = apply_primitive_dist(lam, dist_mix([alpha, 1 - alpha], [p, q]))
        rhs = dist_mix([alpha, 1 - alpha], [apply_primitive_dist(lam, p), apply_primitive_dist(lam, q)])
        assert lhs == rhs


class TestNormalize:
    def test_example(self):
        e1, e2 = PrimitiveEffect.constant(AB, "b"), PrimitiveEffect.identity(AB)
        lam = prim(AB, ({"a"}, "1/2", e1), (AB.all, "1/2", e2))
        out = normalize_conditions(lam)
        assert [(set(b.condition), b.effect) for b in out.branches] == [({"a"}, e1), ({"a"}, e2), ({"b"}, e2)]

    def test_fixed_point(self, move):
        assert normalize_conditions(move) == move

    def test_abstract_kind_preserved(self, lam_x):
        assert isinstance(normalize_conditions(lam_x), AbstractAction)

    @settings(max_examples=80, deadline=None)
    @given(seeds)
    def test_preserves_semantics(self, seed):
        rng = random.Random(seed)
        space = gen.random_space(rng, DEFAULT)
        lam = gen.random_primitive_action(rng, space, DEFAULT)
        norm = normalize_conditions(lam)
        assert validate_primitive(norm).ok
        for b in space:
            assert apply_primitive_state(norm, b) == apply_primitive_state(lam, b)
            assert sum(1 for br in {x.condition for x in norm.branches} if b in br) == 1


class TestInstantiation:
    def test_effects(self, abc):
        ident = PrimitiveEffect.identity(abc)
        assert effect_instantiates(ident, AbstractEffect.identity(abc))
        assert not effect_instantiates(PrimitiveEffect({"a": "b", "b": "b", "c": "c"}),
                                       AbstractEffect({"a": "c", "b": "b", "c": "c"}))
        assert effect_instantiates(PrimitiveEffect.constant(abc, "b"), AbstractEffect.vacuous(abc))

    @pytest.mark.parametrize("p, ok", [(("7/10", "3/10"), True), (("9/10", "1/10"), False), (("6/10", "3/10"), False)])
    def test_action(self, lam_x, abc, p, ok):
        e1 = PrimitiveEffect({"a": "b", "b": "c", "c": "c"})
        lam = prim(abc, (abc.all, p[0], e1), (abc.all, p[1], PrimitiveEffect.identity(abc)))
        assert action_instantiates(lam, lam_x) is ok

    def test_branch_count_mismatch(self, lam_x, abc):
        assert not action_instantiates(prim(abc, (abc.all, 1, PrimitiveEffect.identity(abc))), lam_x)


class TestValidateAbstract:
    def test_ok(self, lam_x):
        assert validate_abstract(lam_x).ok

    def test_infeasible_state(self, abc):
        ident = AbstractEffect.identity(abc)
        lam = AbstractAction(abc, [
            AbstractBranch({"a", "b"}, (1, 1), ident),
            AbstractBranch({"c"}, (F(2, 10), F(4, 10)), ident),
        ])
        report = validate_abstract(lam)
        assert [i.path for i in report.issues] == [("state", "c")]

    def test_jointly_infeasible(self):
        # each state alone can reach 1, but not simultaneously
        ident = AbstractEffect.identity(AB)
        lam = AbstractAction(AB, [
            AbstractBranch(AB.all, (F(1, 2), F(1, 2)), ident),
            AbstractBranch({"a"}, (F(1, 2), F(1, 2)), ident),
            AbstractBranch({"b"}, (0, 1), ident),
            AbstractBranch({"a", "b"}, (F(1, 10), F(1, 10)), ident),
        ])
        assert not validate_abstract(lam).ok

    def test_uncovered(self, abc):
        lam = AbstractAction(abc, [AbstractBranch({"a"}, (1, 1), AbstractEffect.identity(abc))])
        assert not validate_abstract(lam).ok


class TestSampleInstantiation:
    def test_unique(self, move):
        lam = to_abstract(move)
        assert sample_instantiation(lam, random.Random(3)) == move

    def test_draws_instantiate(self, lam_x):
        rng = random.Random(11)
        for _ in range(500):
            assert action_instantiates(sample_instantiation(lam_x, rng), lam_x)

    def test_infeasible(self, abc):
        lam = AbstractAction(abc, [AbstractBranch(abc.all, (F(2, 10), F(4, 10)), AbstractEffect.identity(abc))])
        with pytest.raises(InstantiationError):
            sample_instantiation(lam, random.Random(0))

    @settings(max_examples=60, deadline=None)
    @given(seeds)
    def test_random_actions(self, seed):
        rng = random.Random(seed)
        space = gen.random_space(rng, SMALL)
        lam = gen.random_abstract_action(rng, space, SMALL)
        assert validate_abstract(lam).ok
        small = sample_instantiation(lam, rng)
        assert validate_primitive(small).ok and action_instantiates(small, lam)


class TestEffectAlgebra:
    def test_union(self):
        e1 = AbstractEffect({"a": "b"})
        e2 = AbstractEffect({"a": "c"})
        assert effect_union(e1, e2) == AbstractEffect({"a": "bc"})

    def test_compose(self):
        e1 = AbstractEffect({"a": "bc", "b": "b", "c": "c"})
        e2 = AbstractEffect({"a": "a", "b": "a", "c": "c"})
        assert effect_compose(e1, e2)("a") == frozenset("ac")

    def test_identity_laws(self, abc):
        e = AbstractEffect({"a": "bc", "b": "a", "c": "abc"})
        ident = AbstractEffect.identity(abc)
        assert effect_compose(e, ident) == e == effect_compose(ident, e)
