"""Seeded random fixtures: state spaces, trees, actions, utilities.

Every generator takes an explicit ``random.Random`` and a :class:`Bounds`,
so a fixture is a pure function of (seed, bounds).  Halving the bounds is
how the property runner shrinks a failing case.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction

from ..actions import (
    AbstractAction,
    AbstractBranch,
    AbstractEffect,
    PrimitiveAction,
    PrimitiveBranch,
    PrimitiveEffect,
    probability_vertex,
)
from ..credal import ONE, UNIT, ZERO, Interval, StateSpace, UtilityFunction
from ..tree import SetLeaf, Star, StateLeaf, random_fraction

STATE_NAMES = "abcdefgh"


@dataclass(frozen=True)
class Bounds:
    max_states: int = 4
    max_depth: int = 3
    max_arity: int = 3
    max_branches: int = 3

    def halved(self) -> "Bounds | None":
        smaller = Bounds(
            max(2, self.max_states - 1),
            max(1, self.max_depth // 2),
            max(2, self.max_arity // 2),
            max(2, self.max_branches // 2),
        )
        return None if smaller == self else smaller


def random_space(rng: random.Random, bounds: Bounds, size: int | None = None) -> StateSpace:
    n = size if size is not None else rng.randint(2, max(2, bounds.max_states))
    return StateSpace(tuple(STATE_NAMES[:n]))


def random_subset(rng: random.Random, space: StateSpace, max_size: int | None = None) -> frozenset:
    states = list(space)
    k = rng.randint(1, min(len(states), max_size or len(states)))
    return frozenset(rng.sample(states, k))


def random_point_weights(rng: random.Random, n: int) -> list[Fraction]:
    """A random affine-vector of length ``n`` on a small grid."""
    d = rng.choice((2, 3, 4, 5, 6, 10, 12))
    raw = [rng.randint(0, d) for _ in range(n)]
    if not any(raw):
        raw[rng.randrange(n)] = 1
    total = sum(raw)
    return [Fraction(r, total) for r in raw]


def widen(rng: random.Random, q: Fraction) -> Interval:
    """A random interval around ``q`` (sometimes the point itself, sometimes [0, 1])."""
    r = rng.random()
    if r < 0.2:
        return Interval(q, q)
    if r < 0.3:
        return UNIT
    return Interval(random_fraction(rng, ZERO, q), random_fraction(rng, q, ONE))


def random_intervals(rng: random.Random, n: int) -> list[Interval]:
    """``n`` intervals whose branch-weight polytope is nonempty (it contains a random point)."""
    return [widen(rng, q) for q in random_point_weights(rng, n)]


def random_leaf(rng: random.Random, space: StateSpace, standard: bool = False):
    if standard or rng.random() < 0.4:
        return StateLeaf(rng.choice(space.states))
    return SetLeaf(random_subset(rng, space))


def random_tree(
    rng: random.Random,
    space: StateSpace,
    bounds: Bounds,
    standard: bool = False,
    depth: int | None = None,
):
    """A random valid tree with depth at most ``bounds.max_depth`` (root is a star when depth > 0)."""
    limit = bounds.max_depth if depth is None else depth

    def grow(level: int):
        if level >= limit or (level > 0 and rng.random() < 0.35):
            return random_leaf(rng, space, standard)
        n = rng.randint(1, bounds.max_arity)
        return Star(zip(random_intervals(rng, n), [grow(level + 1) for _ in range(n)]))

    return grow(0)


def random_star(rng: random.Random, space: StateSpace, bounds: Bounds, arity: int | None = None) -> Star:
    n = arity if arity is not None else rng.randint(2, max(2, bounds.max_arity))
    sub = replace(bounds, max_depth=max(0, bounds.max_depth - 1))
    return Star(
        zip(random_intervals(rng, n), [random_tree(rng, space, sub) for _ in range(n)])
    )


def random_utility(rng: random.Random, space: StateSpace) -> UtilityFunction:
    return UtilityFunction(space, [rng.randint(-10, 10) for _ in space])


def random_conditions(rng: random.Random, space: StateSpace, n: int) -> list[frozenset]:
    """``n`` nonempty conditions that jointly cover the space."""
    conds = [set(random_subset(rng, space)) if rng.random() < 0.6 else set(space) for _ in range(n)]
    for s in space:
        if not any(s in c for c in conds):
            conds[rng.randrange(n)].add(s)
    return [frozenset(c) for c in conds]


def _point_probabilities(rng: random.Random, space: StateSpace, conds) -> list[Fraction] | None:
    """Probabilities satisfying the per-state sum-to-one rule for ``conds``, if any exist."""
    n = len(conds)
    probe = AbstractAction(
        space, [AbstractBranch(c, UNIT, AbstractEffect.identity(space)) for c in conds]
    )
    first = probability_vertex(probe, [Fraction(rng.randint(-5, 5)) for _ in range(n)])
    if first is None:
        return None
    second = probability_vertex(probe, [Fraction(rng.randint(-5, 5)) for _ in range(n)])
    a = Fraction(rng.randint(0, 4), 4)
    return [a * x + (1 - a) * y for x, y in zip(first, second)]


def random_primitive_effect(rng: random.Random, space: StateSpace) -> PrimitiveEffect:
    r = rng.random()
    if r < 0.2:
        return PrimitiveEffect.identity(space)
    if r < 0.4:
        return PrimitiveEffect.constant(space, rng.choice(space.states))
    return PrimitiveEffect({s: rng.choice(space.states) for s in space})


def random_abstract_effect(rng: random.Random, space: StateSpace, k: int | None = None) -> AbstractEffect:
    """Random set-valued effect; ``k`` fixes every image size."""
    table = {}
    for s in space:
        size = k if k is not None else (1 if rng.random() < 0.5 else rng.randint(1, len(space)))
        table[s] = rng.sample(space.states, size)
    return AbstractEffect(table)


def random_primitive_action(rng: random.Random, space: StateSpace, bounds: Bounds) -> PrimitiveAction:
    while True:
        n = rng.randint(1, bounds.max_branches)
        conds = random_conditions(rng, space, n)
        p = _point_probabilities(rng, space, conds)
        if p is not None:
            break
    return PrimitiveAction(
        space,
        [PrimitiveBranch(c, q, random_primitive_effect(rng, space)) for c, q in zip(conds, p)],
    )


def random_abstract_action(
    rng: random.Random,
    space: StateSpace,
    bounds: Bounds,
    n: int | None = None,
    k: int | None = None,
    conditions=None,
) -> AbstractAction:
    """A random instantiable abstract action.

    Conditions are drawn first, then a primitive probability vector that
    satisfies them, then every probability is widened to an interval around
    it; so the action always has an instantiation.
    """
    while True:
        if conditions is not None:
            conds = list(conditions)
        else:
            conds = random_conditions(rng, space, n or rng.randint(1, bounds.max_branches))
        p = _point_probabilities(rng, space, conds)
        if p is not None:
            break
        if conditions is not None:
            raise ValueError("given conditions admit no probabilities")
    return AbstractAction(
        space,
        [AbstractBranch(c, widen(rng, q), random_abstract_effect(rng, space, k)) for c, q in zip(conds, p)],
    )


def mutate_sum(rng: random.Random, action: PrimitiveAction) -> PrimitiveAction:
    """Break the sum-to-one rule on at least one state by nudging one probability."""
    i = rng.randrange(len(action.branches))
    br = action.branches[i]
    delta = Fraction(rng.randint(1, 5), 10)
    p = br.prob - delta if br.prob - delta >= 0 and rng.random() < 0.5 else br.prob + delta
    if p > 1:
        p = br.prob - delta
    branches = list(action.branches)
    branches[i] = PrimitiveBranch(br.condition, p, br.effect)
    return PrimitiveAction(action.space, branches)


# -- enlargements (monotonicity fixtures) ---------------------------------------


def _paths(t, prefix=()):
    yield prefix, t
    if isinstance(t, Star):
        for i, c in enumerate(t.children):
            yield from _paths(c, prefix + (i,))


def enlarge(rng: random.Random, t, space: StateSpace):
    """Replace one random leaf by a superset leaf, or one random interval by a wider one."""
    nodes = list(_paths(t))
    leaves = [(p, n) for p, n in nodes if not isinstance(n, Star)]
    stars = [(p, n) for p, n in nodes if isinstance(n, Star)]
    if stars and rng.random() < 0.5:
        path, star = rng.choice(stars)
        i = rng.randrange(star.arity)
        q = star.branches[i][0]
        wider = Interval(random_fraction(rng, ZERO, q.lo), random_fraction(rng, q.hi, ONE))
        branches = list(star.branches)
        branches[i] = (wider, branches[i][1])
        return _set(t, path, Star(branches))
    path, leaf = rng.choice(leaves)
    states = {leaf.state} if isinstance(leaf, StateLeaf) else set(leaf.states)
    extra = [s for s in space if s not in states]
    rng.shuffle(extra)
    states.update(extra[: rng.randint(0, len(extra))])
    return _set(t, path, SetLeaf(states))


def _set(t, path, new):
    if not path:
        return new
    branches = list(t.branches)
    q, c = branches[path[0]]
    branches[path[0]] = (q, _set(c, path[1:], new))
    return Star(branches)
