"""Ground truth for affine-tree worlds: exact vertex sets, membership and subsumption.

Two independent routes compute a world's vertex set:

* ``method="product"`` enumerates ``q (x) (v_1, ..., v_n)`` for every vertex
  ``q`` of the branch-weight polytope and every choice of child vertices,
  deduplicated and nothing more.  Exponential; for small trees only.
* ``method="hull"`` (default) works with the unnormalized terms
  ``{t * P : t in Q_i, P in w_i}``, takes their Minkowski sum with exact
  hull pruning after every step, and slices the result with the
  hyperplane ``sum(x) = 1``.  Only extreme points survive.

Both produce generators of the same convex set, and the tests cross-check them.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .. import lp
from ..actions import AbstractAction, apply_primitive_dist, sample_instantiation, to_abstract
from ..credal import ONE, ZERO, Distribution, Interval, StateSpace, UtilityFunction
from ..errors import OracleSizeError, TreeValidationError
from ..tree import FiniteLeaf, SetLeaf, Star, StateLeaf, contains_finite_leaf, depth, leaf_count
from ..tree import sample_member, validate
from .geometry import dedupe, extreme_points, slice_sum_one

MAX_STATES = 5
MAX_DEPTH = 8
MAX_LEAVES = 512
MAX_PRODUCT = 200_000


@dataclass(frozen=True)
class VertexSet:
    """Finite generators of a world; ``conv(points)`` is the world.

    For trees with FiniteLeaf nodes the convex hull of the world is
    represented instead, and ``hull_of_finite`` is set.
    """

    space: StateSpace
    points: tuple
    hull_of_finite: bool = False

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        for p in self.points:
            yield Distribution._trusted(self.space, p)

    @property
    def distributions(self) -> list[Distribution]:
        return list(self)


def delta_vertices(intervals: Sequence[Interval]) -> list[tuple[Fraction, ...]]:
    """All vertices of ``{q : lo_i <= q_i <= hi_i, sum q = 1}``.

    A vertex has at most one coordinate strictly inside its bounds, so for
    each choice of that free coordinate the others are set to a bound
    (depth-first, pruning assignments whose remaining sum cannot reach one).
    """
    n = len(intervals)
    if not sum(q.lo for q in intervals) <= 1 <= sum(q.hi for q in intervals):
        raise TreeValidationError("branch intervals admit no affine-vector")
    found: dict[tuple, None] = {}
    for free in range(n):
        others = [i for i in range(n) if i != free]
        lo_tail = [ZERO] * (len(others) + 1)
        hi_tail = [ZERO] * (len(others) + 1)
        for pos in range(len(others) - 1, -1, -1):
            lo_tail[pos] = lo_tail[pos + 1] + intervals[others[pos]].lo
            hi_tail[pos] = hi_tail[pos + 1] + intervals[others[pos]].hi
        fq = intervals[free]
        q = [ZERO] * n

        def rec(pos: int, acc: Fraction):
            rest = ONE - acc
            if rest - hi_tail[pos] > fq.hi or rest - lo_tail[pos] < fq.lo:
                return
            if pos == len(others):
                q[free] = rest
                found[tuple(q)] = None
                return
            i = others[pos]
            for bound in dict.fromkeys((intervals[i].lo, intervals[i].hi)):
                q[i] = bound
                rec(pos + 1, acc + bound)

        rec(0, ZERO)
    return list(found)


def _unit(space: StateSpace, s: str) -> tuple:
    v = [ZERO] * len(space)
    v[space.index(s)] = ONE
    return tuple(v)


def check_size(t, space: StateSpace) -> None:
    if len(space) > MAX_STATES:
        raise OracleSizeError(f"|states| = {len(space)} exceeds the oracle cap {MAX_STATES}")
    if depth(t) > MAX_DEPTH:
        raise OracleSizeError(f"depth {depth(t)} exceeds the oracle cap {MAX_DEPTH}")
    if leaf_count(t) > MAX_LEAVES:
        raise OracleSizeError(f"{leaf_count(t)} leaves exceed the oracle cap {MAX_LEAVES}")


def _mix(weights, vectors, m):
    out = [ZERO] * m
    for w, v in zip(weights, vectors):
        if w:
            for j, x in enumerate(v):
                if x:
                    out[j] += w * x
    return tuple(out)


def world_vertices(t, space: StateSpace, method: str = "hull") -> VertexSet:
    """Generators of the world of ``t`` (see module docstring for the two methods)."""
    return _world_vertices(t, space, method)


@functools.lru_cache(maxsize=128)
def _world_vertices(t, space: StateSpace, method: str) -> VertexSet:
    report = validate(t, space)
    if not report.ok:
        raise TreeValidationError("; ".join(report.messages()))
    check_size(t, space)
    m = len(space)
    memo: dict = {}

    def leaf_points(node):
        if isinstance(node, StateLeaf):
            return [_unit(space, node.state)]
        return [_unit(space, s) for s in space.ordered(node.states)]

    def product(node):
        if node in memo:
            return memo[node]
        if not isinstance(node, Star):
            pts = leaf_points(node)
        else:
            kids = [product(c) for c in node.children]
            qs = delta_vertices(node.intervals)
            count = len(qs)
            for k in kids:
                count *= len(k)
            if count > MAX_PRODUCT:
                raise OracleSizeError(f"product enumeration would visit {count} points")
            seen: dict = {}
            for q in qs:
                for combo in itertools.product(*kids):
                    seen[_mix(q, combo, m)] = None
            pts = list(seen)
        memo[node] = pts
        return pts

    def hull(node):
        if node in memo:
            return memo[node]
        if not isinstance(node, Star):
            pts = leaf_points(node)
        else:
            terms = []
            for q, child in node.branches:
                if q.hi == 0:
                    continue
                cpts = hull(child)
                scaled = [tuple(q.lo * x for x in p) for p in cpts]
                scaled += [tuple(q.hi * x for x in p) for p in cpts]
                terms.append(dedupe(scaled))
            terms.sort(key=len)
            acc = terms[0]
            for term in terms[1:]:
                acc = extreme_points(
                    [tuple(a + b for a, b in zip(s, u)) for s in acc for u in term]
                )
            pts = slice_sum_one(acc)
            if not pts:
                raise TreeValidationError("star world is empty")
        memo[node] = pts
        return pts

    if method == "hull":
        pts = hull(t)
    elif method == "product":
        pts = product(t)
    else:
        raise ValueError(f"unknown method {method!r}")
    return VertexSet(space, tuple(pts), contains_finite_leaf(t))


def member(x: Distribution, vs: VertexSet) -> bool:
    """Exact test of ``x`` in ``conv(vs)`` by phase-one simplex."""
    if x.probs in vs.points:
        return True
    return lp.convex_weights(vs.points, x.probs) is not None


def in_world(x: Distribution, t, space: StateSpace) -> bool:
    return member(x, world_vertices(t, space))


def subsumes_vertices(sup: VertexSet, sub: VertexSet) -> bool:
    return all(member(v, sup) for v in sub)


def subsumes_exact(sup, sub, space: StateSpace) -> bool:
    """Whether world(sup) contains world(sub).

    Trees with FiniteLeaf nodes are compared through their convex hulls.
    """
    return subsumes_vertices(world_vertices(sup, space), world_vertices(sub, space))


def counterexample_vertex(sup, sub, space: StateSpace) -> Distribution | None:
    """A vertex of ``sub`` outside ``sup``, or ``None`` when ``sup`` subsumes ``sub``."""
    big = world_vertices(sup, space)
    for v in world_vertices(sub, space):
        if not member(v, big):
            return v
    return None


def eu_range(vs: VertexSet, f: UtilityFunction) -> tuple[Fraction, Fraction]:
    """``[min, max]`` of expected utility over the generators, by enumeration."""
    values = [f.expectation(d) for d in vs]
    return min(values), max(values)


def sampled_action_image(
    action, t, space: StateSpace, n: int, rng: random.Random
) -> list[Distribution]:
    """``n`` true members ``lambda(P)`` of the image of ``world(t)`` under ``action``."""
    abstract: AbstractAction = to_abstract(action)
    out = []
    for _ in range(n):
        lam = sample_instantiation(abstract, rng)
        p = sample_member(t, space, rng)
        out.append(apply_primitive_dist(lam, p))
    return out
