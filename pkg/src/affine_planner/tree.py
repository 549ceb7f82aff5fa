"""Affine-trees: interval-weighted trees that denote convex sets of distributions.

A tree is one of four immutable node kinds:

* :class:`StateLeaf` -- the point mass on one state;
* :class:`SetLeaf` -- ``CH(B)``, every distribution supported inside ``B``;
* :class:`FiniteLeaf` -- the finite, non-convex set ``{delta_b : b in B}``
  (only produced by the first projection rule);
* :class:`Star` -- interval-weighted mixtures of its children's worlds.

Structural operations here (flatten, merges, standardize) never need the
state space; the ones that impose an order on states accept an optional
:class:`~affine_planner.credal.StateSpace` and otherwise sort by name.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .credal import (
    CERTAIN,
    ONE,
    UNIT,
    ZERO,
    Distribution,
    Interval,
    Number,
    StateSpace,
    dist_mix,
    interval_hull,
    interval_mul,
    interval_sum,
    parse_rational,
)
from .errors import Issue, NotStandardizableError, TreeValidationError, ValidationReport


@dataclass(frozen=True)
class StateLeaf:
    state: str

    def __repr__(self) -> str:
        return f"StateLeaf({self.state!r})"


@dataclass(frozen=True)
class SetLeaf:
    states: frozenset

    def __init__(self, states: Iterable[str]):
        object.__setattr__(self, "states", frozenset(states))

    def __repr__(self) -> str:
        return f"SetLeaf({{{', '.join(sorted(self.states))}}})"


@dataclass(frozen=True)
class FiniteLeaf:
    states: frozenset

    def __init__(self, states: Iterable[str]):
        object.__setattr__(self, "states", frozenset(states))

    def __repr__(self) -> str:
        return f"FiniteLeaf({{{', '.join(sorted(self.states))}}})"


@dataclass(frozen=True)
class Star:
    branches: tuple

    def __init__(self, branches: Iterable[tuple]):
        bs = tuple((Interval.coerce(q), child) for q, child in branches)
        object.__setattr__(self, "branches", bs)

    @property
    def intervals(self) -> tuple[Interval, ...]:
        return tuple(q for q, _ in self.branches)

    @property
    def children(self) -> tuple:
        return tuple(c for _, c in self.branches)

    @property
    def arity(self) -> int:
        return len(self.branches)

    def __repr__(self) -> str:
        inner = ", ".join(f"({q}, {c!r})" for q, c in self.branches)
        return f"Star([{inner}])"


AffineTree = Union[StateLeaf, SetLeaf, FiniteLeaf, Star]
Leaf = Union[StateLeaf, SetLeaf, FiniteLeaf]


def is_leaf(t) -> bool:
    return not isinstance(t, Star)


def leaf_states(leaf: Leaf) -> frozenset:
    if isinstance(leaf, StateLeaf):
        return frozenset((leaf.state,))
    return leaf.states


def delta_feasible(intervals: Sequence[Interval]) -> bool:
    """Whether ``{q : q_i in Q_i, sum q = 1}`` is nonempty."""
    return sum(q.lo for q in intervals) <= 1 <= sum(q.hi for q in intervals)


# -- validation -------------------------------------------------------------


def validate(t, space: StateSpace | None = None) -> ValidationReport:
    """Check every node; report each violating node by its branch-index path."""
    issues: list[Issue] = []

    def visit(node, path):
        if isinstance(node, StateLeaf):
            if space is not None and node.state not in space:
                issues.append(Issue(path, f"unknown state {node.state!r}"))
        elif isinstance(node, (SetLeaf, FiniteLeaf)):
            kind = type(node).__name__
            if not node.states:
                issues.append(Issue(path, f"{kind} with empty state set"))
            if space is not None:
                unknown = sorted(s for s in node.states if s not in space)
                if unknown:
                    issues.append(Issue(path, f"{kind} mentions unknown states {unknown}"))
        elif isinstance(node, Star):
            if not node.branches:
                issues.append(Issue(path, "star without branches"))
                return
            lo = sum(q.lo for q in node.intervals)
            hi = sum(q.hi for q in node.intervals)
            if not lo <= 1 <= hi:
                issues.append(
                    Issue(path, f"infeasible branch weights: sum lo = {lo}, sum hi = {hi}")
                )
            for i, (_, child) in enumerate(node.branches):
                visit(child, path + (i,))
        else:
            issues.append(Issue(path, f"not an affine-tree node: {node!r}"))

    visit(t, ())
    return ValidationReport(tuple(issues))


def require_valid(t, space: StateSpace | None = None) -> None:
    report = validate(t, space)
    if not report.ok:
        raise TreeValidationError("; ".join(report.messages()))


# -- metrics ------------------------------------------------------------------


def depth(t) -> int:
    if isinstance(t, Star):
        return 1 + max(depth(c) for c in t.children)
    return 0


def leaf_count(t) -> int:
    if isinstance(t, Star):
        return sum(leaf_count(c) for c in t.children)
    return 1


def leaves(t) -> list:
    if isinstance(t, Star):
        return [leaf for c in t.children for leaf in leaves(c)]
    return [t]


def contains_finite_leaf(t) -> bool:
    if isinstance(t, Star):
        return any(contains_finite_leaf(c) for c in t.children)
    return isinstance(t, FiniteLeaf)


def is_standard(t) -> bool:
    if isinstance(t, Star):
        return all(is_standard(c) for c in t.children)
    return isinstance(t, StateLeaf)


# -- constructors ---------------------------------------------------------------


@dataclass(frozen=True)
class MassAssignment:
    """Dempster-Shafer basic probability assignment over named focal sets."""

    focals: tuple

    def __init__(self, focals: Iterable[tuple[Iterable[str], Number]]):
        fs = tuple((frozenset(b), parse_rational(m)) for b, m in focals)
        if not fs:
            raise ValueError("mass assignment needs at least one focal set")
        if any(not b for b, _ in fs):
            raise ValueError("focal sets must be nonempty")
        if len({b for b, _ in fs}) != len(fs):
            raise ValueError("focal sets must be distinct")
        if any(m < 0 for _, m in fs):
            raise ValueError("masses must be nonnegative")
        if sum(m for _, m in fs) != 1:
            raise ValueError(f"masses sum to {sum(m for _, m in fs)}, not 1")
        object.__setattr__(self, "focals", fs)

    def belief(self, subset: Iterable[str]) -> Fraction:
        subset = frozenset(subset)
        return sum((m for b, m in self.focals if b <= subset), ZERO)


@dataclass(frozen=True)
class IntervalMassAssignment:
    focals: tuple

    def __init__(self, focals: Iterable[tuple[Iterable[str], object]]):
        fs = tuple((frozenset(b), Interval.coerce(m)) for b, m in focals)
        if not fs:
            raise ValueError("interval mass assignment needs at least one focal set")
        if any(not b for b, _ in fs):
            raise ValueError("focal sets must be nonempty")
        if len({b for b, _ in fs}) != len(fs):
            raise ValueError("focal sets must be distinct")
        if not delta_feasible([m for _, m in fs]):
            raise ValueError("interval masses admit no assignment summing to 1")
        object.__setattr__(self, "focals", fs)


def from_distribution(p: Distribution) -> Star:
    """One point-interval branch per state of positive mass."""
    return Star(
        (Interval.point(q), StateLeaf(s)) for s, q in zip(p.space.states, p.probs) if q
    )


def from_belief(m: MassAssignment) -> Star:
    return Star((Interval.point(mass), SetLeaf(b)) for b, mass in m.focals)


def from_ima(ima: IntervalMassAssignment) -> Star:
    return Star((q, SetLeaf(b)) for b, q in ima.focals)


# -- lemma transforms ----------------------------------------------------------


def flatten(t) -> Star:
    """Replace every root-to-leaf path by one branch weighted by the path product."""
    paths: list[tuple[Interval, object]] = []

    def walk(node, acc: Interval):
        if isinstance(node, Star):
            for q, child in node.branches:
                walk(child, interval_mul(acc, q))
        else:
            paths.append((acc, node))

    walk(t, CERTAIN)
    return Star(paths)


def _is_set_type(node) -> bool:
    return isinstance(node, (StateLeaf, SetLeaf))


def conv_node(children: Sequence) -> object:
    """A node whose world is the convex hull of the union of the children's worlds.

    Set-type leaves collapse to the union of their state sets; anything else is
    wrapped in an all-``[0, 1]`` star.
    """
    distinct: list = []
    for c in children:
        if c not in distinct:
            distinct.append(c)
    if len(distinct) == 1:
        return distinct[0]
    if all(_is_set_type(c) for c in distinct):
        return SetLeaf(frozenset().union(*(leaf_states(c) for c in distinct)))
    return Star((UNIT, c) for c in distinct)


def merge_branches(s: Star, indices: Iterable[int]) -> Star:
    """Merge the branches at ``indices`` (0-based) into one branch at the first position."""
    idx = sorted(set(indices))
    if len(idx) < 2:
        raise ValueError("need at least two branch indices to merge")
    if idx[0] < 0 or idx[-1] >= s.arity:
        raise IndexError(f"branch indices {idx} out of range for a {s.arity}-branch star")
    chosen = set(idx)
    merged = (
        interval_sum(s.branches[j][0] for j in idx),
        conv_node([s.branches[j][1] for j in idx]),
    )
    out = []
    for i, br in enumerate(s.branches):
        if i == idx[0]:
            out.append(merged)
        elif i not in chosen:
            out.append(br)
    return Star(out)


def merge_stars(stars: Sequence[Star]) -> Star:
    """Branchwise interval hull and leaf hull of equal-arity stars."""
    stars = list(stars)
    if len(stars) < 2:
        raise ValueError("need at least two stars")
    if not all(isinstance(s, Star) for s in stars):
        raise TypeError("merge_stars takes stars only")
    n = stars[0].arity
    if any(s.arity != n for s in stars):
        raise ValueError(f"arity mismatch: {[s.arity for s in stars]}")
    return Star(
        (
            interval_hull(s.branches[i][0] for s in stars),
            conv_node([s.branches[i][1] for s in stars]),
        )
        for i in range(n)
    )


def _order(states: Iterable[str], space: StateSpace | None) -> list[str]:
    if space is None:
        return sorted(states)
    return list(space.ordered(states))


def standardize(t, space: StateSpace | None = None):
    """Expand every ``CH(B)`` leaf into an all-``[0, 1]`` star over the states of ``B``."""
    if isinstance(t, Star):
        return Star((q, standardize(c, space)) for q, c in t.branches)
    if isinstance(t, StateLeaf):
        return t
    if isinstance(t, FiniteLeaf):
        raise NotStandardizableError("finite (non-convex) leaves cannot be standardized")
    if not t.states:
        raise TreeValidationError("empty SetLeaf")
    if len(t.states) == 1:
        (s,) = t.states
        return StateLeaf(s)
    return Star((UNIT, StateLeaf(s)) for s in _order(t.states, space))


def hull_leaves(t):
    """Replace every FiniteLeaf by the SetLeaf of its convex hull."""
    if isinstance(t, Star):
        return Star((q, hull_leaves(c)) for q, c in t.branches)
    if isinstance(t, FiniteLeaf):
        return SetLeaf(t.states)
    return t


# -- canonical form -------------------------------------------------------------


def _state_key(s: str, space: StateSpace | None):
    return space.index(s) if space is not None else s


def canonical_key(t, space: StateSpace | None = None):
    if isinstance(t, StateLeaf):
        return (0, (_state_key(t.state, space),))
    if isinstance(t, (SetLeaf, FiniteLeaf)):
        tag = 1 if isinstance(t, SetLeaf) else 2
        return (tag, tuple(sorted(_state_key(s, space) for s in t.states)))
    return (3, tuple(sorted((canonical_key(c, space), q.lo, q.hi) for q, c in t.branches)))


def canonicalize(t, space: StateSpace | None = None):
    """Sort branches by (child canonical form, interval); the world is unchanged."""
    if not isinstance(t, Star):
        return t
    kids = [(q, canonicalize(c, space)) for q, c in t.branches]
    kids.sort(key=lambda br: (canonical_key(br[1], space), br[0].lo, br[0].hi))
    return Star(kids)


# -- sampling -------------------------------------------------------------------

_DENOMS = (1, 2, 3, 4, 5, 6, 8, 10, 12)


def random_fraction(rng: random.Random, lo: Fraction = ZERO, hi: Fraction = ONE) -> Fraction:
    """A random rational in ``[lo, hi]`` on a small-denominator grid; endpoints are likely."""
    r = rng.random()
    if r < 0.15:
        return lo
    if r < 0.3:
        return hi
    d = rng.choice(_DENOMS)
    return lo + (hi - lo) * Fraction(rng.randint(0, d), d)


def sample_delta(intervals: Sequence[Interval], rng: random.Random) -> list[Fraction]:
    """Draw a point of ``{q : q_i in Q_i, sum q = 1}``.

    Each coordinate is drawn inside its interval, then the sum is pushed to one
    by moving coordinates toward their bounds in random order.
    """
    if not delta_feasible(intervals):
        raise TreeValidationError("cannot sample from an empty branch-weight polytope")
    q = [random_fraction(rng, iv.lo, iv.hi) for iv in intervals]
    slack = ONE - sum(q)
    order = list(range(len(q)))
    rng.shuffle(order)
    for i in order:
        if slack > 0:
            step = min(slack, intervals[i].hi - q[i])
        elif slack < 0:
            step = -min(-slack, q[i] - intervals[i].lo)
        else:
            break
        q[i] += step
        slack -= step
    assert slack == 0
    return q


def sample_member(t, space: StateSpace, rng: random.Random) -> Distribution:
    """Forward-sample one distribution from the world of ``t``.

    The sampling law is unspecified; only membership is guaranteed.  A
    FiniteLeaf contributes one of its point masses.
    """
    if isinstance(t, StateLeaf):
        return Distribution.point(space, t.state)
    if isinstance(t, FiniteLeaf):
        return Distribution.point(space, rng.choice(_order(t.states, space)))
    if isinstance(t, SetLeaf):
        support = _order(t.states, space)
        if not support:
            raise TreeValidationError("empty SetLeaf")
        if rng.random() < 0.25:
            return Distribution.point(space, rng.choice(support))
        d = rng.choice(_DENOMS)
        raw = [rng.randint(0, d) for _ in support]
        if not any(raw):
            raw[rng.randrange(len(raw))] = 1
        total = sum(raw)
        return Distribution.from_mapping(
            space, {s: Fraction(w, total) for s, w in zip(support, raw)}
        )
    q = sample_delta(t.intervals, rng)
    members = [sample_member(c, space, rng) for c in t.children]
    return dist_mix(q, members)
