"""Projection of actions over affine-trees, and multi-step plan projection.

Three rules, from tightest to coarsest:

``pr1``
    Replace each state leaf ``b`` by a star over the finite sets ``E_i(b)``.
    Exact but not closed: the result can hold FiniteLeaf nodes, so it is
    returned wrapped in :class:`FiniteProjection` and cannot be chained.
``pr2``
    As ``pr1`` with ``CH(E_i(b))`` leaves.  Chaining requires
    re-standardizing, which adds two levels per step.
``pr3``
    Works directly on ``CH(B)`` leaves, weighting branch ``i`` by
    ``S_B(C_i) * P_i``; one level per step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .actions import AbstractAction, Action, to_abstract, validate_abstract
from .credal import CERTAIN, NULL, UNIT, Interval, StateSpace, interval_mul
from .errors import ActionValidationError, NotStandardizableError, UnsupportedRuleError
from .tree import (
    FiniteLeaf,
    SetLeaf,
    Star,
    StateLeaf,
    contains_finite_leaf,
    delta_feasible,
    depth,
    is_standard,
    leaf_count,
    standardize,
)


def indicator_state(b: str, condition: Iterable[str]) -> int:
    return 1 if b in condition else 0


def indicator_set(states: Iterable[str], condition: Iterable[str]) -> Interval:
    """``[1, 1]`` if the condition covers every state, ``[0, 0]`` if none, else ``[0, 1]``."""
    states = frozenset(states)
    if not states:
        raise ValueError("indicator_set needs a nonempty state set")
    condition = frozenset(condition)
    if states <= condition:
        return CERTAIN
    if not states & condition:
        return NULL
    return UNIT


@dataclass(frozen=True)
class FiniteProjection:
    """Output of ``pr1``: may contain FiniteLeaf nodes, so it is not an affine-world."""

    tree: object

    def hull(self):
        """The convex hull of this world; structurally equal to the ``pr2`` result.

        Every leaf here came from an effect image, so each becomes a SetLeaf.
        """
        return _replace_leaves(
            self.tree,
            lambda leaf: SetLeaf((leaf.state,)) if isinstance(leaf, StateLeaf) else SetLeaf(leaf.states),
        )


def _checked(action: Action) -> AbstractAction:
    abstract = to_abstract(action)
    report = validate_abstract(abstract)
    if not report.ok:
        raise ActionValidationError("; ".join(report.messages()))
    return abstract


def _replace_leaves(t, fn):
    if isinstance(t, Star):
        return Star((q, _replace_leaves(c, fn)) for q, c in t.branches)
    return fn(t)


def _state_star(action: AbstractAction, b: str, leaf_kind) -> Star:
    branches = []
    for br in action.branches:
        q = br.prob if b in br.condition else NULL
        image = br.effect(b)
        if len(image) == 1:
            (s,) = image
            child = StateLeaf(s) if leaf_kind is FiniteLeaf else SetLeaf(image)
        else:
            child = leaf_kind(image)
        branches.append((q, child))
    return Star(branches)


def _require_standard(t) -> None:
    if not is_standard(t):
        raise NotStandardizableError("projection rule needs a standard tree (state leaves only)")


def pr1(action: Action, t, check: bool = True) -> FiniteProjection:
    abstract = _checked(action) if check else to_abstract(action)
    _require_standard(t)
    return FiniteProjection(_replace_leaves(t, lambda leaf: _state_star(abstract, leaf.state, FiniteLeaf)))


def pr2(action: Action, t, check: bool = True):
    abstract = _checked(action) if check else to_abstract(action)
    _require_standard(t)
    return _replace_leaves(t, lambda leaf: _state_star(abstract, leaf.state, SetLeaf))


def pr3_leaf(action: AbstractAction, states: frozenset) -> Star:
    """The star that replaces a ``CH(B)`` leaf.

    Branches whose condition misses ``B`` entirely would carry weight
    ``[0, 0]`` and an empty leaf; they are dropped.
    """
    branches = []
    for br in action.branches:
        hit = states & br.condition
        if not hit:
            continue
        q = interval_mul(indicator_set(states, br.condition), br.prob)
        branches.append((q, SetLeaf(br.effect.image(hit))))
    star = Star(branches)
    assert branches and delta_feasible(star.intervals), "pr3 produced an infeasible star"
    return star


def pr3(action: Action, t, check: bool = True):
    abstract = _checked(action) if check else to_abstract(action)
    if contains_finite_leaf(t):
        raise NotStandardizableError("pr3 cannot project over FiniteLeaf nodes")

    def leaf(node):
        states = frozenset((node.state,)) if isinstance(node, StateLeaf) else node.states
        return pr3_leaf(abstract, states)

    return _replace_leaves(t, leaf)


@dataclass(frozen=True)
class Plan:
    name: str
    steps: tuple
    step_names: tuple

    def __init__(self, name: str, steps: Sequence[Action], step_names: Sequence[str] | None = None):
        if not steps:
            raise ValueError("a plan needs at least one step")
        if step_names is None:
            step_names = [f"step{i + 1}" for i in range(len(steps))]
        if len(step_names) != len(steps):
            raise ValueError("one name per step")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "steps", tuple(steps))
        object.__setattr__(self, "step_names", tuple(step_names))


@dataclass(frozen=True)
class StepMetrics:
    step: int
    depth: int
    leaves: int


@dataclass(frozen=True)
class ProjectionResult:
    tree: object
    metrics: tuple = field(default_factory=tuple)


def project_plan(plan: Plan, w0, rule: int = 3, space: StateSpace | None = None) -> ProjectionResult:
    """Fold a projection rule over the plan's steps.

    Rule 2 standardizes before every step (so its output is standard too);
    rule 1 is refused because its output cannot be projected again.
    """
    if rule == 1:
        raise UnsupportedRuleError("rule 1 is not closed and cannot project a plan")
    if rule not in (2, 3):
        raise UnsupportedRuleError(f"unknown projection rule {rule!r}")
    if contains_finite_leaf(w0):
        raise NotStandardizableError("initial world contains FiniteLeaf nodes")
    t = w0
    metrics = []
    for i, step in enumerate(plan.steps):
        step_space = space or step.space
        if rule == 2:
            t = standardize(pr2(step, standardize(t, step_space)), step_space)
        else:
            t = pr3(step, t)
        metrics.append(StepMetrics(i + 1, depth(t), leaf_count(t)))
    return ProjectionResult(t, tuple(metrics))
