"""Action abstraction: bundle, combine and compose branches, and the procedures built on them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .actions import (
    AbstractAction,
    AbstractBranch,
    Action,
    effect_compose,
    effect_union,
    normalize_conditions,
    to_abstract,
    validate_abstract,
)
from .credal import ZERO, Interval, interval_mul, interval_sum
from .errors import ActionValidationError, PairingError


def _union_effect(branches: Sequence[AbstractBranch]):
    return reduce(effect_union, (b.effect for b in branches))


def _need_two(branches: Sequence[AbstractBranch], what: str) -> None:
    if len(branches) < 2:
        raise ValueError(f"{what} needs at least two branches")


def bundle_branches(branches: Sequence[AbstractBranch]) -> AbstractBranch:
    """One branch standing for "one of these fired".

    Equal conditions add the intervals; otherwise the lower bound drops to
    the smallest single lower bound.  Sums are clamped into [0, 1].
    """
    _need_two(branches, "bundle")
    condition = frozenset().union(*(b.condition for b in branches))
    upper = interval_sum(b.prob for b in branches)
    if all(b.condition == branches[0].condition for b in branches):
        prob = upper
    else:
        prob = Interval(min(b.prob.lo for b in branches), upper.hi)
    return AbstractBranch(condition, prob, _union_effect(branches))


def combine_branches(branches: Sequence[AbstractBranch]) -> AbstractBranch:
    """One branch standing for "whichever of these actions was taken"."""
    _need_two(branches, "combine")
    condition = frozenset().union(*(b.condition for b in branches))
    hi = max(b.prob.hi for b in branches)
    if all(b.condition == branches[0].condition for b in branches):
        lo = min(b.prob.lo for b in branches)
    else:
        lo = ZERO
    return AbstractBranch(condition, Interval(lo, hi), _union_effect(branches))


def compose_branches(first: AbstractBranch, second: AbstractBranch) -> AbstractBranch | None:
    """``first`` followed by ``second``; ``None`` when no state can fire both."""
    condition = frozenset(
        b for b in first.condition if first.effect(b) & second.condition
    )
    if not condition:
        return None
    return AbstractBranch(
        condition,
        interval_mul(first.prob, second.prob),
        effect_compose(first.effect, second.effect),
    )


@dataclass(frozen=True)
class BranchGroup:
    """A partition of branch indices ``0..n-1`` into nonempty groups."""

    groups: tuple

    def __init__(self, groups: Iterable[Iterable[int]], n: int | None = None):
        gs = tuple(tuple(sorted(set(g))) for g in groups)
        object.__setattr__(self, "groups", gs)
        if n is not None:
            self.check(n)

    def check(self, n: int) -> None:
        seen: list[int] = []
        for g in self.groups:
            if not g:
                raise ValueError("empty branch group")
            seen.extend(g)
        if sorted(seen) != list(range(n)):
            raise ValueError(f"groups {self.groups} do not partition branches 0..{n - 1}")


def _checked(action: AbstractAction) -> AbstractAction:
    report = validate_abstract(action)
    if not report.ok:
        raise ActionValidationError("; ".join(report.messages()))
    return action


def _assert_exhaustive(action: AbstractAction) -> None:
    covered = frozenset().union(*(b.condition for b in action.branches))
    assert covered == action.space.all, "abstraction lost exhaustiveness"


def intra_abstract(action: Action, groups) -> AbstractAction:
    """Bundle each group of branches into one; groups are ordered by their first index."""
    action = to_abstract(action)
    if not isinstance(groups, BranchGroup):
        groups = BranchGroup(groups)
    groups.check(len(action.branches))
    out = []
    for g in sorted(groups.groups):
        brs = [action.branches[i] for i in g]
        out.append(brs[0] if len(brs) == 1 else bundle_branches(brs))
    result = AbstractAction(action.space, out)
    _assert_exhaustive(result)
    return _checked(result)


def _by_condition(action: AbstractAction) -> dict:
    classes: dict = {}
    for br in action.branches:
        classes.setdefault(br.condition, []).append(br)
    return classes


def inter_abstract(actions: Sequence[Action]) -> AbstractAction:
    """Combine alternative actions branch by branch.

    Every action is first rewritten over mutually exclusive conditions; the
    k-th branch on a condition class is paired with the k-th branch on the
    same class in every other action.  Mismatched structures are refused.
    """
    if not actions:
        raise ValueError("inter_abstract needs at least one action")
    normalized = [normalize_conditions(to_abstract(a)) for a in actions]
    space = normalized[0].space
    if any(a.space != space for a in normalized):
        raise PairingError("actions are over different state spaces")
    if len(normalized) == 1:
        return _checked(normalized[0])
    tables = [_by_condition(a) for a in normalized]
    shape = {c: len(v) for c, v in tables[0].items()}
    for k, t in enumerate(tables[1:], start=2):
        other = {c: len(v) for c, v in t.items()}
        if other != shape:
            raise PairingError(
                f"action {k} has branch structure {_describe(other, space)}, "
                f"action 1 has {_describe(shape, space)}"
            )
    out = []
    for cond, brs in tables[0].items():
        for j in range(len(brs)):
            out.append(combine_branches([t[cond][j] for t in tables]))
    result = AbstractAction(space, out)
    _assert_exhaustive(result)
    return _checked(result)


def _describe(shape: dict, space) -> str:
    parts = [f"{{{','.join(space.ordered(c))}}}x{n}" for c, n in shape.items()]
    return "[" + " ".join(parts) + "]"


def seq_abstract(first: Action, second: Action) -> AbstractAction:
    """One action standing for ``first`` then ``second``: all branch pairs, empty ones dropped.

    The result is not checked for instantiability; call ``validate_abstract``.
    """
    a1, a2 = to_abstract(first), to_abstract(second)
    if a1.space != a2.space:
        raise PairingError("actions are over different state spaces")
    out = []
    for b1 in a1.branches:
        for b2 in a2.branches:
            br = compose_branches(b1, b2)
            if br is not None:
                out.append(br)
    result = AbstractAction(a1.space, out)
    _assert_exhaustive(result)
    return result
