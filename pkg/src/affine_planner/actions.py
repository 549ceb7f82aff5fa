"""Primitive and abstract actions.

A primitive action is a list of branches ``<C, p, e>``: a condition (a set of
states), a probability and a state-to-state effect.  An abstract action
widens ``p`` to an interval and ``e`` to a state-to-set-of-states effect.
Conditions are explicit state sets, never formulas.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from . import lp
from .credal import ONE, ZERO, Distribution, Interval, Number, StateSpace, parse_rational
from .errors import InstantiationError, Issue, ValidationReport


@dataclass(frozen=True)
class PrimitiveEffect:
    """Total map state -> state."""

    table: Mapping[str, str]

    def __call__(self, s: str) -> str:
        return self.table[s]

    @classmethod
    def identity(cls, space: StateSpace) -> "PrimitiveEffect":
        return cls({s: s for s in space})

    @classmethod
    def constant(cls, space: StateSpace, target: str) -> "PrimitiveEffect":
        return cls({s: target for s in space})

    def __hash__(self):
        return hash(tuple(sorted(self.table.items())))


@dataclass(frozen=True)
class AbstractEffect:
    """Total map state -> nonempty set of states."""

    table: Mapping[str, frozenset]

    def __init__(self, table: Mapping[str, Iterable[str]]):
        object.__setattr__(
            self, "table", {s: frozenset(v) for s, v in table.items()}
        )

    def __call__(self, s: str) -> frozenset:
        return self.table[s]

    def image(self, states: Iterable[str]) -> frozenset:
        """Pointwise union of the images of ``states``."""
        return frozenset().union(*(self.table[s] for s in states))

    @classmethod
    def identity(cls, space: StateSpace) -> "AbstractEffect":
        return cls({s: (s,) for s in space})

    @classmethod
    def vacuous(cls, space: StateSpace) -> "AbstractEffect":
        return cls({s: space.states for s in space})

    @classmethod
    def lift(cls, e: PrimitiveEffect) -> "AbstractEffect":
        return cls({s: (t,) for s, t in e.table.items()})

    @property
    def is_deterministic(self) -> bool:
        return all(len(v) == 1 for v in self.table.values())

    def __hash__(self):
        return hash(tuple(sorted((s, tuple(sorted(v))) for s, v in self.table.items())))


@dataclass(frozen=True)
class PrimitiveBranch:
    condition: frozenset
    prob: Fraction
    effect: PrimitiveEffect

    def __init__(self, condition: Iterable[str], prob: Number, effect: PrimitiveEffect):
        object.__setattr__(self, "condition", frozenset(condition))
        object.__setattr__(self, "prob", parse_rational(prob))
        object.__setattr__(self, "effect", effect)


@dataclass(frozen=True)
class AbstractBranch:
    condition: frozenset
    prob: Interval
    effect: AbstractEffect

    def __init__(self, condition: Iterable[str], prob, effect: AbstractEffect):
        object.__setattr__(self, "condition", frozenset(condition))
        object.__setattr__(self, "prob", Interval.coerce(prob))
        object.__setattr__(self, "effect", effect)


@dataclass(frozen=True)
class PrimitiveAction:
    space: StateSpace
    branches: tuple

    def __init__(self, space: StateSpace, branches: Iterable[PrimitiveBranch]):
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "branches", tuple(branches))


@dataclass(frozen=True)
class AbstractAction:
    space: StateSpace
    branches: tuple

    def __init__(self, space: StateSpace, branches: Iterable[AbstractBranch]):
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "branches", tuple(branches))


Action = Union[PrimitiveAction, AbstractAction]


def to_abstract(action: Action) -> AbstractAction:
    """View a primitive action as the abstract action with point intervals."""
    if isinstance(action, AbstractAction):
        return action
    return AbstractAction(
        action.space,
        (
            AbstractBranch(b.condition, Interval.point(b.prob), AbstractEffect.lift(b.effect))
            for b in action.branches
        ),
    )


def _coverage_issues(action: Action) -> list[Issue]:
    space = action.space
    issues = []
    if not action.branches:
        return [Issue((), "action has no branches")]
    for i, br in enumerate(action.branches):
        unknown = sorted(s for s in br.condition if s not in space)
        if unknown:
            issues.append(Issue(("branch", i), f"condition mentions unknown states {unknown}"))
        missing = [s for s in space if s not in br.effect.table]
        if missing:
            issues.append(Issue(("branch", i), f"effect undefined on states {missing}"))
        for s, img in br.effect.table.items():
            targets = [img] if isinstance(img, str) else list(img)
            if not targets:
                issues.append(Issue(("branch", i), f"effect maps {s!r} to the empty set"))
            bad = [t for t in targets if t not in space]
            if bad:
                issues.append(Issue(("branch", i), f"effect maps {s!r} to unknown states {bad}"))
    covered = frozenset().union(*(b.condition for b in action.branches))
    for s in space:
        if s not in covered:
            issues.append(Issue(("state", s), "not covered by any condition (conditions not exhaustive)"))
    return issues


def validate_primitive(action: PrimitiveAction) -> ValidationReport:
    """Exhaustiveness, effect totality, and per-state probability sums equal to one."""
    issues = _coverage_issues(action)
    for i, br in enumerate(action.branches):
        if not 0 <= br.prob <= 1:
            issues.append(Issue(("branch", i), f"probability {br.prob} outside [0, 1]"))
    for s in action.space:
        total = sum((br.prob for br in action.branches if s in br.condition), ZERO)
        if s in frozenset().union(*(b.condition for b in action.branches)) and total != 1:
            issues.append(Issue(("state", s), f"branch probabilities sum to {total}, not 1"))
    return ValidationReport(tuple(issues))


def apply_primitive_state(action: PrimitiveAction, b: str) -> Distribution:
    space = action.space
    probs = [ZERO] * len(space)
    for br in action.branches:
        if b in br.condition:
            probs[space.index(br.effect(b))] += br.prob
    return Distribution(space, probs)


def apply_primitive_dist(action: PrimitiveAction, p: Distribution) -> Distribution:
    space = action.space
    probs = [ZERO] * len(space)
    for b, mass in zip(space.states, p.probs):
        if not mass:
            continue
        for br in action.branches:
            if b in br.condition:
                probs[space.index(br.effect(b))] += mass * br.prob
    return Distribution(space, probs)


def normalize_conditions(action: Action) -> Action:
    """Rewrite the branches over the classes of states that satisfy the same conditions.

    Output conditions are mutually exclusive and jointly exhaustive; each
    class gets a copy of every original branch whose condition contains it.
    """
    space = action.space
    classes: dict[frozenset, list[str]] = {}
    for s in space:
        signature = frozenset(i for i, br in enumerate(action.branches) if s in br.condition)
        classes.setdefault(signature, []).append(s)
    out = []
    for signature, members in classes.items():
        cls_states = frozenset(members)
        for i in sorted(signature):
            br = action.branches[i]
            out.append(type(br)(cls_states, br.prob, br.effect))
    return type(action)(space, out)


def effect_instantiates(e: PrimitiveEffect, big: AbstractEffect) -> bool:
    return set(e.table) == set(big.table) and all(e(s) in big(s) for s in big.table)


def action_instantiates(small: PrimitiveAction, big: AbstractAction) -> bool:
    if len(small.branches) != len(big.branches):
        return False
    for b1, b2 in zip(small.branches, big.branches):
        if b1.condition != b2.condition:
            return False
        if b1.prob not in b2.prob:
            return False
        if not effect_instantiates(b1.effect, b2.effect):
            return False
    return validate_primitive(small).ok


def _probability_system(action: AbstractAction):
    """Equality-form system for the instantiable probability vectors.

    Variables are ``u_i = p_i - lo_i`` (n of them) and slacks ``s_i`` with
    ``u_i + s_i = hi_i - lo_i``; each state contributes
    ``sum_{i: b in C_i} u_i = 1 - sum_{i: b in C_i} lo_i``.
    """
    n = len(action.branches)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i, br in enumerate(action.branches):
        row = [ZERO] * (2 * n)
        row[i] = ONE
        row[n + i] = ONE
        rows.append(row)
        rhs.append(br.prob.hi - br.prob.lo)
    for s in action.space:
        row = [ZERO] * (2 * n)
        lo_sum = ZERO
        for i, br in enumerate(action.branches):
            if s in br.condition:
                row[i] = ONE
                lo_sum += br.prob.lo
        rows.append(row)
        rhs.append(ONE - lo_sum)
    return rows, rhs


def validate_abstract(action: AbstractAction) -> ValidationReport:
    """Exhaustiveness, effect sanity, and existence of a probability instantiation."""
    issues = _coverage_issues(action)
    if issues:
        return ValidationReport(tuple(issues))
    rows, rhs = _probability_system(action)
    if lp.feasible_point(rows, rhs) is None:
        for s in action.space:
            idx = [i for i, br in enumerate(action.branches) if s in br.condition]
            lo = sum((action.branches[i].prob.lo for i in idx), ZERO)
            hi = sum((action.branches[i].prob.hi for i in idx), ZERO)
            if not lo <= 1 <= hi:
                issues.append(
                    Issue(("state", s), f"infeasible: probabilities range over [{lo}, {hi}], cannot sum to 1")
                )
        if not issues:
            issues.append(
                Issue((), "infeasible: no probability vector satisfies every state's sum-to-one constraint")
            )
    return ValidationReport(tuple(issues))


def probability_vertex(action: AbstractAction, objective: Sequence[Fraction]) -> list[Fraction] | None:
    """A vertex of the instantiable probability polytope minimizing ``objective . p``."""
    n = len(action.branches)
    rows, rhs = _probability_system(action)
    cost = list(objective) + [ZERO] * n
    u = lp.minimize(rows, rhs, cost)
    if u is None:
        return None
    return [br.prob.lo + u[i] for i, br in enumerate(action.branches)]


def sample_instantiation(action: AbstractAction, rng: random.Random) -> PrimitiveAction:
    """A random primitive action instantiating ``action``.

    Probabilities are a random vertex of the feasible polytope, or a random
    convex mix of two vertices; every effect image is picked uniformly.
    """
    n = len(action.branches)

    def objective():
        return [Fraction(rng.randint(-9, 9)) for _ in range(n)]

    p = probability_vertex(action, objective())
    if p is None:
        raise InstantiationError("abstract action admits no instantiation")
    if rng.random() < 0.6:
        p2 = probability_vertex(action, objective())
        d = rng.choice((2, 3, 4, 5))
        alpha = Fraction(rng.randint(0, d), d)
        p = [alpha * a + (1 - alpha) * b for a, b in zip(p, p2)]
    space = action.space
    branches = []
    for br, prob in zip(action.branches, p):
        table = {s: rng.choice(space.ordered(br.effect(s))) for s in space}
        branches.append(PrimitiveBranch(br.condition, prob, PrimitiveEffect(table)))
    return PrimitiveAction(space, branches)


def effect_union(e1: AbstractEffect, e2: AbstractEffect) -> AbstractEffect:
    return AbstractEffect({s: e1(s) | e2(s) for s in e1.table})


def effect_compose(e1: AbstractEffect, e2: AbstractEffect) -> AbstractEffect:
    """``(e2 o e1)(s)``: everything ``e2`` can reach from anything ``e1`` reaches from ``s``."""
    return AbstractEffect({s: e2.image(e1(s)) for s in e1.table})
