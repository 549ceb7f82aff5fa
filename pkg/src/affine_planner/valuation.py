"""Expected-utility intervals of affine-trees and interval-dominance pruning."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .credal import EUInterval, UtilityFunction
from .errors import TreeValidationError
from .tree import FiniteLeaf, Star, StateLeaf, delta_feasible


def _greedy(intervals, values, minimize: bool) -> Fraction:
    """Optimize ``sum q_i * values_i`` over ``{q : q_i in intervals_i, sum q = 1}``.

    Start every weight at its lower bound, then hand the remaining mass to
    the cheapest (or dearest) children first, each up to its upper bound.
    """
    total = sum((q.lo * v for q, v in zip(intervals, values)), Fraction(0))
    slack = 1 - sum(q.lo for q in intervals)
    order = sorted(range(len(values)), key=lambda i: values[i], reverse=not minimize)
    for i in order:
        if not slack:
            break
        room = intervals[i].hi - intervals[i].lo
        step = room if room < slack else slack
        total += step * values[i]
        slack -= step
    return total


def eui(t, f: UtilityFunction) -> EUInterval:
    """The exact expected-utility interval of the world of ``t``.

    FiniteLeaf nodes are valued through their convex hull (which has the
    same interval, since expectation is linear); the result is flagged.
    """
    approx = False

    def rec(node):
        nonlocal approx
        if isinstance(node, StateLeaf):
            v = f(node.state)
            return v, v
        if not isinstance(node, Star):
            if not node.states:
                raise TreeValidationError("empty leaf set")
            if isinstance(node, FiniteLeaf):
                approx = True
            vals = [f(s) for s in node.states]
            return min(vals), max(vals)
        if not node.branches or not delta_feasible(node.intervals):
            raise TreeValidationError(f"infeasible star: {node!r}")
        kids = [rec(c) for c in node.children]
        lo = _greedy(node.intervals, [k[0] for k in kids], minimize=True)
        hi = _greedy(node.intervals, [k[1] for k in kids], minimize=False)
        return lo, hi

    lo, hi = rec(t)
    return EUInterval(lo, hi, hull_approximated=approx)


def dominates(winner: EUInterval, loser: EUInterval) -> bool:
    """Strict interval dominance: every value of ``winner`` beats every value of ``loser``."""
    return winner.lo > loser.hi


@dataclass(frozen=True)
class Elimination:
    loser: str
    winner: str


def eliminate_dominated(entries: Sequence[tuple[str, EUInterval]]):
    """Drop every entry dominated by another.

    Returns ``(survivors, log)``; survivors keep input order and the log
    records one dominating entry (the one with the highest lower bound) per
    eliminated plan.
    """
    survivors = []
    log = []
    for name, iv in entries:
        winners = [(other, w) for other, w in entries if other != name and dominates(w, iv)]
        if winners:
            best = max(winners, key=lambda e: (e[1].lo, e[0]))
            log.append(Elimination(name, best[0]))
        else:
            survivors.append((name, iv))
    return survivors, log
