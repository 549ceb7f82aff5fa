"""Exact linear feasibility and optimization over rationals.

Rows are scaled to integers and handed to the integer-pivoting simplex
kernel; answers come back as ``Fraction``s.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from . import _kernels


def _row_to_ints(row: Sequence[Fraction], rhs: Fraction) -> tuple[list[int], int]:
    scale = 1
    for x in row:
        scale = lcm(scale, Fraction(x).denominator)
    scale = lcm(scale, Fraction(rhs).denominator)
    return [int(Fraction(x) * scale) for x in row], int(Fraction(rhs) * scale)


def _scaled(rows, rhs):
    a, b = [], []
    for row, r in zip(rows, rhs):
        ir, ib = _row_to_ints(row, r)
        a.append(ir)
        b.append(ib)
    return a, b


def feasible_point(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """A basic ``x >= 0`` with ``rows . x = rhs``, or ``None`` when infeasible."""
    a, b = _scaled(rows, rhs)
    status, num, den = _kernels.simplex(a, b, None)
    if status != _kernels.OPTIMAL:
        return None
    return [Fraction(v, den) for v in num]


def minimize(rows, rhs, cost):
    """An optimal basic solution of ``min cost . x`` s.t. ``rows . x = rhs, x >= 0``.

    Returns ``None`` when infeasible; raises when unbounded.
    """
    a, b = _scaled(rows, rhs)
    scale = 1
    for x in cost:
        scale = lcm(scale, Fraction(x).denominator)
    c = [int(Fraction(x) * scale) for x in cost]
    status, num, den = _kernels.simplex(a, b, c)
    if status == _kernels.INFEASIBLE:
        return None
    if status == _kernels.UNBOUNDED:
        raise ArithmeticError("objective is unbounded below")
    return [Fraction(v, den) for v in num]


def convex_weights(points: Sequence[Sequence[Fraction]], x: Sequence[Fraction]):
    """Weights ``w >= 0`` with ``sum w = 1`` and ``sum w_j points_j = x``, or ``None``."""
    if not points:
        return None
    dim = len(x)
    rows = [[p[s] for p in points] for s in range(dim)]
    rows.append([Fraction(1)] * len(points))
    return feasible_point(rows, list(x) + [Fraction(1)])
