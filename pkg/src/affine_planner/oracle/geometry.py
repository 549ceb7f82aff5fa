"""Exact convex-hull helpers on rational point sets of any affine dimension."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .. import _kernels
from .._kernels._pykernel import _add_to_basis

Point = tuple  # of Fraction


def scale_to_integers(points: Sequence[Point]) -> list[list[int]]:
    d = 1
    for p in points:
        for x in p:
            d = lcm(d, x.denominator)
    return [[x.numerator * (d // x.denominator) for x in p] for p in points]


@dataclass(frozen=True)
class HullInfo:
    """Extreme points (as indices) plus edges of a boundary triangulation."""

    dimension: int
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]


def hull_info(points: Sequence[Point]) -> HullInfo:
    """Hull of distinct rational points; handles lower-dimensional point sets.

    Points are projected onto coordinates that are independent on their
    affine hull (an injective affine map, so extremality is preserved).
    """
    if not points:
        raise ValueError("no points")
    if len(points) == 1:
        return HullInfo(0, (0,), ())
    ints = scale_to_integers(points)
    origin = ints[0]
    dim = len(origin)
    basis: list = []
    for p in ints[1:]:
        if _add_to_basis(basis, [a - b for a, b in zip(p, origin)]) and len(basis) == dim:
            break
    k = len(basis)
    if k == 0:
        return HullInfo(0, (0,), ())
    cols = sorted(pc for pc, _ in basis)
    proj = [[p[c] for c in cols] for p in ints]
    if k == 1:
        lo = min(range(len(proj)), key=lambda i: proj[i][0])
        hi = max(range(len(proj)), key=lambda i: proj[i][0])
        return HullInfo(1, tuple(sorted((lo, hi))), ((lo, hi),))
    verts, facets = _kernels.hull(proj)
    edges = set()
    for f in facets:
        for a in range(len(f)):
            for b in range(a + 1, len(f)):
                edges.add((f[a], f[b]))
    return HullInfo(k, tuple(verts), tuple(sorted(edges)))


def dedupe(points) -> list[Point]:
    return list(dict.fromkeys(points))


def extreme_points(points: Sequence[Point]) -> list[Point]:
    pts = dedupe(points)
    if len(pts) <= 2:
        return pts
    info = hull_info(pts)
    return [pts[i] for i in info.vertices]


def slice_sum_one(points: Sequence[Point]) -> list[Point]:
    """Extreme points of ``conv(points) ∩ {x : sum(x) = 1}``."""
    pts = dedupe(points)
    sums = [sum(p) for p in pts]
    if all(s == 1 for s in sums):
        return extreme_points(pts)
    info = hull_info(pts)
    out = []
    touched = set(info.vertices)
    for u, v in info.edges:
        touched.add(u)
        touched.add(v)
    for i in touched:
        if sums[i] == 1:
            out.append(pts[i])
    one = Fraction(1)
    for u, v in info.edges:
        su, sv = sums[u], sums[v]
        if (su - one) * (sv - one) < 0:
            t = (one - su) / (sv - su)
            out.append(tuple(a + t * (b - a) for a, b in zip(pts[u], pts[v])))
    if not out:
        return []
    return extreme_points(out)
