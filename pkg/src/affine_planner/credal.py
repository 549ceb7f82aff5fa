"""Exact-arithmetic building blocks: state spaces, intervals, distributions, utilities.

All numbers are :class:`fractions.Fraction`; nothing in the package ever
rounds.  Intervals are closed subintervals of ``[0, 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import AffineVectorError

Number = Union[int, str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(x: Number) -> Fraction:
    """Parse ints, ``Fraction``s, decimal strings (``"0.3"``) and ``"p/q"`` exactly.

    Floats are rejected: by the time a value is a float its exact decimal
    spelling is gone.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {x!r}") from exc
    raise TypeError(f"cannot parse {type(x).__name__} {x!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class StateSpace:
    """Finite ordered set of state names; the order is canonical everywhere."""

    states: tuple[str, ...]
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        states = tuple(self.states)
        if not states:
            raise ValueError("state space must be nonempty")
        if len(set(states)) != len(states):
            raise ValueError("state names must be unique")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(states)})

    def index(self, s: str) -> int:
        try:
            return self._index[s]
        except KeyError:
            raise KeyError(f"unknown state {s!r}") from None

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __contains__(self, s) -> bool:
        return s in self._index

    def ordered(self, subset: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(subset, key=self.index))

    @property
    def all(self) -> frozenset[str]:
        return frozenset(self.states)


@dataclass(frozen=True, order=True)
class Interval:
    """Closed interval ``[lo, hi]`` with ``0 <= lo <= hi <= 1``."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = parse_rational(self.lo), parse_rational(self.hi)
        if not (0 <= lo <= hi <= 1):
            raise ValueError(f"invalid interval [{lo}, {hi}]: need 0 <= lo <= hi <= 1")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, q: Number) -> "Interval":
        q = parse_rational(q)
        return cls(q, q)

    @classmethod
    def coerce(cls, x) -> "Interval":
        if isinstance(x, Interval):
            return x
        if isinstance(x, (tuple, list)):
            lo, hi = x
            return cls(parse_rational(lo), parse_rational(hi))
        return cls.point(x)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, q) -> bool:
        return self.lo <= q <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


UNIT = Interval(ZERO, ONE)
NULL = Interval(ZERO, ZERO)
CERTAIN = Interval(ONE, ONE)


def _clamp(q: Fraction) -> Fraction:
    return min(max(q, ZERO), ONE)


def interval_add(i1: Interval, i2: Interval) -> Interval:
    """Endpoint-wise sum, each endpoint clamped into ``[0, 1]``."""
    return Interval(_clamp(i1.lo + i2.lo), _clamp(i1.hi + i2.hi))


def interval_sum(intervals: Iterable[Interval]) -> Interval:
    """n-ary :func:`interval_add` that clamps once, at the end."""
    lo = hi = ZERO
    for q in intervals:
        lo += q.lo
        hi += q.hi
    return Interval(_clamp(lo), _clamp(hi))


def interval_mul(i1: Interval, i2: Interval) -> Interval:
    return Interval(i1.lo * i2.lo, i1.hi * i2.hi)


def interval_subsumes(outer: Interval, inner: Interval) -> bool:
    return outer.lo <= inner.lo and inner.hi <= outer.hi


def interval_hull(intervals: Iterable[Interval]) -> Interval:
    intervals = list(intervals)
    return Interval(min(q.lo for q in intervals), max(q.hi for q in intervals))


class Distribution:
    """Probability function over a :class:`StateSpace`, stored densely."""

    __slots__ = ("space", "probs")

    def __init__(self, space: StateSpace, probs: Sequence[Number]):
        probs = tuple(parse_rational(p) for p in probs)
        if len(probs) != len(space):
            raise ValueError("distribution length does not match the state space")
        if any(p < 0 for p in probs):
            raise ValueError("negative probability mass")
        if sum(probs) != 1:
            raise ValueError(f"masses sum to {sum(probs)}, not 1")
        self.space = space
        self.probs = probs

    @classmethod
    def _trusted(cls, space: StateSpace, probs: tuple[Fraction, ...]) -> "Distribution":
        d = object.__new__(cls)
        d.space = space
        d.probs = probs
        return d

    @classmethod
    def from_mapping(cls, space: StateSpace, mass: Mapping[str, Number]) -> "Distribution":
        probs = [ZERO] * len(space)
        for s, p in mass.items():
            probs[space.index(s)] += parse_rational(p)
        return cls(space, probs)

    @classmethod
    def point(cls, space: StateSpace, s: str) -> "Distribution":
        probs = [ZERO] * len(space)
        probs[space.index(s)] = ONE
        return cls._trusted(space, tuple(probs))

    @classmethod
    def uniform(cls, space: StateSpace, support: Iterable[str] | None = None) -> "Distribution":
        support = list(space.states if support is None else support)
        w = Fraction(1, len(support))
        return cls.from_mapping(space, {s: w for s in support})

    def __getitem__(self, s: str) -> Fraction:
        return self.probs[self.space.index(s)]

    def mass(self, subset: Iterable[str]) -> Fraction:
        return sum((self[s] for s in subset), ZERO)

    @property
    def support(self) -> frozenset[str]:
        return frozenset(s for s, p in zip(self.space.states, self.probs) if p)

    def as_dict(self, nonzero: bool = True) -> dict[str, Fraction]:
        return {s: p for s, p in zip(self.space.states, self.probs) if p or not nonzero}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Distribution):
            return NotImplemented
        return self.probs == other.probs and self.space.states == other.space.states

    def __hash__(self) -> int:
        return hash(self.probs)

    def __repr__(self) -> str:
        body = ", ".join(f"{s}: {p}" for s, p in self.as_dict().items())
        return f"Distribution({{{body}}})"


def dist_mix(weights: Sequence[Number], dists: Sequence[Distribution]) -> Distribution:
    """The affine combination ``sum_i weights[i] * dists[i]``."""
    weights = [parse_rational(w) for w in weights]
    if len(weights) != len(dists) or not dists:
        raise AffineVectorError("need one weight per distribution and at least one of each")
    if any(w < 0 or w > 1 for w in weights):
        raise AffineVectorError(f"weights must lie in [0, 1]: {weights}")
    if sum(weights) != 1:
        raise AffineVectorError(f"weights sum to {sum(weights)}, not 1")
    space = dists[0].space
    m = len(space)
    out = [ZERO] * m
    for w, d in zip(weights, dists):
        if not w:
            continue
        for j, p in enumerate(d.probs):
            if p:
                out[j] += w * p
    assert sum(out) == 1
    return Distribution._trusted(space, tuple(out))


class UtilityFunction:
    """Rational-valued map over the state space; sign unrestricted."""

    __slots__ = ("space", "values")

    def __init__(self, space: StateSpace, values: Sequence[Number]):
        values = tuple(parse_rational(v) for v in values)
        if len(values) != len(space):
            raise ValueError("utility must assign a value to every state")
        self.space = space
        self.values = values

    @classmethod
    def from_mapping(cls, space: StateSpace, values: Mapping[str, Number]) -> "UtilityFunction":
        missing = [s for s in space if s not in values]
        if missing:
            raise ValueError(f"utility undefined on states {missing}")
        extra = [s for s in values if s not in space]
        if extra:
            raise ValueError(f"utility mentions unknown states {extra}")
        return cls(space, [values[s] for s in space])

    def __call__(self, s: str) -> Fraction:
        return self.values[self.space.index(s)]

    def expectation(self, d: Distribution) -> Fraction:
        return sum((p * v for p, v in zip(d.probs, self.values) if p), ZERO)

    def __eq__(self, other):
        if not isinstance(other, UtilityFunction):
            return NotImplemented
        return self.values == other.values and self.space == other.space

    def __hash__(self):
        return hash(self.values)

    def __repr__(self) -> str:
        body = ", ".join(f"{s}: {v}" for s, v in zip(self.space.states, self.values))
        return f"UtilityFunction({{{body}}})"


@dataclass(frozen=True)
class EUInterval:
    """Closed interval of expected utilities.  Endpoints are unbounded rationals.

    ``hull_approximated`` is set when a finite (non-convex) leaf was replaced
    by its convex hull while computing the interval.
    """

    lo: Fraction
    hi: Fraction
    hull_approximated: bool = field(default=False, compare=False)

    def __post_init__(self):
        lo, hi = parse_rational(self.lo), parse_rational(self.hi)
        if lo > hi:
            raise ValueError(f"EU interval with lo {lo} > hi {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def contains(self, other: "EUInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"
