"""Seeded property suites checking the library against the exact oracle.

Each property draws fixtures from a per-case seed (derived by hashing the
run seed, the property name and the case index), so any single case can be
replayed in isolation and reports are byte-identical across runs.  A failing
case is shrunk by regenerating it from the same seed under halved size
bounds, keeping the smallest fixture that still fails.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from types import SimpleNamespace
from typing import Callable

from .. import abstraction, projection, tree, valuation
from ..actions import (
    apply_primitive_dist,
    to_abstract,
    validate_abstract,
    validate_primitive,
)
from ..credal import Distribution, StateSpace, dist_mix
from ..domain import action_doc, tree_doc, utility_doc
from ..errors import ActionValidationError, AffinePlannerError
from ..tree import MassAssignment, sample_member, standardize
from . import generators as gen
from .generators import Bounds
from .vertices import (
    counterexample_vertex,
    eu_range,
    member,
    sampled_action_image,
    world_vertices,
)

SUITES = ("lemmas", "theorems", "all")


class Skip(Exception):
    """The drawn fixture is outside the property's domain; draw another."""


def default_ops() -> SimpleNamespace:
    """The implementations under test; the runner accepts replacements (mutation checks)."""
    return SimpleNamespace(
        flatten=tree.flatten,
        merge_stars=tree.merge_stars,
        merge_branches=tree.merge_branches,
        standardize=tree.standardize,
        eui=valuation.eui,
        pr1=projection.pr1,
        pr2=projection.pr2,
        pr3=projection.pr3,
        intra_abstract=abstraction.intra_abstract,
        inter_abstract=abstraction.inter_abstract,
        seq_abstract=abstraction.seq_abstract,
        validate_primitive=validate_primitive,
        apply_primitive_dist=apply_primitive_dist,
    )


def _dist_doc(d: Distribution) -> dict:
    return {s: str(d[s]) for s in d.space}


def _w(t, space):
    return tree_doc(t, space)


def _containment_failure(sup, sub, space, **fixture):
    v = counterexample_vertex(sup, sub, space)
    if v is None:
        return None
    return dict(fixture, witness=_dist_doc(v))


# -- lemma properties ---------------------------------------------------------------


def prop_lemma1(rng, b: Bounds, ops):
    space = gen.random_space(rng, b)
    t = gen.random_tree(rng, space, b)
    big = gen.enlarge(rng, t, space)
    return _containment_failure(
        big, t, space, states=list(space.states), tree=_w(t, space), enlarged=_w(big, space)
    )


def prop_lemma2(rng, b: Bounds, ops):
    space = gen.random_space(rng, b)
    n = rng.randint(2, max(2, b.max_arity))
    stars = [gen.random_star(rng, space, b, arity=n) for _ in range(rng.randint(2, 3))]
    merged = ops.merge_stars(stars)
    for s in stars:
        bad = _containment_failure(
            merged, s, space, states=list(space.states),
            stars=[_w(x, space) for x in stars], merged=_w(merged, space),
        )
        if bad:
            return bad
    return None


def prop_lemma3(rng, b: Bounds, ops):
    space = gen.random_space(rng, b)
    s = gen.random_star(rng, space, b)
    k = rng.randint(2, s.arity)
    chosen = sorted(rng.sample(range(s.arity), k))
    merged = ops.merge_branches(s, chosen)
    return _containment_failure(
        merged, s, space, states=list(space.states), star=_w(s, space),
        indices=chosen, merged=_w(merged, space),
    )


def prop_lemma4(rng, b: Bounds, ops):
    space = gen.random_space(rng, b)
    t = gen.random_tree(rng, space, b)
    flat = ops.flatten(t)
    if tree.validate(flat, space).messages():
        return {"states": list(space.states), "tree": _w(t, space), "flattened": _w(flat, space),
                "error": "flattened tree is invalid"}
    return _containment_failure(
        flat, t, space, states=list(space.states), tree=_w(t, space), flattened=_w(flat, space)
    )


def prop_convexity(rng, b: Bounds, ops):
    space = gen.random_space(rng, b)
    t = gen.random_tree(rng, space, b)
    x, y = sample_member(t, space, rng), sample_member(t, space, rng)
    d = rng.choice((2, 3, 4, 5, 7, 10))
    alpha = Fraction(rng.randint(0, d), d)
    z = dist_mix([alpha, 1 - alpha], [x, y])
    if member(z, world_vertices(t, space)):
        return None
    return {"states": list(space.states), "tree": _w(t, space), "x": _dist_doc(x),
            "y": _dist_doc(y), "alpha": str(alpha)}


# -- theorem properties -------------------------------------------------------------


def _grid(space: StateSpace, d: int):
    m = len(space)
    for combo in itertools.combinations(range(d + m - 1), m - 1):
        parts, prev = [], -1
        for c in combo:
            parts.append(c - prev - 1)
            prev = c
        parts.append(d + m - 2 - prev)
        yield Distribution(space, [Fraction(p, d) for p in parts])


def _subsets(space: StateSpace):
    states = space.states
    for r in range(1, len(states) + 1):
        yield from itertools.combinations(states, r)


def prop_theorem1(rng, b: Bounds, ops):
    space = gen.random_space(rng, b, size=3)
    k = rng.randint(1, 3)
    focals = []
    while len(focals) < k:
        f = gen.random_subset(rng, space)
        if f not in focals:
            focals.append(f)
    masses = gen.random_point_weights(rng, k)
    m = MassAssignment(zip(focals, masses))
    t = tree.from_belief(m)
    vs = world_vertices(t, space)
    fixture = {"states": list(space.states),
               "focals": [[list(space.ordered(f)), str(q)] for f, q in zip(focals, masses)]}
    for _ in range(10):
        p = sample_member(t, space, rng)
        for sub in _subsets(space):
            if m.belief(sub) > p.mass(sub):
                return dict(fixture, direction="members respect belief", member=_dist_doc(p),
                            subset=list(sub))
    grid = list(_grid(space, rng.choice((4, 6, 12))))
    rng.shuffle(grid)
    for p in grid[:30]:
        consistent = all(m.belief(sub) <= p.mass(sub) for sub in _subsets(space))
        if consistent and not member(p, vs):
            return dict(fixture, direction="consistent distributions are members",
                        distribution=_dist_doc(p))
    return None


def prop_theorem2(rng, b: Bounds, ops):
    space = gen.random_space(rng, b)
    lam = gen.random_abstract_action(rng, space, b)
    w = gen.random_tree(rng, space, b, standard=True)
    t2 = ops.pr2(lam, w)
    t3 = ops.pr3(lam, w)
    fixture = {"states": list(space.states), "action": action_doc(lam), "world": _w(w, space)}
    bad = _containment_failure(t3, t2, space, **fixture, part="pr2 within pr3")
    if bad:
        return bad
    v2 = world_vertices(t2, space)
    pr1_world = ops.pr1(lam, w).tree
    for _ in range(5):
        p = sample_member(pr1_world, space, rng)
        if not member(p, v2):
            return dict(fixture, part="pr1 samples within pr2", point=_dist_doc(p))
    for p in sampled_action_image(lam, w, space, 5, rng):
        if not member(p, v2):
            return dict(fixture, part="action image within pr2", point=_dist_doc(p))
    return None


def prop_theorem3(rng, b: Bounds, ops):
    space = gen.random_space(rng, b)
    t = gen.random_tree(rng, space, b)
    f = gen.random_utility(rng, space)
    got = ops.eui(t, f)
    want = eu_range(world_vertices(t, space), f)
    if (got.lo, got.hi) == want:
        return None
    return {"states": list(space.states), "tree": _w(t, space), "utility": utility_doc(f),
            "eui": [str(got.lo), str(got.hi)], "oracle": [str(want[0]), str(want[1])]}


def _theorem4_world(rng, space, b: Bounds):
    small = Bounds(b.max_states, min(b.max_depth, 2), min(b.max_arity, 2), b.max_branches)
    return gen.random_tree(rng, space, small, standard=True)


def prop_theorem4_intra(rng, b: Bounds, ops):
    space = gen.random_space(rng, b)
    lam = gen.random_abstract_action(rng, space, b, n=rng.randint(2, max(2, b.max_branches)))
    idx = list(range(len(lam.branches)))
    rng.shuffle(idx)
    cut = rng.randint(1, len(idx) - 1) if rng.random() < 0.5 else len(idx)
    groups = [sorted(idx[:cut])] + ([sorted(idx[cut:])] if idx[cut:] else [])
    if all(len(g) == 1 for g in groups):
        groups = [sorted(idx)]
    try:
        big = ops.intra_abstract(lam, groups)
    except ActionValidationError:
        raise Skip("bundled action has no instantiation") from None
    w = _theorem4_world(rng, space, b)
    return _containment_failure(
        ops.pr2(big, w), ops.pr2(lam, w), space, states=list(space.states),
        action=action_doc(lam), groups=groups, abstract=action_doc(big), world=_w(w, space),
    )


def prop_theorem4_inter(rng, b: Bounds, ops):
    space = gen.random_space(rng, b)
    first = gen.random_abstract_action(rng, space, b)
    conds = [br.condition for br in first.branches]
    group = [first] + [
        gen.random_abstract_action(rng, space, b, conditions=conds)
        for _ in range(rng.randint(1, 2))
    ]
    big = ops.inter_abstract(group)
    w = _theorem4_world(rng, space, b)
    t_big = ops.pr2(big, w)
    for lam in group:
        bad = _containment_failure(
            t_big, ops.pr2(lam, w), space, states=list(space.states),
            actions=[action_doc(a) for a in group], abstract=action_doc(big), world=_w(w, space),
        )
        if bad:
            return bad
    return None


def prop_theorem4_seq(rng, b: Bounds, ops):
    space = gen.random_space(rng, b)
    l1 = gen.random_abstract_action(rng, space, b)
    l2 = gen.random_abstract_action(rng, space, b)
    w = _theorem4_world(rng, space, b)
    fixture = {"states": list(space.states), "first": action_doc(l1), "second": action_doc(l2),
               "world": _w(w, space)}
    big = ops.seq_abstract(l1, l2)
    report = validate_abstract(big)
    if not report.ok:
        return dict(fixture, abstract=action_doc(big),
                    error="composed action has no instantiation: " + "; ".join(report.messages()))
    concrete = ops.pr2(l2, ops.standardize(ops.pr2(l1, w), space))
    return _containment_failure(ops.pr2(big, w), concrete, space, **fixture,
                                abstract=action_doc(big))


def prop_sum_to_one(rng, b: Bounds, ops):
    space = gen.random_space(rng, b)
    lam = gen.random_primitive_action(rng, space, b)
    mutated = rng.random() < 0.5
    if mutated:
        lam = gen.mutate_sum(rng, lam)
    covered = frozenset().union(*(br.condition for br in lam.branches))
    sums_ok = covered == space.all and all(
        0 <= br.prob <= 1 for br in lam.branches
    ) and all(sum(br.prob for br in lam.branches if s in br.condition) == 1 for s in space)
    accepted = ops.validate_primitive(lam).ok
    fixture = {"states": list(space.states), "action": action_doc(lam), "mutated": mutated}
    if accepted != sums_ok:
        return dict(fixture, accepted=accepted, expected=sums_ok)
    if not sums_ok:
        return None
    p = sample_member(gen.random_tree(rng, space, b), space, rng)
    got = ops.apply_primitive_dist(lam, p)
    want = {s: Fraction(0) for s in space}
    for s in space:
        for br in lam.branches:
            if s in br.condition:
                want[br.effect(s)] += p[s] * br.prob
    if any(got[s] != want[s] for s in space):
        return dict(fixture, input=_dist_doc(p), got=_dist_doc(got),
                    expected={s: str(v) for s, v in want.items()})
    return None


def prop_growth(rng, b: Bounds, ops):
    space = gen.random_space(rng, b)
    k = rng.randint(2, len(space))
    lam = gen.random_abstract_action(rng, space, b, k=k)
    n = len(lam.branches)
    w = gen.random_tree(rng, space, b, standard=True)
    fixture = {"states": list(space.states), "action": action_doc(lam), "world": _w(w, space)}
    t2 = ops.standardize(ops.pr2(lam, w), space)
    d, l = tree.depth(w), tree.leaf_count(w)
    if tree.depth(t2) != d + 2 or tree.leaf_count(t2) != n * k * l:
        return dict(fixture, rule=2, depth=tree.depth(t2), leaves=tree.leaf_count(t2),
                    expected_depth=d + 2, expected_leaves=n * k * l)
    general = gen.random_abstract_action(rng, space, b)
    w3 = gen.random_tree(rng, space, b)
    t3 = ops.pr3(general, w3)
    d3, l3 = tree.depth(w3), tree.leaf_count(w3)
    if tree.depth(t3) != d3 + 1 or tree.leaf_count(t3) > len(general.branches) * l3:
        return {"states": list(space.states), "action": action_doc(general), "world": _w(w3, space),
                "rule": 3, "depth": tree.depth(t3), "leaves": tree.leaf_count(t3),
                "expected_depth": d3 + 1, "max_leaves": len(general.branches) * l3}
    return None


@dataclass(frozen=True)
class Property:
    name: str
    suite: str
    run: Callable
    bounds: Bounds = field(default_factory=Bounds)


PROPERTIES = (
    Property("lemma1_monotonicity", "lemmas", prop_lemma1),
    Property("lemma2_merge_stars", "lemmas", prop_lemma2),
    Property("lemma3_merge_branches", "lemmas", prop_lemma3),
    Property("lemma4_flatten", "lemmas", prop_lemma4),
    Property("corollary1_convexity", "lemmas", prop_convexity),
    Property("theorem1_belief", "theorems", prop_theorem1),
    Property("theorem2_projection_chain", "theorems", prop_theorem2),
    Property("theorem3_eui_exact", "theorems", prop_theorem3),
    Property("theorem4_intra", "theorems", prop_theorem4_intra),
    Property("theorem4_inter", "theorems", prop_theorem4_inter),
    Property("theorem4_sequential", "theorems", prop_theorem4_seq),
    Property("action_sum_to_one", "theorems", prop_sum_to_one),
    Property("projection_growth_laws", "theorems", prop_growth),
)

MAX_SKIPS_PER_CASE = 25


def case_seed(seed: int, name: str, index: int, attempt: int = 0) -> int:
    digest = hashlib.sha256(f"{seed}:{name}:{index}:{attempt}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _attempt(prop: Property, seed: int, index: int, bounds: Bounds, ops):
    """Run one case; returns ``(failure or None, skipped draws)``."""
    for attempt in range(MAX_SKIPS_PER_CASE):
        rng = random.Random(case_seed(seed, prop.name, index, attempt))
        try:
            return prop.run(rng, bounds, ops), attempt
        except Skip:
            continue
        except (AffinePlannerError, ArithmeticError, ValueError, AssertionError) as exc:
            return {"error": f"{type(exc).__name__}: {exc}"}, attempt
    return None, MAX_SKIPS_PER_CASE


def _shrink(prop: Property, seed: int, index: int, failure: dict, ops) -> tuple[dict, Bounds]:
    best, best_bounds = failure, prop.bounds
    b = prop.bounds.halved()
    while b is not None:
        smaller, _ = _attempt(prop, seed, index, b, ops)
        if smaller is not None:
            best, best_bounds = smaller, b
        b = b.halved()
    return best, best_bounds


@dataclass
class PropertyResult:
    name: str
    suite: str
    cases: int
    passed: int = 0
    skipped_draws: int = 0
    failing_cases: list = field(default_factory=list)
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return not self.failing_cases

    def as_dict(self) -> dict:
        out = {
            "name": self.name,
            "suite": self.suite,
            "cases": self.cases,
            "passed": self.passed,
            "failed": len(self.failing_cases),
            "skipped_draws": self.skipped_draws,
            "ok": self.ok,
        }
        if self.failing_cases:
            out["failing_cases"] = self.failing_cases
            out["counterexample"] = self.counterexample
        return out


def run_property(prop: Property, seed: int, cases: int, ops=None, shrink: bool = True) -> PropertyResult:
    ops = ops or default_ops()
    res = PropertyResult(prop.name, prop.suite, cases)
    for i in range(cases):
        failure, skipped = _attempt(prop, seed, i, prop.bounds, ops)
        res.skipped_draws += skipped
        if failure is None:
            res.passed += 1
            continue
        res.failing_cases.append(i)
        if res.counterexample is None:
            small, bounds = _shrink(prop, seed, i, failure, ops) if shrink else (failure, prop.bounds)
            res.counterexample = {
                "case": i,
                "bounds": {
                    "max_states": bounds.max_states,
                    "max_depth": bounds.max_depth,
                    "max_arity": bounds.max_arity,
                    "max_branches": bounds.max_branches,
                },
                "fixture": small,
            }
    return res


@dataclass(frozen=True)
class SuiteConfig:
    suite: str = "all"
    seed: int = 0
    cases: int = 200
    only: tuple = ()


def select(suite: str, only=()) -> list[Property]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    props = [p for p in PROPERTIES if suite == "all" or p.suite == suite]
    if only:
        props = [p for p in props if p.name in only]
    return props


def run_property_suite(config: SuiteConfig = SuiteConfig(), ops=None) -> dict:
    """Run every selected property; the report is a JSON-ready dict with no timings."""
    if config.cases < 0:
        raise ValueError("case count must be nonnegative")
    ops = ops or default_ops()
    results = [run_property(p, config.seed, config.cases, ops) for p in select(config.suite, config.only)]
    if config.cases == 0:
        results = []
    return {
        "suite": config.suite,
        "seed": config.seed,
        "cases_per_property": config.cases,
        "ok": all(r.ok for r in results),
        "properties": [r.as_dict() for r in results],
    }


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
