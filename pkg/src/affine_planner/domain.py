"""JSON domain files: parsing, validation, and canonical emission.

Layout::

    {
      "states": ["a", "b", "c"],
      "utility": {"a": 0, "b": 10, "c": 4},
      "actions": {"X": [{"condition": [...], "prob": ..., "effect": {...}}, ...]},
      "worlds": {"w": {"ch": ["a", "b"]}},
      "plans": {"p": ["X"]}
    }

Numbers may be JSON integers, decimals (read exactly, ``0.3`` is ``3/10``)
or strings such as ``"3/10"``.  A branch whose ``prob`` is a scalar and whose
effect targets are all plain strings is primitive; an action is primitive
when all its branches are.  A missing ``condition`` means every state, and
states missing from ``effect`` are left unchanged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .actions import (
    AbstractAction,
    AbstractBranch,
    AbstractEffect,
    Action,
    PrimitiveAction,
    PrimitiveBranch,
    PrimitiveEffect,
    validate_abstract,
    validate_primitive,
)
from .credal import Distribution, Interval, StateSpace, UtilityFunction, parse_rational
from .errors import DomainError
from .projection import Plan
from .tree import (
    FiniteLeaf,
    IntervalMassAssignment,
    MassAssignment,
    SetLeaf,
    Star,
    StateLeaf,
    from_belief,
    from_distribution,
    from_ima,
    validate,
)

# -- numbers ------------------------------------------------------------------


def _number(x, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str, Fraction)):
        raise DomainError(f"{where}: expected a number, got {x!r}", "parse")
    try:
        return parse_rational(x)
    except (ValueError, TypeError) as exc:
        raise DomainError(f"{where}: {exc}", "parse") from None


def _interval(x, where: str) -> Interval:
    if isinstance(x, list):
        if len(x) != 2:
            raise DomainError(f"{where}: an interval is [lo, hi]", "parse")
        lo, hi = _number(x[0], where), _number(x[1], where)
    else:
        lo = hi = _number(x, where)
    try:
        return Interval(lo, hi)
    except ValueError as exc:
        raise DomainError(f"{where}: {exc}", "interval") from None


def rat(q: Fraction) -> str:
    return str(q)


def _pair(iv: Interval) -> list[str]:
    return [rat(iv.lo), rat(iv.hi)]


# -- worlds -------------------------------------------------------------------


def _states(space: StateSpace, xs, where: str) -> frozenset:
    if isinstance(xs, str) or not isinstance(xs, list) or not xs:
        raise DomainError(f"{where}: expected a nonempty list of states", "parse")
    for s in xs:
        if s not in space:
            raise DomainError(f"{where}: unknown state {s!r}", "reference")
    return frozenset(xs)


def _state(space: StateSpace, s, where: str) -> str:
    if not isinstance(s, str) or s not in space:
        raise DomainError(f"{where}: unknown state {s!r}", "reference")
    return s


def parse_tree(doc, space: StateSpace, where: str = "world"):
    """Build an affine-tree from its JSON document (including the sugar forms)."""
    if not isinstance(doc, dict) or len(doc) != 1:
        raise DomainError(f"{where}: a tree node is an object with exactly one key", "parse")
    ((kind, body),) = doc.items()
    if kind == "state":
        return StateLeaf(_state(space, body, where))
    if kind == "ch":
        return SetLeaf(_states(space, body, where))
    if kind == "finite":
        return FiniteLeaf(_states(space, body, where))
    if kind == "star":
        if not isinstance(body, list) or not body:
            raise DomainError(f"{where}: star needs a nonempty branch list", "parse")
        branches = []
        for i, br in enumerate(body):
            w = f"{where}.star[{i}]"
            if not isinstance(br, dict) or set(br) != {"interval", "child"}:
                raise DomainError(f"{w}: branch needs exactly 'interval' and 'child'", "parse")
            branches.append((_interval(br["interval"], w), parse_tree(br["child"], space, w)))
        return Star(branches)
    if kind == "dist":
        if not isinstance(body, dict):
            raise DomainError(f"{where}: dist is a state -> probability map", "parse")
        mass = {_state(space, s, where): _number(p, f"{where}.dist.{s}") for s, p in body.items()}
        try:
            return from_distribution(Distribution.from_mapping(space, mass))
        except ValueError as exc:
            raise DomainError(f"{where}: {exc}", "distribution") from None
    if kind in ("belief", "ima"):
        if not isinstance(body, list) or not body:
            raise DomainError(f"{where}: {kind} needs a nonempty focal list", "parse")
        focals = []
        for i, fe in enumerate(body):
            w = f"{where}.{kind}[{i}]"
            if not isinstance(fe, dict) or set(fe) != {"focal", "mass"}:
                raise DomainError(f"{w}: focal element needs exactly 'focal' and 'mass'", "parse")
            m = _number(fe["mass"], w) if kind == "belief" else _interval(fe["mass"], w)
            focals.append((_states(space, fe["focal"], w), m))
        try:
            if kind == "belief":
                return from_belief(MassAssignment(focals))
            return from_ima(IntervalMassAssignment(focals))
        except ValueError as exc:
            raise DomainError(f"{where}: {exc}", kind) from None
    raise DomainError(f"{where}: unknown tree node kind {kind!r}", "parse")


def tree_doc(t, space: StateSpace):
    if isinstance(t, StateLeaf):
        return {"state": t.state}
    if isinstance(t, SetLeaf):
        return {"ch": list(space.ordered(t.states))}
    if isinstance(t, FiniteLeaf):
        return {"finite": list(space.ordered(t.states))}
    return {"star": [{"interval": _pair(q), "child": tree_doc(c, space)} for q, c in t.branches]}


# -- actions ------------------------------------------------------------------


def parse_action(doc, space: StateSpace, where: str = "action") -> Action:
    if isinstance(doc, dict) and set(doc) == {"branches"}:
        doc = doc["branches"]
    if not isinstance(doc, list) or not doc:
        raise DomainError(f"{where}: an action is a nonempty list of branches", "parse")
    raw = []
    primitive = True
    for i, br in enumerate(doc):
        w = f"{where}[{i}]"
        if not isinstance(br, dict) or not set(br) <= {"condition", "prob", "effect"} or "prob" not in br:
            raise DomainError(f"{w}: branch keys are condition, prob, effect (prob required)", "parse")
        cond = _states(space, br["condition"], w + ".condition") if "condition" in br else space.all
        prob = _interval(br["prob"], w + ".prob")
        eff_doc = br.get("effect", {})
        if not isinstance(eff_doc, dict):
            raise DomainError(f"{w}.effect: expected a state -> target map", "parse")
        table = {}
        for s in space:
            target = eff_doc.get(s, s)
            if isinstance(target, str):
                table[s] = frozenset((_state(space, target, f"{w}.effect.{s}"),))
            else:
                primitive = False
                table[s] = _states(space, target, f"{w}.effect.{s}")
        for s in eff_doc:
            _state(space, s, f"{w}.effect")
        if isinstance(br["prob"], list):
            primitive = False
        raw.append((cond, prob, table))
    if primitive:
        action = PrimitiveAction(
            space,
            [
                PrimitiveBranch(c, p.lo, PrimitiveEffect({s: next(iter(v)) for s, v in t.items()}))
                for c, p, t in raw
            ],
        )
        report = validate_primitive(action)
        rule = "sum-to-one"
    else:
        action = AbstractAction(space, [AbstractBranch(c, p, AbstractEffect(t)) for c, p, t in raw])
        report = validate_abstract(action)
        rule = "feasibility"
    if not report.ok:
        msgs = report.messages()
        if any("uncovered" in m or "exhaust" in m for m in msgs):
            rule = "exhaustiveness"
        raise DomainError(f"{where}: " + "; ".join(msgs), rule)
    return action


def action_doc(action: Action) -> list:
    space = action.space
    out = []
    for br in action.branches:
        entry: dict[str, Any] = {"condition": list(space.ordered(br.condition))}
        if isinstance(action, PrimitiveAction):
            entry["prob"] = rat(br.prob)
            entry["effect"] = {s: br.effect(s) for s in space if br.effect(s) != s}
        else:
            entry["prob"] = _pair(br.prob)
            entry["effect"] = {
                s: list(space.ordered(br.effect(s))) for s in space if br.effect(s) != {s}
            }
        out.append(entry)
    return out


# -- domain -------------------------------------------------------------------


@dataclass
class Domain:
    space: StateSpace
    utility: UtilityFunction | None = None
    actions: dict[str, Action] = field(default_factory=dict)
    worlds: dict[str, object] = field(default_factory=dict)
    plans: dict[str, Plan] = field(default_factory=dict)

    def plan(self, name: str) -> Plan:
        if name in self.plans:
            return self.plans[name]
        if name in self.actions:
            return Plan(name, [self.actions[name]], step_names=[name])
        raise DomainError(f"unknown plan {name!r}", "reference")

    def world(self, name: str):
        if name not in self.worlds:
            raise DomainError(f"unknown world {name!r}", "reference")
        return self.worlds[name]

    def action(self, name: str) -> Action:
        if name not in self.actions:
            raise DomainError(f"unknown action {name!r}", "reference")
        return self.actions[name]


_TOP_KEYS = {"states", "utility", "actions", "worlds", "plans"}


def _decode(text: str, source: str):
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise DomainError(
            f"{source}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}", "parse"
        ) from None


def parse_domain(doc, source: str = "<domain>") -> Domain:
    if not isinstance(doc, dict):
        raise DomainError(f"{source}: top level must be an object", "parse")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise DomainError(f"{source}: unknown top-level keys {sorted(unknown)}", "parse")
    states = doc.get("states")
    if not isinstance(states, list) or not states or not all(isinstance(s, str) for s in states):
        raise DomainError(f"{source}: 'states' must be a nonempty list of names", "parse")
    try:
        space = StateSpace(tuple(states))
    except ValueError as exc:
        raise DomainError(f"{source}: {exc}", "parse") from None
    dom = Domain(space)
    if "utility" in doc:
        u = doc["utility"]
        if not isinstance(u, dict):
            raise DomainError("utility: expected a state -> value map", "parse")
        missing = [s for s in space if s not in u]
        if missing:
            raise DomainError(f"utility: no value for states {missing}", "reference")
        for s in u:
            _state(space, s, "utility")
        dom.utility = UtilityFunction(space, [_number(u[s], f"utility.{s}") for s in space])
    for section in ("actions", "worlds", "plans"):
        if not isinstance(doc.get(section, {}), dict):
            raise DomainError(f"{section}: expected a name -> definition map", "parse")
    for name, body in doc.get("actions", {}).items():
        dom.actions[name] = parse_action(body, space, f"actions.{name}")
    for name, body in doc.get("worlds", {}).items():
        t = parse_tree(body, space, f"worlds.{name}")
        report = validate(t, space)
        if not report.ok:
            raise DomainError(f"worlds.{name}: " + "; ".join(report.messages()), "feasibility")
        dom.worlds[name] = t
    for name, steps in doc.get("plans", {}).items():
        if not isinstance(steps, list) or not steps or not all(isinstance(a, str) for a in steps):
            raise DomainError(f"plans.{name}: a plan is a nonempty list of action names", "parse")
        for a in steps:
            if a not in dom.actions:
                raise DomainError(f"plans.{name}: unknown action {a!r}", "reference")
        dom.plans[name] = Plan(name, [dom.actions[a] for a in steps], step_names=steps)
    return dom


def loads(text: str, source: str = "<string>") -> Domain:
    return parse_domain(_decode(text, source), source)


def load(path) -> Domain:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"{path}: {exc.strerror}", "io") from None
    return loads(text, str(path))


def domain_doc(dom: Domain) -> dict:
    out: dict[str, Any] = {"states": list(dom.space.states)}
    if dom.utility is not None:
        out["utility"] = {s: rat(dom.utility(s)) for s in dom.space}
    out["actions"] = {n: action_doc(a) for n, a in dom.actions.items()}
    out["worlds"] = {n: tree_doc(t, dom.space) for n, t in dom.worlds.items()}
    out["plans"] = {n: list(p.step_names) for n, p in dom.plans.items()}
    return out


def dumps(doc) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit(dom: Domain) -> str:
    return dumps(domain_doc(dom))


def utility_doc(f: UtilityFunction) -> Mapping[str, str]:
    return {s: rat(f(s)) for s in f.space}
