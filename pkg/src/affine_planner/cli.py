"""Command-line interface: ``affine-planner {validate|project|eui|eliminate|abstract|check}``.

Exit codes: 0 ok, 1 validation failure, 2 usage error, 3 property-suite failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import abstraction, domain
from .actions import PrimitiveAction, to_abstract
from .errors import (
    ActionValidationError,
    AffinePlannerError,
    DomainError,
    NotStandardizableError,
    PairingError,
    UnsupportedRuleError,
)
from .projection import pr1, project_plan
from .tree import depth, leaf_count, standardize
from .valuation import eliminate_dominated, eui

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_SUITE = 3


class UsageError(Exception):
    pass


def _decimal(q: Fraction) -> str:
    return f"{float(q):.6g}"


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def _lookup(fn, name):
    try:
        return fn(name)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _eui_of(dom, plan_name: str, world_name: str, rule: int):
    plan = _lookup(dom.plan, plan_name)
    w0 = _lookup(dom.world, world_name)
    if dom.utility is None:
        raise DomainError("domain file has no utility function", "reference")
    result = project_plan(plan, w0, rule, dom.space)
    return eui(result.tree, dom.utility)


# -- commands -----------------------------------------------------------------


def cmd_validate(args, fmt: str) -> str:
    dom = domain.load(args.domain)
    kinds = {n: ("primitive" if isinstance(a, PrimitiveAction) else "abstract") for n, a in dom.actions.items()}
    if fmt == "json":
        return domain.dumps({
            "ok": True,
            "states": list(dom.space.states),
            "actions": kinds,
            "worlds": sorted(dom.worlds),
            "plans": {n: list(p.step_names) for n, p in dom.plans.items()},
        })
    rows = [["kind", "name", "detail"]]
    rows += [["action", n, k] for n, k in kinds.items()]
    rows += [["world", n, f"depth {depth(t)}, {leaf_count(t)} leaves"] for n, t in dom.worlds.items()]
    rows += [["plan", n, " -> ".join(p.step_names)] for n, p in dom.plans.items()]
    return f"ok: {len(dom.space)} states\n" + _table(rows)


def cmd_project(args, fmt: str) -> str:
    dom = domain.load(args.domain)
    plan = _lookup(dom.plan, args.plan)
    w0 = _lookup(dom.world, args.world)
    if args.rule == 1:
        if len(plan.steps) != 1:
            raise UsageError("rule 1 is not closed under projection; use a single-step plan")
        t = pr1(plan.steps[0], standardize(w0, dom.space)).tree
        metrics = [(1, depth(t), leaf_count(t))]
    else:
        result = project_plan(plan, w0, args.rule, dom.space)
        t = result.tree
        metrics = [(m.step, m.depth, m.leaves) for m in result.metrics]
    if fmt == "json":
        return domain.dumps({
            "plan": plan.name,
            "world": args.world,
            "rule": args.rule,
            "tree": domain.tree_doc(t, dom.space),
            "metrics": [{"step": s, "depth": d, "leaves": n} for s, d, n in metrics],
        })
    rows = [["step", "action", "depth", "leaves"]]
    rows += [[str(s), plan.step_names[s - 1], str(d), str(n)] for s, d, n in metrics]
    return _table(rows) + domain.dumps(domain.tree_doc(t, dom.space))


def cmd_eui(args, fmt: str) -> str:
    dom = domain.load(args.domain)
    iv = _eui_of(dom, args.plan, args.world, args.rule)
    if fmt == "json":
        return domain.dumps({
            "plan": args.plan,
            "world": args.world,
            "rule": args.rule,
            "lo": str(iv.lo),
            "hi": str(iv.hi),
            "lo_decimal": _decimal(iv.lo),
            "hi_decimal": _decimal(iv.hi),
        })
    return _table([
        ["plan", "rule", "eui", "approx"],
        [args.plan, str(args.rule), f"[{iv.lo}, {iv.hi}]", f"[{_decimal(iv.lo)}, {_decimal(iv.hi)}]"],
    ])


def cmd_eliminate(args, fmt: str) -> str:
    dom = domain.load(args.domain)
    entries = [(name, _eui_of(dom, name, args.world, args.rule)) for name in args.plans]
    survivors, log = eliminate_dominated(entries)
    alive = {n for n, _ in survivors}
    if fmt == "json":
        return domain.dumps({
            "world": args.world,
            "rule": args.rule,
            "plans": [{"plan": n, "lo": str(iv.lo), "hi": str(iv.hi), "survives": n in alive}
                      for n, iv in entries],
            "survivors": [n for n, _ in survivors],
            "eliminated": [{"loser": e.loser, "winner": e.winner} for e in log],
        })
    rows = [["plan", "eui", "status"]]
    for n, iv in entries:
        status = "survives" if n in alive else "dominated by " + next(e.winner for e in log if e.loser == n)
        rows.append([n, f"[{iv.lo}, {iv.hi}]", status])
    return _table(rows)


def _parse_groups(text: str | None, n: int) -> list[list[int]]:
    if text is None:
        return [list(range(n))]
    try:
        return [[int(x) for x in g.split(",") if x.strip()] for g in text.split(";") if g.strip()]
    except ValueError:
        raise UsageError(f"bad --groups {text!r}; expected e.g. '0,1;2'") from None


def cmd_abstract(args, fmt: str) -> str:
    dom = domain.load(args.domain)
    actions = [_lookup(dom.action, a) for a in args.actions]
    if args.op == "bundle":
        if len(actions) != 1:
            raise UsageError("bundle takes exactly one action")
        groups = _parse_groups(args.groups, len(actions[0].branches))
        try:
            result = abstraction.intra_abstract(actions[0], abstraction.BranchGroup(groups))
        except ValueError as exc:
            if isinstance(exc, AffinePlannerError):
                raise
            raise UsageError(str(exc)) from None
    elif args.op == "combine":
        result = abstraction.inter_abstract(actions)
    else:
        if len(actions) < 2:
            raise UsageError("compose takes at least two actions")
        result = to_abstract(actions[0])
        for nxt in actions[1:]:
            result = abstraction.seq_abstract(result, nxt)
        report = abstraction.validate_abstract(result)
        if not report.ok:
            raise ActionValidationError(
                "composed action has no instantiation: " + "; ".join(report.messages())
            )
    name = args.name or f"{args.op}({','.join(args.actions)})"
    return domain.dumps({"states": list(dom.space.states), "actions": {name: domain.action_doc(result)}})


def cmd_check(args, fmt: str) -> tuple[str, bool]:
    from .oracle.suite import SuiteConfig, report_json, run_property_suite

    report = run_property_suite(SuiteConfig(args.suite, args.seed, args.cases))
    if fmt == "json":
        return report_json(report), report["ok"]
    rows = [["property", "cases", "passed", "failed"]]
    for p in report["properties"]:
        rows.append([p["name"], str(p["cases"]), str(p["passed"]), str(p["failed"])])
    verdict = "all properties pass" if report["ok"] else "FAILURES"
    return _table(rows) + f"suite {args.suite}, seed {args.seed}: {verdict}\n", report["ok"]


# -- argument parsing -----------------------------------------------------------

DEFAULT_FORMAT = {
    "validate": "table",
    "project": "json",
    "eui": "table",
    "eliminate": "table",
    "abstract": "json",
    "check": "json",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--format", choices=("json", "table"), default=default,
                        help="output format (default depends on the command)")
    parser.add_argument("--output", metavar="FILE", default=default, help="write output to FILE")
    parser.add_argument("--seed", type=int, default=argparse.SUPPRESS if suppress else 0,
                        help="random seed (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="affine-planner", description="Plan projection over affine-trees.")
    _globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        _globals(p, suppress=True)
        return p

    p = command("validate", "load and validate a domain file")
    p.add_argument("domain")

    p = command("project", "project a plan from a world")
    p.add_argument("domain")
    p.add_argument("--plan", required=True, help="plan name (or a single action name)")
    p.add_argument("--world", required=True)
    p.add_argument("--rule", type=int, choices=(1, 2, 3), default=3)

    p = command("eui", "expected-utility interval of a projected plan")
    p.add_argument("domain")
    p.add_argument("--plan", required=True)
    p.add_argument("--world", required=True)
    p.add_argument("--rule", type=int, choices=(2, 3), default=3)

    p = command("eliminate", "drop plans whose interval is dominated by another's")
    p.add_argument("domain")
    p.add_argument("--plans", nargs="+", required=True)
    p.add_argument("--world", required=True)
    p.add_argument("--rule", type=int, choices=(2, 3), default=3)

    p = command("abstract", "build an abstract action and print it as a domain fragment")
    p.add_argument("domain")
    p.add_argument("--op", required=True, choices=("bundle", "combine", "compose"))
    p.add_argument("actions", nargs="+", metavar="ACTION")
    p.add_argument("--groups", help="bundle groups of 0-based branch indices, e.g. '0,1;2' (default: all)")
    p.add_argument("--name", help="name of the emitted action")

    p = command("check", "run the seeded property suites")
    p.add_argument("--suite", choices=("lemmas", "theorems", "all"), default="all")
    p.add_argument("--cases", type=int, default=200, help="cases per property (default 200)")
    return parser


COMMANDS = {
    "validate": cmd_validate,
    "project": cmd_project,
    "eui": cmd_eui,
    "eliminate": cmd_eliminate,
    "abstract": cmd_abstract,
    "check": cmd_check,
}


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or DEFAULT_FORMAT[args.command]
    if args.command == "check" and args.cases < 0:
        parser.error("--cases must be nonnegative")
    try:
        out = COMMANDS[args.command](args, fmt)
    except UsageError as exc:
        print(f"affine-planner: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"affine-planner: invalid [{exc.rule}]: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except UnsupportedRuleError as exc:
        print(f"affine-planner: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ActionValidationError, PairingError, NotStandardizableError, AffinePlannerError) as exc:
        print(f"affine-planner: invalid [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return EXIT_INVALID
    ok = True
    if isinstance(out, tuple):
        out, ok = out
    try:
        _emit(out, args.output)
    except OSError as exc:
        print(f"affine-planner: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if ok else EXIT_SUITE


if __name__ == "__main__":
    sys.exit(main())
