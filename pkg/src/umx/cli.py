"""``umx`` command line.

Every command prints one JSON report on stdout::

    {"command": ..., "inputs": ..., "result": ..., "verdicts": [...]}

Exit codes: 0 success, 1 a theorem check failed, 2 not an ultrametric,
3 a hypothesis of the requested operation fails, 64 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import gen, suites
from .core import space_from_json
from .dynamics import (
    classify_theorem28,
    instance_json,
    map_from_json,
    probe_conjecture_115,
    probe_conjecture_210,
)
from .errors import (
    DomainMismatch,
    EmptySetError,
    PreconditionFailed,
    RatParseError,
    SpaceFormatError,
    TheoremViolation,
    UltrametricError,
    UnknownLabelError,
)
from .proximity import proximity_sets, theorem25_report

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_PRECONDITION = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_seed():
    raw = os.environ.get("UMX_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"UMX_SEED must be an integer, got {raw!r}") from None


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None


def _load_space(path):
    doc = _read_json(path)
    try:
        return space_from_json(doc)
    except (SpaceFormatError, RatParseError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _labels(text):
    return [x for x in (s.strip() for s in text.split(",")) if x]


def _pair(args, space):
    if args.pair:
        doc = _read_json(args.pair)
        if not isinstance(doc, dict) or "A" not in doc or "B" not in doc:
            raise UsageError(f'{args.pair}: pair document needs "A" and "B" arrays')
        A, B = doc["A"], doc["B"]
    elif args.A is not None and args.B is not None:
        A, B = _labels(args.A), _labels(args.B)
    else:
        raise UsageError("give --A and --B, or --pair FILE")
    for x in [*A, *B]:
        if x not in space:
            raise UnknownLabelError(x)
    if not A or not B:
        raise EmptySetError("A and B must be nonempty")
    return frozenset(A), frozenset(B)


def _report(command, inputs, result, verdicts=()):
    return {"command": command, "inputs": inputs, "result": result, "verdicts": list(verdicts)}


def _verdict(prop, ok, witness=None):
    return {"property": prop, "pass": bool(ok), "witness": None if ok else witness}


# -- commands --------------------------------------------------------------


def cmd_validate(args):
    inputs = {"space_file": args.space_file}
    try:
        space = _load_space(args.space_file)
    except UltrametricError as exc:
        doc = _read_json(args.space_file)
        result = {"valid": False, "violations": [v.to_json() for v in exc.violations]}
        return EXIT_INVALID, _report("validate", inputs, result, [_verdict("ultrametric", False, doc)])
    result = {"valid": True, "points": len(space)}
    return EXIT_OK, _report("validate", inputs, result, [_verdict("ultrametric", True)])


def cmd_proximity(args):
    space = _load_space(args.space_file)
    A, B = _pair(args, space)
    inputs = {"space_file": args.space_file, "A": sorted(A), "B": sorted(B)}
    rep = proximity_sets(space, A, B)
    t25 = theorem25_report(space, A, B)
    verdicts = [_verdict("thm25_equivalence", t25.equivalent, instance_json(space, A, B))]
    if rep.separated:
        ok = rep.B0 == B and bool(rep.A0)
        verdicts.append(_verdict("lemma21", ok, instance_json(space, A, B)))
    status = EXIT_OK if all(v["pass"] for v in verdicts) else EXIT_CHECK_FAILED
    return status, _report(
        "proximity", inputs, {"proximity": rep.to_json(), "theorem25": t25.to_json()}, verdicts
    )


def cmd_classify(args):
    space = _load_space(args.space_file)
    A, B = _pair(args, space)
    try:
        F = map_from_json(_read_json(args.map_file))
    except (SpaceFormatError, DomainMismatch) as exc:
        raise UsageError(f"{args.map_file}: {exc}") from None
    for x in F.domain:
        if x not in space:
            raise UnknownLabelError(x)
    inputs = {"space_file": args.space_file, "map_file": args.map_file, "A": sorted(A), "B": sorted(B)}
    try:
        cls = classify_theorem28(space, F, A, B)
    except PreconditionFailed as exc:
        print(f"umx classify: {exc}", file=sys.stderr)
        result = {"error": "PreconditionFailed", "hypothesis": exc.hypothesis, "detail": exc.detail}
        return EXIT_PRECONDITION, _report("classify", inputs, result)
    except TheoremViolation as exc:
        result = {"error": "TheoremViolation", "message": str(exc)}
        return EXIT_CHECK_FAILED, _report(
            "classify", inputs, result, [_verdict("thm28_classification", False, exc.instance)]
        )
    return EXIT_OK, _report("classify", inputs, cls.to_json(), [_verdict("thm28_classification", True)])


def cmd_check(args):
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    if args.max_points < 1:
        raise UsageError("--max-points must be at least 1")
    seed = _default_seed() if args.seed is None else args.seed
    inputs = {"suite": args.suite, "count": args.count, "seed": seed, "max_points": args.max_points}
    out = suites.run_suite(args.suite, args.count, seed, args.max_points)
    verdicts = []
    for name, res in out.items():
        for v in res["verdicts"]:
            verdicts.append({**v, "property": f"{name}.{v['property']}"})
    failures = sum(res["failures"] for res in out.values())
    result = {name: {"counters": res["counters"], "failures": res["failures"]} for name, res in out.items()}
    return (EXIT_OK if failures == 0 else EXIT_CHECK_FAILED), _report("check", inputs, result, verdicts)


def cmd_gen(args):
    if args.points < 1:
        raise UsageError("--points must be at least 1")
    seed = _default_seed() if args.seed is None else args.seed
    inputs = {"points": args.points, "seed": seed, "emit": args.emit, "branching": args.branching}
    try:
        space = gen.random_space(gen.GenConfig(n_points=args.points, seed=seed, branching=args.branching))
    except (gen.PoolTooShallow, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if args.emit == "space":
        return EXIT_OK, _report("gen", inputs, space.to_json())
    rng = gen.make_rng(seed, 1)
    A, B = suites.draw_separated(space, rng)
    if args.emit == "pair":
        return EXIT_OK, _report("gen", inputs, instance_json(space, A, B))
    F = gen.random_noncyclic_nonexpansive_map(space, A, B, rng)
    return EXIT_OK, _report("gen", inputs, instance_json(space, A, B, F))


def cmd_probe(args):
    if args.count < 1 or args.maps < 1:
        raise UsageError("--count and --maps must be at least 1")
    seed = _default_seed() if args.seed is None else args.seed
    inputs = {"conjecture": args.conjecture, "count": args.count, "maps": args.maps, "seed": seed}
    if args.conjecture == "115":
        if args.disjoint:
            raise UsageError("--disjoint only applies to --conjecture 210")
        res = probe_conjecture_115(args.count, args.maps, seed)
    else:
        inputs["disjoint"] = args.disjoint
        res = probe_conjecture_210(args.count, args.maps, seed, disjoint=args.disjoint)
    cex = res["counterexample"]
    verdicts = [_verdict(f"conjecture_{args.conjecture}_no_counterexample", cex is None, cex)]
    return EXIT_OK, _report("probe", inputs, res, verdicts)


def build_parser():
    p = _Parser(prog="umx", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("validate", help="check that a space file is an ultrametric")
    v.add_argument("space_file")
    v.set_defaults(func=cmd_validate)

    for name, func, helptext in (
        ("proximity", cmd_proximity, "proximity sets and best proximity pairs of (A, B)"),
        ("classify", cmd_classify, "classify a noncyclic nonexpansive map on a separated pair"),
    ):
        c = sub.add_parser(name, help=helptext)
        c.add_argument("space_file")
        if name == "classify":
            c.add_argument("map_file")
        c.add_argument("--A", help="comma-separated labels of A")
        c.add_argument("--B", help="comma-separated labels of B")
        c.add_argument("--pair", help='JSON file {"A": [...], "B": [...]}')
        c.set_defaults(func=func)

    k = sub.add_parser("check", help="run randomized theorem checks")
    k.add_argument("--suite", choices=[*suites.SUITES, "all"], default="all")
    k.add_argument("--count", type=int, default=100)
    k.add_argument("--seed", type=int, default=None)
    k.add_argument("--max-points", type=int, default=12)
    k.set_defaults(func=cmd_check)

    g = sub.add_parser("gen", help="emit a generated space, pair or map")
    g.add_argument("--points", type=int, required=True)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--emit", choices=["space", "pair", "map"], default="space")
    g.add_argument("--branching", type=int, default=3)
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("probe", help="search for counterexamples to a conjecture")
    r.add_argument("--conjecture", choices=["115", "210"], required=True)
    r.add_argument("--count", type=int, default=100)
    r.add_argument("--maps", type=int, default=1, help="maps per generated space")
    r.add_argument("--seed", type=int, default=None)
    r.add_argument("--disjoint", action="store_true", help="draw only pairs with A and B disjoint")
    r.set_defaults(func=cmd_probe)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status, report = args.func(args)
    except UsageError as exc:
        print(f"umx {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnknownLabelError, EmptySetError) as exc:
        print(f"umx {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UltrametricError as exc:
        print(f"umx {args.command}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
