"""Command-line front end.

Exit codes: 0 success or capture, 1 verification failure, 2 invalid input,
3 round budget exhausted, 4 invariant violation, 5 oracle state cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .corpus import from_recipe
from .game import (
    EXIT_BUDGET,
    EXIT_CAP,
    EXIT_CAPTURE,
    EXIT_INVALID,
    EXIT_INVARIANT,
    Arena,
    GreedyCops,
    GreedyRobber,
    IllegalMove,
    InteractiveRobber,
    RandomRobber,
    StallRobber,
    run,
)
from .graph_model import (
    InvalidGraph,
    augment_kites,
    detect_x_crossings,
    load_graph,
    planarize,
    validate,
)
from .oracle import DEFAULT_CAP, OracleCapExceeded, OracleCops, OracleRobber, cop_number, solve
from .strategy import SQUAD_SIZE, SQUADS, GammaStrategy, InvariantViolation, Strategy21
from .verify import round_budget, run_suites, standard_robbers

EXIT_FAILED = 1


class UsageError(Exception):
    pass


def _graph(args):
    if bool(args.graph) == bool(args.recipe):
        raise UsageError("give exactly one of --graph and --recipe")
    try:
        g = load_graph(args.graph) if args.graph else from_recipe(args.recipe)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read graph: {exc}") from exc
    return g


def _dump(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def cmd_validate(args) -> int:
    g = _graph(args)
    rep = validate(g)
    for v in rep:
        print(f"{v.code}: {v.message}")
    if rep:
        return EXIT_INVALID
    print(f"ok: {len(g.vertices)} vertices, {len(g.edges)} edges, {len(g.crossings)} crossings")
    return 0


def cmd_planarize(args) -> int:
    g = _graph(args)
    p = planarize(g)
    _dump(
        {
            "vertices": list(p.vertices),
            "dummies": {str(d): list(p.crossing_edges_at(d)) for d in p.dummies},
            "edges": [[xid, a, b, base] for xid, (a, b, base) in sorted(p.xedges.items())],
        }
    )
    return 0


def cmd_detect(args) -> int:
    g = _graph(args)
    planarize(g)
    xs = detect_x_crossings(g)
    out = {"x_crossings": [list(g.crossings[i]) for i in xs], "gamma": len(xs)}
    if not xs:
        _, kites = augment_kites(g)
        out["kites"] = [
            {"crossing": k.crossing, "edge": k.edge, "ends": list(k.ends), "inserted": k.inserted}
            for k in kites
        ]
    _dump(out)
    return 0


def _cops(args, g):
    name = args.cops
    if name in ("strategy21", "gamma21"):
        if not g.is_connected():
            raise UsageError("strategy21 needs a connected graph")
        gamma = len(detect_x_crossings(g))
        strat = GammaStrategy(g) if gamma else Strategy21(g)
        return strat, args.cop_count or strat.cop_total
    if name == "greedy":
        return GreedyCops(), args.cop_count or 1
    if name == "oracle":
        k = args.cop_count or cop_number(g, args.max_cops)
        if k is None:
            raise UsageError(f"more than {args.max_cops} cops needed; pass --cop-count")
        return OracleCops(solve(g, k)), k
    raise UsageError(f"unknown cop strategy {name!r}")


def _robber(args, g, k):
    name = args.robber
    if name == "greedy":
        return GreedyRobber()
    if name == "random":
        return RandomRobber(args.seed)
    if name == "stall":
        return StallRobber()
    if name == "oracle":
        return OracleRobber(solve(g, k))
    if name == "interactive":
        return InteractiveRobber(sys.stdin, sys.stderr)
    raise UsageError(f"unknown robber strategy {name!r}")


def _simulate_one(g, cops, k, robber, budget, seed, trace_path):
    header = {"seed": seed}
    try:
        trace = run(Arena(g), cops, robber, k, budget, header=header)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        if trace_path:
            Path(trace_path).write_text(
                json.dumps({"type": "violation", "code": exc.code, "message": str(exc)}) + "\n"
            )
        return EXIT_INVARIANT, None
    if trace_path:
        trace.write(trace_path)
    code = EXIT_CAPTURE if trace.outcome == "captured" else EXIT_BUDGET
    return code, trace


def cmd_simulate(args) -> int:
    g = _graph(args)
    rep = validate(g)
    if rep:
        raise UsageError(f"invalid graph: {rep.violations[0].message}")
    cops, k = _cops(args, g)
    robber = _robber(args, g, k)
    budget = args.budget or round_budget(g)
    code, trace = _simulate_one(g, cops, k, robber, budget, args.seed, args.trace)
    if trace is not None:
        if trace.outcome == "captured":
            print(f"captured in round {trace.capture_round}")
        else:
            print(f"no capture within {budget} rounds")
    return code


def cmd_solve(args) -> int:
    g = _graph(args)
    c = cop_number(g, args.max_cops, cap=args.cap)
    print(c if c is not None else f"> {args.max_cops}")
    return 0


def cmd_generate(args) -> int:
    g = _graph(args)
    text = g.dumps()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _batch_job(recipe: str, robber_index: int, trace_dir):
    g = from_recipe(recipe)
    gamma = len(detect_x_crossings(g))
    cops = GammaStrategy(g) if gamma else Strategy21(g)
    robber = standard_robbers()[robber_index]
    trace_path = None
    if trace_dir:
        safe = recipe.replace(":", "_").replace("=", "")
        trace_path = Path(trace_dir) / f"{safe}__{robber.name.replace(':', '')}.jsonl"
    code, trace = _simulate_one(g, cops, cops.cop_total, robber, round_budget(g), 0, trace_path)
    return {
        "recipe": recipe,
        "robber": robber.name,
        "exit": code,
        "capture_round": None if trace is None else trace.capture_round,
    }


def cmd_batch(args) -> int:
    recipes = list(args.recipe or [])
    if args.recipes_file:
        recipes += [ln.strip() for ln in Path(args.recipes_file).read_text().splitlines() if ln.strip()]
    if not recipes:
        raise UsageError("batch needs --recipe or --recipes-file")
    if args.trace_dir:
        Path(args.trace_dir).mkdir(parents=True, exist_ok=True)
    jobs = [(r, i) for r in recipes for i in range(len(standard_robbers()))]
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        results = list(pool.map(lambda j: _batch_job(j[0], j[1], args.trace_dir), jobs))
    for res in results:
        print(json.dumps(res, sort_keys=True))
    return max((res["exit"] for res in results), default=0)


def cmd_verify(args) -> int:
    from .verify import default_corpus

    results = run_suites(args.suite, default_corpus(args.seeds), args.mutate)
    report = [r.to_dict() for r in results]
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status} {r.name}: {r.checked} checks, {len(r.failures)} failures")
        for f in r.failures[:5]:
            print(f"    {f}")
    if args.report:
        Path(args.report).write_text(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return 0 if all(r.ok for r in results) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="copshield", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def graph_opts(p):
        p.add_argument("--graph", help="graph JSON file")
        p.add_argument("--recipe", help="generator recipe, e.g. ghat:n=20:seed=7 or named:K4X")

    for name, fn, helptext in (
        ("validate", cmd_validate, "check a graph file"),
        ("planarize", cmd_planarize, "print the planarization"),
        ("detect", cmd_detect, "list x-crossings and kite edges"),
    ):
        p = sub.add_parser(name, help=helptext)
        graph_opts(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("simulate", help="play one game")
    graph_opts(p)
    p.add_argument("--cops", default="strategy21", choices=["strategy21", "gamma21", "greedy", "oracle"])
    p.add_argument("--cop-count", type=int)
    p.add_argument(
        "--robber", default="greedy", choices=["greedy", "random", "stall", "oracle", "interactive"]
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, help="round budget (default 50*|V(G^x)|^2)")
    p.add_argument("--trace", help="write a JSON-Lines trace here")
    p.add_argument("--max-cops", type=int, default=4)
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("solve", help="exact cop number")
    graph_opts(p)
    p.add_argument("--max-cops", type=int, default=4)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="state-space cap")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("generate", help="write a generated graph")
    graph_opts(p)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("batch", help="strategy21 against the standard robbers on many graphs")
    p.add_argument("--recipe", action="append")
    p.add_argument("--recipes-file")
    p.add_argument("--jobs", type=int, default=4)
    p.add_argument("--trace-dir")
    p.set_defaults(fn=cmd_batch)

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--suite", action="append", help="suite name (repeatable)")
    p.add_argument("--mutate", choices=["remove-kites"])
    p.add_argument("--seeds", type=int, default=40, help="generated graphs in the corpus")
    p.add_argument("--report", help="write the JSON report here")
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, InvalidGraph, IllegalMove, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OracleCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
