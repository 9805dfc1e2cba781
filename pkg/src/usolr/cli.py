"""Command-line entry point: ``usolr <subcommand> ...``.

Exit codes: 0 when a decision was rendered (YES or NO alike), 2 for bad
input, 3 when an exact search ran out of budget, 4 for an internal
invariant breach (including corpus disagreements).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import accumulation, augment, corpus, frmp, oracle, solver
from .config import format_configuration, parse_configuration
from .exceptions import (
    AlreadySolvable,
    AugmentationImpossible,
    CapExceeded,
    ConfigurationError,
    GraphParseError,
    USolRError,
    VerificationFailed,
)
from .graph import Graph, parse_graph

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_INTERNAL = 4


class Report:
    """Collects the JSON run report; keys keep insertion order."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.data: dict = {"command": args.command, "argv": list(args.argv)}
        self.data["inputs"] = {}
        self.timings: dict[str, float] = {}

    def digest(self, label: str, path: str) -> bytes:
        raw = Path(path).read_bytes()
        self.data["inputs"][label] = hashlib.sha256(raw).hexdigest()
        return raw

    def timed(self, phase: str, fn, *a, **kw):
        t0 = time.perf_counter()
        try:
            return fn(*a, **kw)
        finally:
            self.timings[phase] = round(time.perf_counter() - t0, 6)

    def emit(self, text_lines: list[str]) -> None:
        if getattr(self.args, "json", False):
            data = dict(self.data)
            if not self.args.no_timing:
                data["timings"] = self.timings
            print(json.dumps(data, indent=2))
        else:
            for line in text_lines:
                print(line)


def _load_graph(rep: Report, path: str) -> Graph:
    return parse_graph(rep.digest("graph", path).decode())


def _robots(args: argparse.Namespace, g: Graph) -> int:
    return g.n if args.p is None else args.p


def cmd_solve(args: argparse.Namespace) -> int:
    rep = Report(args)
    g = _load_graph(rep, args.graph)
    p = _robots(args, g)
    rep.data["p"] = p
    rep.data["seed"] = args.seed
    if args.algo == "rand":
        res = rep.timed("solve", solver.solve_randomized, g, p, args.seed, trials=args.trials, cap=args.cap)
    elif args.algo == "opt":
        res = rep.timed("solve", solver.solve_optimized, g, p, args.cap, block_shortcut=not args.verbatim)
    else:
        res = rep.timed("solve", solver.SOLVERS[args.algo], g, p, args.cap)
    rep.data["verdict"] = res.to_dict()
    rep.emit(["YES" if res.solvable else "NO", f"algorithm: {res.algorithm.value}", f"detail: {res.detail}"])
    return EXIT_OK


def cmd_feasible(args: argparse.Namespace) -> int:
    rep = Report(args)
    g = _load_graph(rep, args.graph)
    s = parse_configuration(rep.digest("source", args.source).decode(), g)
    t = parse_configuration(rep.digest("target", args.target).decode(), g)
    res = rep.timed("feasible", frmp.feasible, g, len(s), s, t, args.cap)
    out = res.to_dict()
    if not args.certificate:
        out.pop("certificate")
    rep.data["decision"] = out
    lines = [res.answer.value, f"method: {res.method.value}"]
    if args.certificate and res.certificate:
        lines.append(f"certificate: {json.dumps(res.certificate)}")
    rep.emit(lines)
    return EXIT_OK


def cmd_accumulate(args: argparse.Namespace) -> int:
    rep = Report(args)
    g = _load_graph(rep, args.graph)
    s = parse_configuration(rep.digest("configuration", args.configuration).decode(), g)
    res = rep.timed("accumulate", accumulation.accumulate, g, s)
    rep.data["final"] = list(res.final)
    rep.data["rounds"] = res.rounds
    if args.log:
        rep.data["moves"] = [list(m.path) for m in res.moves]
    lines = [format_configuration(res.final)]
    if args.log:
        lines += [" ".join(map(str, m.path)) for m in res.moves]
    rep.emit(lines)
    return EXIT_OK


def cmd_classes(args: argparse.Namespace) -> int:
    rep = Report(args)
    g = _load_graph(rep, args.graph)
    p = _robots(args, g)
    res = rep.timed("classes", oracle.equivalence_classes, g, p, args.cap)
    rep.data["report"] = res.to_dict()
    args.json = True  # the report is machine-readable by contract
    rep.emit([])
    return EXIT_OK


def cmd_augment(args: argparse.Namespace) -> int:
    rep = Report(args)
    g = _load_graph(rep, args.graph)
    p = _robots(args, g)
    rep.data["p"] = p
    if args.mode == "constructive":
        try:
            plan = rep.timed("augment", augment.augment_constructive, g, p, args.cap)
        except AlreadySolvable:
            rep.data["plan"] = None
            rep.data["already_solvable"] = True
            rep.emit(["ALREADY SOLVABLE"])
            return EXIT_OK
        found = (0, plan.beta_used, plan)
    elif args.alpha:
        found = rep.timed("augment", augment.min_vertex_edge_augmentation_bf, g, p, args.alpha, args.beta, args.cap)
    else:
        hit = rep.timed("augment", augment.min_edge_augmentation_bf, g, p, args.beta, args.cap)
        found = None if hit is None else (0, hit[0], hit[1])
    if found is None:
        rep.data["plan"] = None
        rep.emit(["NONE within budget"])
        return EXIT_OK
    plan = found[2]
    rep.data["plan"] = plan.to_dict()
    lines = [
        f"added_vertices: {plan.added_vertices}",
        f"added_edges: {' '.join(f'{u}-{v}' for u, v in plan.added_edges) or '-'}",
        f"method: {plan.method.value}",
        f"verified: {plan.verified.value if plan.verified else '-'}",
    ]
    rep.emit(lines)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    g = augment.generate(augment.FamilySpec.parse(args.family))
    text = g.to_text()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_corpus(args: argparse.Namespace) -> int:
    rep = Report(args)
    summary = rep.timed("corpus", corpus.run_corpus, args.n_max)
    rep.data["summary"] = summary.to_dict()
    lines = [
        f"instances: {summary.instances} (yes {summary.yes}, no {summary.no})",
        f"disagreements: {len(summary.disagreements)}",
        f"class size violations: {len(summary.class_size_violations)}",
        f"fraction violations: {len(summary.fraction_violations)}",
        f"sparsity violations: {len(summary.sparsity_violations)}",
    ]
    if args.rate_trials:
        rates = {}
        for name, g, p in (("C3", augment.generate(augment.FamilySpec.parse("cycle:3")), 3),
                           ("C4", augment.generate(augment.FamilySpec.parse("cycle:4")), 4)):
            truth = oracle.reachable_fraction(g, p)
            rate = corpus.randomized_yes_rate(g, p, args.rate_trials, args.seed)
            tol = corpus.binomial_tolerance(truth, args.rate_trials)
            ok = abs(float(rate) - float(truth)) <= tol
            rates[name] = {"rate": float(rate), "exact": str(truth), "tolerance": tol, "ok": ok}
            lines.append(f"randomized {name}: rate {float(rate):.4f} vs {truth} (+/-{tol:.4f}) {'ok' if ok else 'FAIL'}")
            if not ok:
                summary.disagreements.append({"rate_check": name, **rates[name]})
        rep.data["rates"] = rates
    for bad in summary.disagreements[:5]:
        lines.append(f"offending: {json.dumps(bad)}")
    rep.emit(lines)
    return EXIT_OK if summary.ok else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="usolr", description="Universal solvability of robot motion on graphs")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, robots=True, cap=True):
        sp.add_argument("--json", action="store_true", help="emit a JSON run report")
        sp.add_argument("--no-timing", action="store_true", help="omit timings from the JSON report")
        if robots:
            sp.add_argument("--p", type=int, default=None, help="robot count (default: |V|)")
        if cap:
            sp.add_argument("--cap", type=int, default=oracle.DEFAULT_STATE_CAP, help="state budget for exact search")

    sp = sub.add_parser("solve", help="decide universal solvability")
    sp.add_argument("graph")
    sp.add_argument("--algo", choices=sorted(solver.SOLVERS), default="opt")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--verbatim", action="store_true", help="optimized decider without the block shortcut")
    common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("feasible", help="decide reachability between two configurations")
    sp.add_argument("graph")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("--certificate", action="store_true")
    common(sp, robots=False)
    sp.set_defaults(func=cmd_feasible)

    sp = sub.add_parser("accumulate", help="accumulate a configuration onto V_p")
    sp.add_argument("graph")
    sp.add_argument("configuration")
    sp.add_argument("--log", action="store_true", help="print the move log, one move per line")
    common(sp, robots=False, cap=False)
    sp.set_defaults(func=cmd_accumulate)

    sp = sub.add_parser("classes", help="enumerate reachability classes (JSON)")
    sp.add_argument("graph")
    common(sp)
    sp.set_defaults(func=cmd_classes)

    sp = sub.add_parser("augment", help="make a graph universally solvable")
    sp.add_argument("graph")
    sp.add_argument("--mode", choices=["constructive", "exhaustive"], default="constructive")
    sp.add_argument("--beta", type=int, default=1)
    sp.add_argument("--alpha", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_augment)

    sp = sub.add_parser("gen", help="write a family graph, e.g. star:5, z:1,1, oddcactus:3,3")
    sp.add_argument("family")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("corpus", help="exhaustive cross-check over small graphs")
    sp.add_argument("--n-max", type=int, default=5)
    sp.add_argument("--rate-trials", type=int, default=0, help="also check randomized YES-rates on C3 and C4")
    sp.add_argument("--seed", type=int, default=0)
    common(sp, robots=False, cap=False)
    sp.set_defaults(func=cmd_corpus)
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    try:
        return args.func(args)
    except (GraphParseError, ConfigurationError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (VerificationFailed, AugmentationImpossible, USolRError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
