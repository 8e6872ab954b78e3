"""Command-line front end: ``nrsched {solve,gen,bench,verify}``.

Exit codes: 0 success, 1 usage error, 2 parse/invariant error,
3 solver error (cap exceeded, infeasible, model mismatch).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InvalidProfile, InvariantViolation, ParseError, SchedulingError
from .evaluator import check_compact_feasible, check_feasible, compact_objective, objective
from .exact_dp import dp_solve
from .formats import format_instance, format_schedule, parse_instance, parse_schedule
from .fptas import fptas_solve, parse_eps
from .fptas_hme import hme_fptas_solve
from .greedy import lower_bounds, spt_list, weight_order_list
from .instgen import Profile, gen_partition_reduction, gen_random, gen_tight_pair
from .model import CompactSchedule, Instance, SolveReport, expand_hme
from .oracle import PERMUTATION_CAP, assignment_oracle, permutation_oracle

ALGORITHMS = ("spt", "wgreedy", "dp", "fptas", "fptas-hme", "oracle")
DEFAULT_EPS = Fraction(1, 2)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_SOLVER = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def solve(inst: Instance, algo: str, eps=None) -> SolveReport:
    """Dispatch to one algorithm by its CLI name."""
    if algo == "spt":
        return spt_list(inst)
    if algo == "wgreedy":
        return weight_order_list(inst)
    if algo == "dp":
        return dp_solve(inst)
    if algo == "fptas":
        return fptas_solve(inst, DEFAULT_EPS if eps is None else eps)
    if algo == "fptas-hme":
        return hme_fptas_solve(inst, DEFAULT_EPS if eps is None else eps)
    if algo == "oracle":
        return permutation_oracle(inst)
    raise UsageError(f"unknown algorithm {algo!r}")


def _fmt_fraction(x: Optional[Fraction]) -> Optional[str]:
    return None if x is None else str(x)


def report_text(report: SolveReport) -> str:
    head = [f"# algorithm {report.algorithm}"]
    if report.guarantee is not None:
        head.append(f"# guarantee {report.guarantee}")
    for name, value in report.lower_bounds.items():
        head.append(f"# lower_bound {name} {value}")
    head += [f"# warning {w}" for w in report.warnings]
    return "\n".join(head) + "\n" + format_schedule(report.schedule, report.objective)


def report_json_lines(report: SolveReport) -> str:
    rows = [
        {
            "kind": "report",
            "algorithm": report.algorithm,
            "objective": report.objective,
            "guarantee": _fmt_fraction(report.guarantee),
            "lower_bounds": report.lower_bounds,
            "warnings": list(report.warnings),
        }
    ]
    if isinstance(report.schedule, CompactSchedule):
        rows += [
            {"kind": "block", "period": b.period + 1, "class": b.cls + 1, "t": b.t, "count": b.count}
            for b in report.schedule.blocks
        ]
    else:
        rows += [{"kind": "start", "job": j + 1, "t": t} for j, t in enumerate(report.schedule.start)]
    return "".join(json.dumps(r) + "\n" for r in rows)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _eps_arg(text: str) -> Fraction:
    try:
        return parse_eps(text)
    except SchedulingError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.input))
    report = solve(inst, args.algo, args.eps)
    text = report_json_lines(report) if args.report == "json-lines" else report_text(report)
    sys.stdout.write(text)
    if args.output:
        _write(args.output, format_schedule(report.schedule, report.objective))
    return EXIT_OK


def cmd_gen(args) -> int:
    header = ""
    if args.family == "tight":
        inst = gen_tight_pair(args.w, args.eps_gap)
    elif args.family == "partition":
        if not args.items:
            raise UsageError("--items is required for the partition family")
        items = [int(x) for x in args.items.split(",")]
        red = gen_partition_reduction(items)
        inst = red.instance
        header = f"# threshold {red.threshold}\n"
    else:
        profile = args.family
        if args.family == "uniform_a":
            profile = f"uniform_a({args.abar})"
        elif args.family == "hme":
            profile = f"hme({args.h})"
        inst = gen_random(
            args.seed,
            args.n,
            args.q,
            profile,
            pmax=args.pmax,
            surplus=args.surplus,
            unit_weights=args.unit_weights,
        )
    _write(args.output, header + format_instance(inst))
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = parse_instance(_read(args.input))
    if inst.is_hme:
        sched, claimed = parse_schedule(_read(args.schedule))
        if not isinstance(sched, CompactSchedule):
            inst = expand_hme(inst)
    else:
        sched, claimed = parse_schedule(_read(args.schedule), n=inst.n)
        if isinstance(sched, CompactSchedule):
            raise ParseError(0, "block schedules need an HME instance")
    if isinstance(sched, CompactSchedule):
        result = check_compact_feasible(inst, sched)
    else:
        result = check_feasible(inst, sched)
    if not result:
        print(f"infeasible: {result.violation}")
        return EXIT_SOLVER
    if isinstance(sched, CompactSchedule):
        value = compact_objective(inst, sched)
    else:
        value = objective(inst, sched)
    print("feasible")
    print(f"objective {value}")
    if claimed is not None and claimed != value:
        print(f"# note: file claims objective {claimed}")
    return EXIT_OK


BENCH_DEFAULT_ALGO = {"unit_p_w_eq_a": "wgreedy", "uniform_a": "spt", "hme": "fptas-hme", "general": "oracle"}


def _bench_row(task):
    idx, inst, algo, eps = task
    result = solve(inst, algo, eps)
    if algo == "oracle" and not inst.is_hme:
        reference = assignment_oracle(inst)
    elif inst.n <= PERMUTATION_CAP:
        reference = permutation_oracle(inst).objective
    else:
        reference = dp_solve(inst).objective
    try:
        bounds = lower_bounds(inst)
    except SchedulingError:
        bounds = {}
    return idx, result.objective, reference, bounds


def cmd_bench(args) -> int:
    algo = args.algo or BENCH_DEFAULT_ALGO[args.family]
    profile = {"uniform_a": f"uniform_a({args.abar})", "hme": f"hme({args.h})"}.get(args.family, args.family)
    unit = args.unit_weights or algo == "spt"
    tasks = []
    for idx in range(args.count):
        seed = args.seed * 1_000_003 + idx
        inst = gen_random(seed, args.n, args.q, profile, pmax=args.pmax, unit_weights=unit)
        tasks.append((idx, inst, algo, args.eps))
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_bench_row, tasks))
    else:
        rows = [_bench_row(t) for t in tasks]
    rows.sort(key=lambda r: r[0])
    ratios = []
    out = []
    if args.report == "json-lines":
        for idx, value, ref, bounds in rows:
            ratio = Fraction(value, ref)
            ratios.append(ratio)
            out.append(json.dumps({"id": idx, "algorithm": algo, "value": value, "reference": ref,
                                   "ratio": float(ratio), "lower_bounds": bounds}))
        out.append(json.dumps({"summary": True, "count": len(rows), "max_ratio": float(max(ratios)),
                               "mean_ratio": float(sum(ratios) / len(ratios))}))
    else:
        out.append(f"{'id':>5} {'value':>10} {'reference':>10} {'ratio':>9} {'spt_lb':>8} {'supply_lb':>9}")
        for idx, value, ref, bounds in rows:
            ratio = Fraction(value, ref)
            ratios.append(ratio)
            out.append(
                f"{idx:>5} {value:>10} {ref:>10} {float(ratio):>9.6f} "
                f"{bounds.get('spt', '-'):>8} {bounds.get('supply', '-'):>9}"
            )
        out.append(
            f"summary algorithm={algo} count={len(rows)} "
            f"max_ratio={float(max(ratios)):.6f} mean_ratio={float(sum(ratios) / len(ratios)):.6f}"
        )
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nrsched", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("--algo", choices=ALGORITHMS, required=True)
    p.add_argument("--input", required=True, help="instance file, '-' for stdin")
    p.add_argument("--eps", type=_eps_arg, default=None, help="accuracy, e.g. 1/4 or 0.25")
    p.add_argument("--output", help="also write the schedule to this file")
    p.add_argument("--report", choices=("text", "json-lines"), default="text")
    p.set_defaults(func=cmd_solve)

    families = ("uniform_a", "unit_p_w_eq_a", "general", "hme")
    g = sub.add_parser("gen", help="generate an instance file")
    g.add_argument("--family", choices=families + ("tight", "partition"), required=True)
    g.add_argument("--n", type=int, default=6)
    g.add_argument("--q", type=int, default=2)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--abar", type=int, default=1)
    g.add_argument("--h", type=int, default=2)
    g.add_argument("--pmax", type=int, default=9)
    g.add_argument("--surplus", type=int, default=0)
    g.add_argument("--unit-weights", action="store_true")
    g.add_argument("--w", type=int, default=10, help="tight family weight")
    g.add_argument("--eps-gap", type=int, default=1, help="tight family weight gap")
    g.add_argument("--items", help="partition family item sizes, comma separated")
    g.add_argument("--output")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="compare an algorithm with the exact optimum on random instances")
    b.add_argument("--family", choices=families, required=True)
    b.add_argument("--algo", choices=ALGORITHMS)
    b.add_argument("--n", type=int, default=6)
    b.add_argument("--q", type=int, default=2)
    b.add_argument("--count", type=int, default=20)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--abar", type=int, default=1)
    b.add_argument("--h", type=int, default=2)
    b.add_argument("--pmax", type=int, default=9)
    b.add_argument("--eps", type=_eps_arg, default=None)
    b.add_argument("--unit-weights", action="store_true")
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--report", choices=("text", "json-lines"), default="text")
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="check a schedule file against an instance")
    v.add_argument("--input", required=True)
    v.add_argument("--schedule", required=True)
    v.set_defaults(func=cmd_verify)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"nrsched: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, InvariantViolation, InvalidProfile) as exc:
        print(f"nrsched: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SchedulingError as exc:
        print(f"nrsched: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
