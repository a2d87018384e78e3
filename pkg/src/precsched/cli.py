"""Command-line entry point: ``precsched {generate,solve,bench,validate}``."""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from precsched import formats
from precsched.bench import FULL_SCALE, BenchPlan, format_summary, run_bench
from precsched.bnb import Bound, solve
from precsched.graph import GraphError, normalize, order_strength, topological_order
from precsched.listsched import PriorityRule
from precsched.randgen import GenSpec, Unreachable, generate_instance
from precsched.schedule import check_feasible

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors are invalid input, not internal errors
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    """``"4,8,16"`` or an inclusive range ``"12:25"``."""
    try:
        if ":" in text:
            lo, hi = (int(t) for t in text.split(":"))
            return list(range(lo, hi + 1))
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N,M,... or LO:HI, got {text!r}") from None


def _bound_list(text: str) -> list[str]:
    out = [t.strip() for t in text.split(",") if t.strip()]
    for b in out:
        try:
            Bound(b)
        except ValueError:
            raise argparse.ArgumentTypeError(f"unknown bound {b!r}") from None
    return out


def cmd_generate(args: argparse.Namespace) -> int:
    spec = GenSpec(
        n=args.n,
        target_os=args.order_strength,
        os_tolerance=args.tol,
        weight_range=(args.min_weight, args.max_weight),
        seed=args.seed,
    )
    inst = generate_instance(spec)
    if not inst.reached:
        print(
            f"warning: order strength {float(inst.order_strength):.4f} outside "
            f"{spec.target_os} +/- {spec.os_tolerance}",
            file=sys.stderr,
        )
    text = formats.write(inst.raw)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    g = normalize(formats.read_file(args.file))
    sched, stats = solve(g, args.machines, args.bound, args.priority, args.time_limit)
    print(f"makespan={sched.finish}")
    print(f"status={stats.status.value}")
    print(f"lb_root={stats.lb_root}")
    print(f"nodes_expanded={stats.nodes_expanded}")
    print(f"nodes_pruned={stats.nodes_pruned}")
    print(f"elapsed_ms={stats.elapsed:.3f}")
    if args.show_schedule:
        for v in sched.perm:
            p, tau = sched.assignment[v]
            print(f"task {v} machine {p} start {tau} end {tau + g.c(v)}")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    params = dict(
        sizes=args.sizes,
        machine_counts=args.machines,
        per_size=args.per_size,
        time_limit=args.time_limit,
    )
    if args.full_scale:
        params.update(FULL_SCALE)
    plan = BenchPlan(
        **params,
        bounds=args.bounds,
        base_seed=args.seed,
        order_strength=args.order_strength,
        priority=args.priority,
    )

    def progress(row: dict) -> None:
        if args.verbose:
            print(
                f"{row['instance']} m={row['m']} {row['bound']}: {row['status']} "
                f"makespan={row['makespan']} nodes={row['nodes_expanded']} {row['time_ms']:.0f}ms",
                file=sys.stderr,
                flush=True,
            )

    _, summary = run_bench(plan, args.csv, workers=args.workers, progress=progress)
    print(format_summary(summary))
    return EXIT_OK


def validate_report(text: str) -> tuple[bool, str]:
    """Parse and check a DAG document; returns ``(ok, one-line report)``."""
    try:
        raw = formats.parse(text)
    except (formats.ParseError, GraphError) as exc:
        return False, f"{type(exc).__name__}: {exc}"
    g = normalize(raw)
    problems = []
    if normalize(g) != g:
        problems.append("normalize is not idempotent")
    rank = topological_order(g)
    if any(rank[u] >= rank[v] for u, v in g.edges):
        problems.append("topological order violates an edge")
    if g.source_id is None or g.sink_id is None:
        problems.append("no unique source/sink after normalization")
    zero = [v for v in raw.vertices if raw.c(v) == 0 and v not in (g.source_id, g.sink_id)]
    if zero:
        problems.append(f"interior vertices with zero weight: {zero}")
    status = "OK" if not problems else "FAIL " + "; ".join(problems)
    report = f"n={raw.n} t_cp={g.t_cp} OS={float(order_strength(raw)):.3f} {status}"
    return not problems, report


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    ok, report = validate_report(text)
    print(report)
    return EXIT_OK if ok else EXIT_INPUT


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="precsched", description="Exact and heuristic P|prec|Cmax scheduling.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="write a random DAG instance")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--order-strength", type=float, default=0.1)
    gen.add_argument("--tol", type=float, default=0.02)
    gen.add_argument("--min-weight", type=int, default=1)
    gen.add_argument("--max-weight", type=int, default=10)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", help="output file (stdout if omitted)")
    gen.set_defaults(func=cmd_generate)

    sol = sub.add_parser("solve", help="branch and bound on a DAG file")
    sol.add_argument("file")
    sol.add_argument("--machines", "-m", type=int, required=True)
    sol.add_argument("--bound", choices=[b.value for b in Bound], default="fernandez")
    sol.add_argument("--priority", choices=[r.value for r in PriorityRule], default="hlfet")
    sol.add_argument("--time-limit", type=float, default=60.0)
    sol.add_argument("--show-schedule", action="store_true")
    sol.set_defaults(func=cmd_solve)

    ben = sub.add_parser("bench", help="run the completion-rate benchmark")
    ben.add_argument("--sizes", type=_int_list, default=list(range(12, 23)))
    ben.add_argument("--machines", type=_int_list, default=[2, 4, 8])
    ben.add_argument("--per-size", type=int, default=10)
    ben.add_argument("--time-limit", type=float, default=10.0)
    ben.add_argument("--bounds", type=_bound_list, default=["fernandez", "fujita"])
    ben.add_argument("--priority", choices=[r.value for r in PriorityRule], default="hlfet")
    ben.add_argument("--order-strength", type=float, default=0.1)
    ben.add_argument("--seed", type=int, default=0)
    ben.add_argument("--csv", help="write one row per solve to this path")
    ben.add_argument("--workers", type=int, default=1)
    ben.add_argument("--full-scale", action="store_true", help="sizes 12:25, m 4,8,16, 30 per size, 60 s")
    ben.add_argument("--verbose", "-v", action="store_true")
    ben.set_defaults(func=cmd_bench)

    val = sub.add_parser("validate", help="check a DAG file")
    val.add_argument("file")
    val.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", Unreachable)
            return args.func(args)
    except (formats.ParseError, GraphError, ValueError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
