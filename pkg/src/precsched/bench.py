"""Benchmark harness: generate instances, solve them, tabulate completion rates."""

from __future__ import annotations

import csv
import hashlib
import io
import warnings
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from statistics import mean, median
from typing import Callable, Iterator, Sequence

from precsched.bnb import Bound, Status, solve
from precsched.formats import CSV_COLUMNS
from precsched.listsched import PriorityRule
from precsched.randgen import GenSpec, Unreachable, generate_instance


@dataclass(frozen=True)
class BenchPlan:
    sizes: Sequence[int] = tuple(range(12, 23))
    machine_counts: Sequence[int] = (2, 4, 8)
    per_size: int = 10
    time_limit: float = 10.0
    bounds: Sequence[str] = ("fernandez", "fujita")
    base_seed: int = 0
    order_strength: float = 0.1
    os_tolerance: float = 0.02
    weight_range: tuple[int, int] = (1, 10)
    priority: str = "hlfet"

    def __post_init__(self) -> None:
        if not self.sizes or not self.machine_counts or not self.bounds:
            raise ValueError("sizes, machine counts and bounds must be non-empty")
        if self.per_size < 1:
            raise ValueError("per_size must be >= 1")
        for b in self.bounds:
            Bound(b)
        PriorityRule(self.priority)

    def instance_seed(self, size: int, index: int) -> int:
        digest = hashlib.blake2b(f"{self.base_seed}:{size}:{index}".encode(), digest_size=8).digest()
        return int.from_bytes(digest, "big") >> 1


FULL_SCALE = dict(
    sizes=tuple(range(12, 26)),
    machine_counts=(4, 8, 16),
    per_size=30,
    time_limit=60.0,
)


@dataclass
class SummaryRow:
    n: int
    m: int
    bound: str
    total: int
    solved: int
    runtimes_ms: list[float] = field(default_factory=list)

    @property
    def percent(self) -> float:
        return 100.0 * self.solved / self.total if self.total else 0.0


def _job(args: tuple) -> dict:
    plan, size, index, m, bound = args
    seed = plan.instance_seed(size, index)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", Unreachable)
        inst = generate_instance(
            GenSpec(size, plan.order_strength, plan.os_tolerance, tuple(plan.weight_range), seed)
        )
    sched, stats = solve(inst.graph, m, bound, plan.priority, plan.time_limit)
    return {
        "instance": f"n{size:03d}_i{index:03d}",
        "n": size,
        "m": m,
        "bound": bound,
        "priority": plan.priority,
        "status": stats.status.value,
        "makespan": sched.finish,
        "lb_root": stats.lb_root,
        "nodes_expanded": stats.nodes_expanded,
        "nodes_pruned": stats.nodes_pruned,
        "time_ms": round(stats.elapsed, 3),
        "seed": seed,
    }


def jobs(plan: BenchPlan) -> Iterator[tuple]:
    for size in plan.sizes:
        for index in range(plan.per_size):
            for m in plan.machine_counts:
                for bound in plan.bounds:
                    yield plan, size, index, m, bound


def run_bench(
    plan: BenchPlan,
    csv_path: str | Path | None = None,
    *,
    workers: int = 1,
    progress: Callable[[dict], None] | None = None,
) -> tuple[list[dict], list[SummaryRow]]:
    """Solve every (size, index, m, bound) cell; rows come back in that order."""
    work = list(jobs(plan))
    rows: list[dict] = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for row in pool.map(_job, work):
                rows.append(row)
                if progress:
                    progress(row)
    else:
        for args in work:
            row = _job(args)
            rows.append(row)
            if progress:
                progress(row)
    if csv_path is not None:
        Path(csv_path).write_text(rows_to_csv(rows), encoding="utf-8", newline="")
    return rows, summarize(rows)


def rows_to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def read_csv(path: str | Path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def summarize(rows: Sequence[dict]) -> list[SummaryRow]:
    """Percent solved per (n, m, bound); runtimes only for solved instances."""
    cells: dict[tuple[int, int, str], SummaryRow] = {}
    for r in rows:
        key = (int(r["n"]), int(r["m"]), r["bound"])
        cell = cells.setdefault(key, SummaryRow(*key, total=0, solved=0))
        cell.total += 1
        if r["status"] == Status.OPTIMAL.value:
            cell.solved += 1
            cell.runtimes_ms.append(float(r["time_ms"]))
    return [cells[k] for k in sorted(cells)]


def completion_curves(summary: Sequence[SummaryRow]) -> dict[tuple[int, str], list[tuple[int, float]]]:
    """``(m, bound) -> [(n, percent), ...]`` sorted by n."""
    curves: dict[tuple[int, str], list[tuple[int, float]]] = defaultdict(list)
    for s in summary:
        curves[(s.m, s.bound)].append((s.n, s.percent))
    return {k: sorted(v) for k, v in sorted(curves.items())}


def format_summary(summary: Sequence[SummaryRow]) -> str:
    lines = [f"{'n':>4} {'m':>4} {'bound':<10} {'solved':>8} {'pct':>6} {'mean_ms':>10} {'median_ms':>10}"]
    for s in summary:
        rt = s.runtimes_ms
        mean_ms = f"{mean(rt):.1f}" if rt else "-"
        med_ms = f"{median(rt):.1f}" if rt else "-"
        lines.append(
            f"{s.n:>4} {s.m:>4} {s.bound:<10} {s.solved:>4}/{s.total:<3} {s.percent:>6.1f} {mean_ms:>10} {med_ms:>10}"
        )
    return "\n".join(lines)
