"""Depth-first branch and bound over partial permutations."""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Callable

from precsched import bounds
from precsched.graph import TaskGraph, critical_path_length
from precsched.listsched import PriorityRule, list_schedule, priority_keys, priority_order
from precsched.schedule import PartialSolution, decode


class InvalidMachineCount(ValueError):
    pass


class TooLarge(ValueError):
    pass


class Bound(str, enum.Enum):
    FERNANDEZ = "fernandez"
    FUJITA = "fujita"
    NONE = "none"


class Status(str, enum.Enum):
    OPTIMAL = "Optimal"
    TIMED_OUT = "TimedOut"


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    nodes_pruned: int = 0
    incumbent_history: list[tuple[int, float]] = field(default_factory=list)
    status: Status = Status.TIMED_OUT
    elapsed: float = 0.0  # milliseconds
    lb_root: int = 0


_BOUNDS: dict[Bound, Callable[[TaskGraph, PartialSolution, int], int]] = {
    Bound.FERNANDEZ: bounds.fernandez_bound,
    Bound.FUJITA: bounds.fujita_bound,
}


def solve(
    g: TaskGraph,
    m: int,
    bound: Bound | str = Bound.FERNANDEZ,
    rule: PriorityRule | str = PriorityRule.HLFET,
    time_limit: float = 60.0,
) -> tuple[PartialSolution, SearchStats]:
    """Minimize makespan of ``g`` on ``m`` identical machines.

    Children are the ready vertices of a node, visited highest priority first.
    A child whose lower bound reaches the incumbent makespan is cut. The
    returned status is ``Optimal`` only when the whole tree was exhausted.
    """
    if m < 1:
        raise InvalidMachineCount(f"machine count must be >= 1, got {m}")
    if not g.is_normalized:
        raise ValueError("graph must have a unique source and sink; call normalize() first")
    bound = Bound(bound)
    lower = _BOUNDS.get(bound)
    rank = priority_order(priority_keys(g, rule))
    t_cp = critical_path_length(g)

    stats = SearchStats()
    t_start = time.perf_counter()
    deadline = t_start + time_limit

    def elapsed_ms() -> float:
        return (time.perf_counter() - t_start) * 1000.0

    root = PartialSolution.empty(m).extend(g, g.source_id)
    root_lb = lower(g, root, m) if lower else t_cp
    stats.lb_root = root_lb
    best: PartialSolution | None = None
    best_ms = float("inf")

    stack: list[tuple[PartialSolution, int]] = [(root, root_lb)]
    timed_out = False
    while stack:
        if time.perf_counter() > deadline:
            timed_out = True
            break
        x, lb = stack.pop()
        if lb >= best_ms:
            stats.nodes_pruned += 1
            continue
        stats.nodes_expanded += 1
        if len(x.perm) == g.n:
            best, best_ms = x, x.finish
            stats.incumbent_history.append((best_ms, elapsed_ms()))
            continue
        placed = x.scheduled
        ready = [
            v
            for v in g.vertices
            if v not in placed and all(u in placed for u in g.pred(v))
        ]
        # push lowest priority first so the best child pops next
        ready.sort(key=rank.__getitem__, reverse=True)
        for v in ready:
            child = x.extend(g, v)
            if len(child.perm) == g.n:
                child_lb = child.finish
            elif lower is not None:
                child_lb = lower(g, child, m)
            else:
                child_lb = 0
            if child_lb >= best_ms:
                stats.nodes_pruned += 1
                continue
            stack.append((child, child_lb))

    stats.elapsed = elapsed_ms()
    stats.status = Status.TIMED_OUT if timed_out else Status.OPTIMAL
    assert best is not None or timed_out
    if best is None:
        # timed out before the first leaf; that leaf is the list schedule
        best = list_schedule(g, m, rule)
        stats.incumbent_history.append((best.finish, stats.elapsed))
    return best, stats


def valid_permutations(g: TaskGraph):
    """Yield every precedence-respecting ordering of the vertices."""
    placed: list[int] = []
    done: set[int] = set()

    def rec():
        if len(placed) == g.n:
            yield tuple(placed)
            return
        for v in g.vertices:
            if v not in done and all(u in done for u in g.pred(v)):
                placed.append(v)
                done.add(v)
                yield from rec()
                placed.pop()
                done.discard(v)

    yield from rec()


def brute_force_opt(g: TaskGraph, m: int, cap: int = 8) -> int:
    """Best decoded makespan over all valid permutations (test oracle)."""
    real = g.n - len(g.added)
    if real > cap:
        raise TooLarge(f"{real} vertices exceeds the brute-force cap of {cap}")
    return min(decode(g, perm, m).finish for perm in valid_permutations(g))


def brute_force_opts(g: TaskGraph, machine_counts, cap: int = 8) -> dict[int, int]:
    """:func:`brute_force_opt` for several machine counts in one enumeration."""
    real = g.n - len(g.added)
    if real > cap:
        raise TooLarge(f"{real} vertices exceeds the brute-force cap of {cap}")
    best = {m: float("inf") for m in machine_counts}
    for perm in valid_permutations(g):
        for m in best:
            best[m] = min(best[m], decode(g, perm, m).finish)
    return best
