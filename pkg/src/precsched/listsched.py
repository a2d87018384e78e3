"""List scheduling with static priority rules."""

from __future__ import annotations

import enum
import heapq

from precsched.graph import TaskGraph, critical_path_length, descendants, hlfet_levels
from precsched.schedule import PartialSolution


class PriorityRule(str, enum.Enum):
    HLFET = "hlfet"
    LFT = "lft"
    MTS = "mts"


def priority_keys(g: TaskGraph, rule: PriorityRule | str) -> dict[int, int]:
    """Static per-vertex keys; a higher key means higher priority."""
    rule = PriorityRule(rule)
    levels = hlfet_levels(g)
    if rule is PriorityRule.HLFET:
        return levels
    if rule is PriorityRule.MTS:
        return {v: len(d) for v, d in descendants(g).items()}
    # latest finish against the critical-path horizon, negated
    t_cp = critical_path_length(g)
    return {v: -(t_cp - (levels[v] - g.c(v))) for v in g.vertices}


def priority_order(keys: dict[int, int]) -> dict[int, int]:
    """Rank of each vertex under (key descending, id ascending); 0 is best."""
    ranked = sorted(keys, key=lambda v: (-keys[v], v))
    return {v: i for i, v in enumerate(ranked)}


def list_schedule(g: TaskGraph, m: int, rule: PriorityRule | str = PriorityRule.HLFET) -> PartialSolution:
    rank = priority_order(priority_keys(g, rule))
    missing = {v: len(g.pred(v)) for v in g.vertices}
    ready = [(rank[v], v) for v in g.vertices if missing[v] == 0]
    heapq.heapify(ready)
    x = PartialSolution.empty(m)
    while ready:
        _, v = heapq.heappop(ready)
        x = x.extend(g, v)
        for w in g.succ(v):
            missing[w] -= 1
            if missing[w] == 0:
                heapq.heappush(ready, (rank[w], w))
    return x
