"""Makespan lower bounds from forced work density.

For a horizon ``T`` every task ``u`` has an earliest completion ``mnEnd(u)``
and a latest start ``mxStart(u)``. Tasks in a partial solution are pinned at
their decoded start. The work that must fall inside an interval ``[ti, tj)``
under any schedule finishing by ``T`` is the minimum density ``R``; comparing
``R`` with machine capacity yields ``fernandez_bound`` and, by searching over
``T``, ``fujita_bound``.

Arrays in this module are indexed by ``vertex - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from precsched import _kernels
from precsched.graph import TaskGraph, critical_path_length
from precsched.schedule import PartialSolution


@dataclass(frozen=True)
class BoundContext:
    horizon: int
    mn_end: np.ndarray
    mx_start: np.ndarray
    events: np.ndarray  # sorted distinct values of mn_end, mx_start, 0 and horizon


def earliest_ends(g: TaskGraph, x: PartialSolution | None = None) -> np.ndarray:
    """Earliest completion of every task given the tasks pinned by ``x``."""
    mn = [0] * g.n
    a = x.assignment if x is not None else {}
    w, preds = g.weights, g.predecessors
    for v in g.topo:
        k = v - 1
        if v in a:
            mn[k] = a[v][1] + w[k]
        else:
            ready = 0
            for u in preds[k]:
                if mn[u - 1] > ready:
                    ready = mn[u - 1]
            mn[k] = ready + w[k]
    return np.array(mn, dtype=np.int64)


def latest_starts(g: TaskGraph, x: PartialSolution | None, horizon: int) -> np.ndarray:
    a = x.assignment if x is not None else {}
    mx = [0] * g.n
    w, succs = g.weights, g.successors
    for v in reversed(g.topo):
        k = v - 1
        if v in a:
            mx[k] = a[v][1]
        else:
            limit = horizon
            for s in succs[k]:
                if mx[s - 1] < limit:
                    limit = mx[s - 1]
            mx[k] = limit - w[k]
    return np.array(mx, dtype=np.int64)


def _context(g: TaskGraph, x: PartialSolution | None, horizon: int, mn: np.ndarray) -> BoundContext:
    mx = latest_starts(g, x, horizon)
    events = np.unique(np.concatenate((mn, mx, [0, horizon])))
    return BoundContext(horizon, mn, mx, events)


def build_context(g: TaskGraph, x: PartialSolution | None, horizon: int) -> BoundContext:
    return _context(g, x, horizon, earliest_ends(g, x))


def min_density(ctx: BoundContext, g: TaskGraph, ti: int, tj: int) -> int:
    """Work that every schedule meeting the horizon must run inside ``[ti, tj)``."""
    total = 0
    for k in range(g.n):
        end, start = int(ctx.mn_end[k]), int(ctx.mx_start[k])
        if ti < end and tj > start:
            total += max(0, min(end - ti, g.weights[k], tj - start, tj - ti))
    return total


def density_matrix(ctx: BoundContext, weights: np.ndarray) -> np.ndarray:
    """``R[i, j]`` for every event pair ``events[i] < events[j]``; zero elsewhere."""
    ev = ctx.events[:, None]
    # a task outside A* (or B*) gets a non-positive term, so clipping at 0
    # drops it from the sum; clipping at the weight covers the c(u) term
    after_start = np.clip(ctx.mn_end[None, :] - ev, 0, weights)  # mnEnd - ti
    before_end = np.clip(ev - ctx.mx_start[None, :], 0, weights)  # tj - mxStart
    length = np.maximum(ev.T - ev, 0)[:, :, None]
    overlap = np.minimum(after_start[:, None, :], before_end[None, :, :])
    np.minimum(overlap, length, out=overlap)
    return overlap.sum(axis=2)


def _lengths(ev: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    length = ev[None, :] - ev[:, None]
    return length, length > 0


def _machines_needed(ctx: BoundContext, weights: np.ndarray) -> int:
    R = density_matrix(ctx, weights)
    length, valid = _lengths(ctx.events)
    if not valid.any():
        return 0
    # ceil(R / len) with integer arithmetic
    need = -((-R[valid]) // length[valid])
    return int(need.max())


def _weights(g: TaskGraph) -> np.ndarray:
    w = g.__dict__.get("_weight_array")
    if w is None:
        w = np.asarray(g.weights, dtype=np.int64)
        g.__dict__["_weight_array"] = w  # per-graph cache; TaskGraph is frozen
    return w


def machines_lower(g: TaskGraph, x: PartialSolution | None, horizon: int) -> int:
    """Fewest machines that could finish every completion of ``x`` by ``horizon``."""
    return _machines_needed(build_context(g, x, horizon), _weights(g))


def base_horizon(g: TaskGraph, x: PartialSolution | None, mn: np.ndarray | None = None) -> int:
    """Critical path length, raised to the latest forced completion under ``x``."""
    if mn is None:
        mn = earliest_ends(g, x)
    return max(critical_path_length(g), int(mn.max()))


def _csr(adjacency) -> tuple[np.ndarray, np.ndarray]:
    ptr = np.zeros(len(adjacency) + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(a) for a in adjacency])
    idx = np.fromiter((v - 1 for a in adjacency for v in a), dtype=np.int64, count=int(ptr[-1]))
    return ptr, idx


def _kernel_graph(g: TaskGraph) -> tuple:
    cached = g.__dict__.get("_kernel_graph")
    if cached is None:
        topo = np.asarray([v - 1 for v in g.topo], dtype=np.int64)
        cached = (topo, *_csr(g.predecessors), *_csr(g.successors), _weights(g))
        g.__dict__["_kernel_graph"] = cached
    return cached


def _pinned(g: TaskGraph, x: PartialSolution | None) -> np.ndarray:
    start = np.full(g.n, -1, dtype=np.int64)
    if x is not None:
        for v, (_, tau) in x.assignment.items():
            start[v - 1] = tau
    return start


def _check_m(m: int) -> None:
    if m < 1:
        raise ValueError(f"machine count must be >= 1, got {m}")


def fernandez_bound(g: TaskGraph, x: PartialSolution | None, m: int) -> int:
    """Base horizon plus the largest per-interval work overflow on ``m`` machines."""
    _check_m(m)
    return int(_kernels.fernandez(*_kernel_graph(g), _pinned(g, x), critical_path_length(g), m))


def fujita_bound(g: TaskGraph, x: PartialSolution | None, m: int) -> int:
    """One past the largest horizon that ``m`` machines provably cannot meet.

    Doubles the slack above the base horizon until ``m`` machines suffice,
    then binary-searches the last infeasible horizon inside the final step.
    """
    _check_m(m)
    return int(_kernels.fujita(*_kernel_graph(g), _pinned(g, x), critical_path_length(g), m))


# Reference implementations on top of ``density_matrix``. The search uses the
# compiled versions above; these exist so tests can cross-check the two.


def fernandez_bound_ref(g: TaskGraph, x: PartialSolution | None, m: int) -> int:
    _check_m(m)
    mn = earliest_ends(g, x)
    t0 = base_horizon(g, x, mn)
    ctx = _context(g, x, t0, mn)
    R = density_matrix(ctx, _weights(g))
    length, valid = _lengths(ctx.events)
    if not valid.any():
        return t0
    # ceil(R/m - len) == ceil((R - m*len) / m)
    excess = -((m * length[valid] - R[valid]) // m)
    return t0 + max(0, int(excess.max()))


def fujita_bound_ref(g: TaskGraph, x: PartialSolution | None, m: int) -> int:
    _check_m(m)
    w = _weights(g)
    mn = earliest_ends(g, x)
    t0 = base_horizon(g, x, mn)

    def infeasible(T: int) -> bool:
        return _machines_needed(_context(g, x, T, mn), w) > m

    if not infeasible(t0):
        return t0
    delta = 1
    while infeasible(t0 + delta):
        delta *= 2
    lo, hi = t0 + delta // 2, t0 + delta  # lo infeasible, hi feasible
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if infeasible(mid):
            lo = mid
        else:
            hi = mid
    return lo + 1
