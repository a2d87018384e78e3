"""Compiled inner loops for the bounds evaluated at every search node.

Graph structure is passed as CSR arrays over 0-based vertex indices; ``start``
holds the pinned start time of scheduled tasks and -1 elsewhere.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def earliest_ends(topo, pred_ptr, pred_idx, w, start):
    n = w.shape[0]
    mn = np.empty(n, dtype=np.int64)
    for t in range(n):
        v = topo[t]
        if start[v] >= 0:
            mn[v] = start[v] + w[v]
        else:
            ready = 0
            for e in range(pred_ptr[v], pred_ptr[v + 1]):
                u = pred_idx[e]
                if mn[u] > ready:
                    ready = mn[u]
            mn[v] = ready + w[v]
    return mn


@njit(cache=True)
def latest_starts(topo, succ_ptr, succ_idx, w, start, horizon):
    n = w.shape[0]
    mx = np.empty(n, dtype=np.int64)
    for t in range(n - 1, -1, -1):
        v = topo[t]
        if start[v] >= 0:
            mx[v] = start[v]
        else:
            limit = horizon
            for e in range(succ_ptr[v], succ_ptr[v + 1]):
                s = succ_idx[e]
                if mx[s] < limit:
                    limit = mx[s]
            mx[v] = limit - w[v]
    return mx


@njit(cache=True)
def scan_intervals(mn, mx, w, horizon, m):
    """Max over event pairs of ceil(R/len) and of ceil(R/m - len)."""
    n = w.shape[0]
    ev = np.empty(2 * n + 2, dtype=np.int64)
    ev[:n] = mn
    ev[n : 2 * n] = mx
    ev[2 * n] = 0
    ev[2 * n + 1] = horizon
    ev = np.unique(ev)
    need = 0
    excess = -(1 << 62)
    for i in range(ev.shape[0]):
        ti = ev[i]
        for j in range(i + 1, ev.shape[0]):
            tj = ev[j]
            length = tj - ti
            r = 0
            for k in range(n):
                a = mn[k] - ti
                if a <= 0:
                    continue
                b = tj - mx[k]
                if b <= 0:
                    continue
                o = min(a, w[k], b, length)
                r += o
            q = -((-r) // length)
            if q > need:
                need = q
            e = -((m * length - r) // m)
            if e > excess:
                excess = e
    return need, excess


@njit(cache=True)
def fernandez(topo, pred_ptr, pred_idx, succ_ptr, succ_idx, w, start, t_cp, m):
    mn = earliest_ends(topo, pred_ptr, pred_idx, w, start)
    t0 = max(t_cp, mn.max())
    mx = latest_starts(topo, succ_ptr, succ_idx, w, start, t0)
    _, excess = scan_intervals(mn, mx, w, t0, m)
    return t0 + max(0, excess)


@njit(cache=True)
def _infeasible(topo, succ_ptr, succ_idx, w, start, mn, horizon, m):
    mx = latest_starts(topo, succ_ptr, succ_idx, w, start, horizon)
    need, _ = scan_intervals(mn, mx, w, horizon, m)
    return need > m


@njit(cache=True)
def fujita(topo, pred_ptr, pred_idx, succ_ptr, succ_idx, w, start, t_cp, m):
    mn = earliest_ends(topo, pred_ptr, pred_idx, w, start)
    t0 = max(t_cp, mn.max())
    if not _infeasible(topo, succ_ptr, succ_idx, w, start, mn, t0, m):
        return t0
    delta = 1
    while _infeasible(topo, succ_ptr, succ_idx, w, start, mn, t0 + delta, m):
        delta *= 2
    lo = t0 + delta // 2
    hi = t0 + delta
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _infeasible(topo, succ_ptr, succ_idx, w, start, mn, mid, m):
            lo = mid
        else:
            hi = mid
    return lo + 1
