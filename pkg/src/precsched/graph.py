"""Weighted task DAGs: construction, normalization, levels and order strength."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Base class for invalid task graphs."""


class CycleError(GraphError):
    pass


class InvalidEdge(GraphError):
    pass


class InvalidWeight(GraphError):
    pass


@dataclass(frozen=True, eq=True)
class TaskGraph:
    """Immutable DAG over vertex ids ``1..n``.

    ``weights[v - 1]`` is the cost of vertex ``v``; ``successors[v - 1]`` and
    ``predecessors[v - 1]`` are sorted id tuples. ``source_id``/``sink_id`` are
    set only when the graph has a unique source and a unique sink.
    """

    n: int
    weights: tuple[int, ...]
    successors: tuple[tuple[int, ...], ...]
    predecessors: tuple[tuple[int, ...], ...]
    source_id: int | None = None
    sink_id: int | None = None
    # ids of vertices that normalize() added; excluded from order strength
    added: frozenset[int] = field(default=frozenset(), compare=False)

    def c(self, v: int) -> int:
        return self.weights[v - 1]

    def succ(self, v: int) -> tuple[int, ...]:
        return self.successors[v - 1]

    def pred(self, v: int) -> tuple[int, ...]:
        return self.predecessors[v - 1]

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.vertices for v in self.succ(u)]

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    @property
    def sources(self) -> list[int]:
        return [v for v in self.vertices if not self.pred(v)]

    @property
    def sinks(self) -> list[int]:
        return [v for v in self.vertices if not self.succ(v)]

    @property
    def is_normalized(self) -> bool:
        return self.source_id is not None and self.sink_id is not None

    @cached_property
    def topo(self) -> tuple[int, ...]:
        """Vertices in lowest-id-first topological order."""
        return tuple(_kahn(self))

    @cached_property
    def levels(self) -> dict[int, int]:
        level: dict[int, int] = {}
        for u in reversed(self.topo):
            level[u] = self.c(u) + max((level[v] for v in self.succ(u)), default=0)
        return level

    @cached_property
    def t_cp(self) -> int:
        if self.source_id is not None:
            return self.levels[self.source_id]
        return max(self.levels.values())


def build_graph(
    n: int,
    weights: Sequence[int],
    edges: Iterable[tuple[int, int]],
    *,
    added: Iterable[int] = (),
) -> TaskGraph:
    """Validate and build a TaskGraph. No normalization is applied."""
    if n < 1:
        raise GraphError(f"vertex count must be >= 1, got {n}")
    weights = tuple(int(w) for w in weights)
    if len(weights) != n:
        raise GraphError(f"expected {n} weights, got {len(weights)}")
    for v, w in enumerate(weights, start=1):
        if w < 0:
            raise InvalidWeight(f"vertex {v} has negative weight {w}")

    succ: list[set[int]] = [set() for _ in range(n)]
    pred: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise InvalidEdge(f"edge ({u}, {v}) has an endpoint outside 1..{n}")
        if u == v:
            raise InvalidEdge(f"self-loop on vertex {u}")
        if v in succ[u - 1]:
            raise InvalidEdge(f"duplicate edge ({u}, {v})")
        succ[u - 1].add(v)
        pred[v - 1].add(u)

    successors = tuple(tuple(sorted(s)) for s in succ)
    predecessors = tuple(tuple(sorted(p)) for p in pred)
    srcs = [v for v in range(1, n + 1) if not predecessors[v - 1]]
    snks = [v for v in range(1, n + 1) if not successors[v - 1]]
    g = TaskGraph(
        n=n,
        weights=weights,
        successors=successors,
        predecessors=predecessors,
        source_id=srcs[0] if len(srcs) == 1 else None,
        sink_id=snks[0] if len(snks) == 1 else None,
        added=frozenset(added),
    )
    # raises CycleError when no topological order exists
    _kahn(g)
    return g


def _kahn(g: TaskGraph) -> list[int]:
    indeg = [len(p) for p in g.predecessors]
    heap = [v for v in g.vertices if indeg[v - 1] == 0]
    heapq.heapify(heap)
    order: list[int] = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for v in g.succ(u):
            indeg[v - 1] -= 1
            if indeg[v - 1] == 0:
                heapq.heappush(heap, v)
    if len(order) != g.n:
        stuck = sorted(v for v in g.vertices if indeg[v - 1] > 0)
        raise CycleError(f"graph has a cycle through vertices {stuck}")
    return order


def normalize(g: TaskGraph) -> TaskGraph:
    """Return ``g`` with a single source and a single sink.

    A weight-0 source is prepended (as id ``n + 1``) when several vertices have
    no predecessors, and a weight-0 sink is appended likewise. A graph that
    already has a unique source and sink is returned unchanged.
    """
    if g.is_normalized:
        return g
    srcs, snks = g.sources, g.sinks
    n = g.n
    weights = list(g.weights)
    edges = g.edges
    added = set(g.added)
    if len(srcs) > 1:
        n += 1
        weights.append(0)
        edges += [(n, v) for v in srcs]
        added.add(n)
    if len(snks) > 1:
        n += 1
        weights.append(0)
        edges += [(v, n) for v in snks]
        added.add(n)
    return build_graph(n, weights, edges, added=added)


def topological_order(g: TaskGraph) -> dict[int, int]:
    """Map each vertex to its 1-based rank; ready vertices are taken lowest id first."""
    return {v: rank for rank, v in enumerate(g.topo, start=1)}


def hlfet_levels(g: TaskGraph) -> dict[int, int]:
    """Heaviest vertex-weight path from each vertex to a sink, inclusive."""
    return dict(g.levels)


def critical_path_length(g: TaskGraph) -> int:
    return g.t_cp


def descendants(g: TaskGraph) -> dict[int, frozenset[int]]:
    """Transitive successor sets."""
    out: dict[int, frozenset[int]] = {}
    for u in reversed(g.topo):
        acc: set[int] = set()
        for v in g.succ(u):
            acc.add(v)
            acc |= out[v]
        out[u] = frozenset(acc)
    return out


def order_strength(g: TaskGraph) -> Fraction:
    """Comparable pairs over C(n, 2), ignoring vertices added by normalize()."""
    real = [v for v in g.vertices if v not in g.added]
    k = len(real)
    if k < 2:
        return Fraction(0)
    desc = descendants(g)
    pairs = sum(len(desc[v] - g.added) for v in real)
    return Fraction(pairs, k * (k - 1) // 2)
