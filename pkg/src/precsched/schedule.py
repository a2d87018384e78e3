"""Decoding vertex permutations into machine schedules."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from precsched.graph import TaskGraph


class ScheduleError(ValueError):
    pass


class PrecedenceError(ScheduleError):
    pass


class DuplicateVertex(ScheduleError):
    pass


class IncompleteSchedule(ScheduleError):
    pass


@dataclass(frozen=True)
class PartialSolution:
    """A feasible schedule for a precedence-closed prefix of the vertices.

    ``assignment`` maps each scheduled vertex to ``(machine, start)`` with
    machines numbered ``1..m``. ``machine_free[p - 1]`` is the finish time of
    the last task placed on machine ``p``.
    """

    perm: tuple[int, ...]
    assignment: dict[int, tuple[int, int]]
    machine_free: tuple[int, ...]
    m: int
    finish: int = 0  # latest completion among scheduled tasks
    _placed: frozenset[int] = field(default=frozenset(), repr=False, compare=False)

    @classmethod
    def empty(cls, m: int) -> PartialSolution:
        if m < 1:
            raise ValueError(f"machine count must be >= 1, got {m}")
        return cls((), {}, (0,) * m, m)

    @property
    def scheduled(self) -> frozenset[int]:
        return self._placed

    def start(self, v: int) -> int:
        return self.assignment[v][1]

    def is_complete(self, g: TaskGraph) -> bool:
        return len(self.perm) == g.n

    def extend(self, g: TaskGraph, v: int) -> PartialSolution:
        """Append ``v`` using the cached machine state (no re-decode)."""
        if v in self._placed:
            raise DuplicateVertex(f"vertex {v} is already scheduled")
        ready = 0
        assignment = self.assignment
        for u in g.pred(v):
            if u not in self._placed:
                raise PrecedenceError(f"vertex {v} placed before its predecessor {u}")
            pu = assignment[u][1] + g.c(u)
            if pu > ready:
                ready = pu
        free = self.machine_free
        best_p = 0
        best_t = max(free[0], ready)
        for p in range(1, self.m):
            t = free[p] if free[p] > ready else ready
            if t < best_t:
                best_p, best_t = p, t
        end = best_t + g.c(v)
        new_free = free[:best_p] + (end,) + free[best_p + 1 :]
        new_assignment = dict(assignment)
        new_assignment[v] = (best_p + 1, best_t)
        return PartialSolution(
            self.perm + (v,),
            new_assignment,
            new_free,
            self.m,
            max(self.finish, end),
            self._placed | {v},
        )


# A complete PartialSolution; kept as an alias so signatures read naturally.
Schedule = PartialSolution


def decode(g: TaskGraph, perm: Sequence[int], m: int) -> PartialSolution:
    """Place ``perm`` left to right, each task on the machine giving the earliest start.

    Start = max(machine free time, latest predecessor finish); ties go to the
    lowest machine id.
    """
    if m < 1:
        raise ValueError(f"machine count must be >= 1, got {m}")
    free = [0] * m
    assignment: dict[int, tuple[int, int]] = {}
    finish = 0
    for v in perm:
        if v in assignment:
            raise DuplicateVertex(f"vertex {v} appears twice in the permutation")
        ready = 0
        for u in g.pred(v):
            if u not in assignment:
                raise PrecedenceError(f"vertex {v} placed before its predecessor {u}")
            ready = max(ready, assignment[u][1] + g.c(u))
        starts = [max(f, ready) for f in free]
        tau = min(starts)
        p = starts.index(tau)
        assignment[v] = (p + 1, tau)
        free[p] = tau + g.c(v)
        finish = max(finish, free[p])
    return PartialSolution(tuple(perm), assignment, tuple(free), m, finish, frozenset(assignment))


def check_feasible(
    g: TaskGraph, s: PartialSolution, *, reason: list[str] | None = None
) -> bool:
    """Check machine exclusivity and precedence for every scheduled task.

    When ``reason`` is given, the first violation found is appended to it.
    """

    def fail(msg: str) -> bool:
        if reason is not None:
            reason.append(msg)
        return False

    a = s.assignment
    for v, (p, tau) in a.items():
        if not 1 <= p <= s.m:
            return fail(f"vertex {v} on machine {p} outside 1..{s.m}")
        if tau < 0:
            return fail(f"vertex {v} starts at negative time {tau}")
    by_machine: dict[int, list[tuple[int, int, int]]] = {}
    for v, (p, tau) in a.items():
        if g.c(v) > 0:  # zero-length tasks never conflict
            by_machine.setdefault(p, []).append((tau, tau + g.c(v), v))
    for p, spans in by_machine.items():
        spans.sort()
        last_end, last_v = spans[0][1], spans[0][2]
        for start, end, v in spans[1:]:
            if start < last_end:
                return fail(f"vertices {last_v} and {v} overlap on machine {p}")
            last_end, last_v = end, v
    for u, (_, tu) in a.items():
        for v in g.succ(u):
            if v in a and a[v][1] < tu + g.c(u):
                return fail(f"edge ({u}, {v}) violated: {v} starts before {u} finishes")
    return True


def ready_set(g: TaskGraph, x: PartialSolution | Iterable[int]) -> set[int]:
    """Unscheduled vertices whose predecessors are all scheduled."""
    done = x.scheduled if isinstance(x, PartialSolution) else frozenset(x)
    return {
        v for v in g.vertices if v not in done and all(u in done for u in g.pred(v))
    }


def makespan(s: PartialSolution, g: TaskGraph | None = None) -> int:
    """Completion time of the last task.

    Passing ``g`` additionally checks that every vertex is scheduled.
    """
    if g is not None and len(s.perm) != g.n:
        raise IncompleteSchedule(f"{len(s.perm)} of {g.n} vertices scheduled")
    return s.finish
