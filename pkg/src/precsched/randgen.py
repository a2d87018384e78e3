"""Seeded random DAGs with a target order strength."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from precsched.graph import TaskGraph, build_graph, normalize, order_strength

MAX_ROUNDS = 64


class Unreachable(UserWarning):
    """The order-strength tolerance was not met; the closest graph was returned."""


@dataclass(frozen=True)
class GenSpec:
    n: int
    target_os: float = 0.1
    os_tolerance: float = 0.02
    weight_range: tuple[int, int] = (1, 10)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        # 1.0 is accepted so a total order can be requested explicitly
        if not 0 < self.target_os <= 1:
            raise ValueError(f"target order strength must lie in (0, 1], got {self.target_os}")
        if self.os_tolerance < 0:
            raise ValueError("order-strength tolerance must be >= 0")
        lo, hi = self.weight_range
        if not 1 <= lo <= hi:
            raise ValueError(f"weight range must satisfy 1 <= min <= max, got {self.weight_range}")


@dataclass(frozen=True)
class Instance:
    graph: TaskGraph  # normalized
    raw: TaskGraph  # as sampled, before normalization
    seed: int
    order_strength: Fraction
    reached: bool


def _sample(spec: GenSpec, p: float, round_: int) -> TaskGraph:
    rng = np.random.default_rng([spec.seed & (2**64 - 1), round_])
    n = spec.n
    # random labelling: position i of `order` holds the id of the i-th task
    order = rng.permutation(n) + 1
    coins = rng.random((n, n))
    edges = [
        (int(order[i]), int(order[j]))
        for i in range(n)
        for j in range(i + 1, n)
        if coins[i, j] < p
    ]
    lo, hi = spec.weight_range
    weights = rng.integers(lo, hi + 1, size=n)
    return build_graph(n, weights.tolist(), edges)


def generate_instance(spec: GenSpec) -> Instance:
    """Bisect the edge probability until the sampled order strength is in tolerance.

    Every probe draws a fresh graph from a sub-seed derived from
    ``(spec.seed, round)``, so the result depends only on ``spec``.
    """
    target = Fraction(spec.target_os).limit_denominator(10**9)
    tol = Fraction(spec.os_tolerance).limit_denominator(10**9)
    lo, hi = 0.0, 1.0
    best: tuple[Fraction, TaskGraph] | None = None
    for round_ in range(MAX_ROUNDS):
        p = 1.0 if round_ == 0 else (lo + hi) / 2
        g = _sample(spec, p, round_)
        os_ = order_strength(g)
        gap = abs(os_ - target)
        if best is None or gap < abs(best[0] - target):
            best = (os_, g)
        if gap <= tol:
            return Instance(normalize(g), g, spec.seed, os_, True)
        if round_ == 0:
            continue
        if os_ < target:
            lo = p
        else:
            hi = p
    assert best is not None
    return Instance(normalize(best[1]), best[1], spec.seed, best[0], False)


def generate(spec: GenSpec) -> TaskGraph:
    inst = generate_instance(spec)
    if not inst.reached:
        warnings.warn(
            f"order strength {float(inst.order_strength):.4f} misses target "
            f"{spec.target_os} +/- {spec.os_tolerance} (seed {spec.seed})",
            Unreachable,
            stacklevel=2,
        )
    return inst.graph
