import math
import random

import numpy as np
import pytest

from precsched.bounds import (
    base_horizon,
    build_context,
    density_matrix,
    fernandez_bound,
    fernandez_bound_ref,
    fujita_bound,
    fujita_bound_ref,
    machines_lower,
    min_density,
)
from precsched.graph import critical_path_length
from precsched.schedule import decode

from conftest import small_instance
from oracles import (
    best_completion,
    density_brute,
    heaviest_path_from,
    heaviest_path_to,
    machines_lower_brute,
    random_partial,
)


def test_context_diamond(diamond):
    ctx = build_context(diamond, None, 5)
    assert ctx.mn_end.tolist() == [1, 3, 4, 5]
    assert ctx.mx_start.tolist() == [0, 2, 1, 4]
    assert ctx.events.tolist() == [0, 1, 2, 3, 4, 5]
    for v in diamond.vertices:
        assert ctx.mn_end[v - 1] == heaviest_path_to(diamond, v)
        assert ctx.mx_start[v - 1] == 5 - heaviest_path_from(diamond, v)


def test_context_chain(chain):
    ctx = build_context(chain, None, 6)
    assert ctx.mn_end.tolist() == [1, 3, 6]
    assert ctx.mx_start.tolist() == [0, 1, 3]


def test_pinning_source_at_forced_time(diamond):
    empty = build_context(diamond, None, 5)
    pinned = build_context(diamond, decode(diamond, [1], 2), 5)
    assert pinned.mn_end.tolist() == empty.mn_end.tolist()
    assert pinned.mx_start.tolist() == empty.mx_start.tolist()


def test_min_density_diamond(diamond):
    ctx = build_context(diamond, None, 5)
    assert min_density(ctx, diamond, 1, 4) == 5
    assert min_density(ctx, diamond, 0, 5) == 7
    assert density_brute(diamond, ctx.mn_end, ctx.mx_start, 1, 4) == 5
    assert density_brute(diamond, ctx.mn_end, ctx.mx_start, 0, 5) == 7


def test_min_density_outside_every_window(diamond):
    ctx = build_context(diamond, None, 12)
    # with 7 units of slack nothing is forced into [5, 6)
    assert min_density(ctx, diamond, 5, 6) == 0


def test_machines_lower_examples(diamond, ind4):
    assert machines_lower(diamond, None, 5) == 2
    assert machines_lower(diamond, None, 7) == 1
    assert machines_lower(ind4, None, 1) == 4
    ctx = build_context(diamond, None, 5)
    assert machines_lower_brute(diamond, ctx.mn_end, ctx.mx_start, 5) == 2


def test_fernandez_examples(diamond, chain):
    assert fernandez_bound(diamond, None, 1) == 7
    assert fernandez_bound(diamond, None, 2) == 5
    for m in (1, 2, 5):
        assert fernandez_bound(chain, None, m) == 6


def test_fujita_examples(diamond, chain):
    assert [machines_lower(diamond, None, T) for T in (5, 6, 7)] == [2, 2, 1]
    assert fujita_bound(diamond, None, 1) == 7
    assert fujita_bound(diamond, None, 2) == 5
    assert fujita_bound(chain, None, 1) == 6


def test_fujita_needs_long_search(ind4):
    # 4 unit tasks on 1 machine: optimum 4 = t_cp + 3, beyond the first doubling
    assert fujita_bound(ind4, None, 1) == 4
    assert fernandez_bound(ind4, None, 1) == 4


def test_invalid_machine_count(diamond):
    with pytest.raises(ValueError):
        fernandez_bound(diamond, None, 0)
    with pytest.raises(ValueError):
        fujita_bound(diamond, None, 0)


def _cases(count, seed):
    rng = random.Random(seed)
    for i in range(count):
        g = small_instance(rng.randint(4, 7), rng.choice([0.1, 0.3, 0.5]), seed * 1000 + i)
        m = rng.randint(1, 3)
        yield g, m, random_partial(g, m, rng, rng.randint(0, g.n - 1)), rng


@pytest.mark.parametrize("g, m, x, rng", list(_cases(40, 1)))
def test_density_matches_per_task_oracle(g, m, x, rng):
    T = base_horizon(g, x) + rng.randint(0, 3)
    ctx = build_context(g, x, T)
    R = density_matrix(ctx, np.asarray(g.weights))
    ev = ctx.events.tolist()
    assert len(ev) <= 2 * g.n + 2
    assert ev == sorted(ev)
    for i, a in enumerate(ev):
        for j, b in enumerate(ev):
            if a < b:
                expect = density_brute(g, ctx.mn_end, ctx.mx_start, a, b)
                assert min_density(ctx, g, a, b) == expect
                assert R[i, j] == expect


@pytest.mark.parametrize("g, m, x, rng", list(_cases(40, 2)))
def test_window_consistency(g, m, x, rng):
    ctx = build_context(g, x, base_horizon(g, x))
    w = np.asarray(g.weights)
    assert np.all(ctx.mn_end - w <= ctx.mx_start)


@pytest.mark.parametrize("g, m, x, rng", list(_cases(60, 3)))
def test_bounds_admissible_and_ordered(g, m, x, rng):
    fe = fernandez_bound(g, x, m)
    fu = fujita_bound(g, x, m)
    best = best_completion(g, x)
    assert fe <= fu <= best
    floor = max(critical_path_length(g), math.ceil(g.total_weight / m))
    assert fe >= floor and fu >= floor


@pytest.mark.parametrize("g, m, x, rng", list(_cases(30, 4)))
def test_machines_lower_monotone_in_horizon(g, m, x, rng):
    t0 = base_horizon(g, x)
    values = [machines_lower(g, x, T) for T in range(t0, t0 + 12)]
    assert values == sorted(values, reverse=True)


@pytest.mark.parametrize("g, m, x, rng", list(_cases(25, 5)))
def test_event_grid_matches_integer_grid(g, m, x, rng):
    t0 = base_horizon(g, x)
    for T in range(t0, t0 + 3):
        ctx = build_context(g, x, T)
        assert machines_lower(g, x, T) == machines_lower_brute(g, ctx.mn_end, ctx.mx_start, T)


def _wider_cases(count, seed):
    rng = random.Random(seed)
    for i in range(count):
        g = small_instance(rng.randint(4, 16), rng.choice([0.1, 0.3, 0.5]), seed * 1000 + i)
        m = rng.randint(1, 6)
        k = rng.randint(0, g.n - 1) if rng.random() < 0.7 else 0
        yield g, m, (random_partial(g, m, rng, k) if k else None)


@pytest.mark.parametrize("g, m, x", list(_wider_cases(80, 6)))
def test_compiled_bounds_match_reference(g, m, x):
    assert fernandez_bound(g, x, m) == fernandez_bound_ref(g, x, m)
    assert fujita_bound(g, x, m) == fujita_bound_ref(g, x, m)
