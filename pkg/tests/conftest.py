from __future__ import annotations

import warnings

import pytest

from precsched.graph import build_graph, normalize
from precsched.randgen import GenSpec, Unreachable, generate

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def chain():
    return build_graph(3, [1, 2, 3], [(1, 2), (2, 3)])


@pytest.fixture
def diamond():
    return build_graph(4, [1, 2, 3, 1], [(1, 2), (1, 3), (2, 4), (3, 4)])


@pytest.fixture
def ind4():
    return normalize(build_graph(4, [1, 1, 1, 1], []))


def small_instance(n: int, os_: float, seed: int, weights=(1, 10)):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", Unreachable)
        return generate(GenSpec(n, os_, 0.02, weights, seed))


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
