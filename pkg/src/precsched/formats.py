"""Plain-text DAG files and the benchmark CSV schema.

A DAG file holds optional ``#`` comment lines, then the vertex count ``n``,
then one line per vertex: ``weight out_degree succ_1 ... succ_k`` with 1-based
successor ids. Instances are stored before normalization.
"""

from __future__ import annotations

from pathlib import Path

from precsched.graph import TaskGraph, build_graph

CSV_COLUMNS = (
    "instance",
    "n",
    "m",
    "bound",
    "priority",
    "status",
    "makespan",
    "lb_root",
    "nodes_expanded",
    "nodes_pruned",
    "time_ms",
    "seed",
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _ints(text: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in text.split()]
    except ValueError:
        raise ParseError(f"expected whitespace-separated integers, got {text.strip()!r}", lineno) from None


def parse(text: str) -> TaskGraph:
    """Parse a DAG file into a validated, unnormalized TaskGraph."""
    rows = [
        (lineno, line)
        for lineno, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not rows:
        raise ParseError("empty document: missing vertex count")
    lineno, header = rows[0]
    head = _ints(header, lineno)
    if len(head) != 1 or head[0] < 1:
        raise ParseError(f"first data line must be a single positive vertex count, got {header.strip()!r}", lineno)
    n = head[0]
    body = rows[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} vertex lines, found {len(body)}", body[-1][0] if body else lineno)

    weights: list[int] = []
    edges: list[tuple[int, int]] = []
    for v, (lineno, line) in enumerate(body, start=1):
        vals = _ints(line, lineno)
        if len(vals) < 2:
            raise ParseError("vertex line needs a weight and an out-degree", lineno)
        weight, k, succ = vals[0], vals[1], vals[2:]
        if weight < 0:
            raise ParseError(f"negative weight {weight}", lineno)
        if k < 0 or len(succ) != k:
            raise ParseError(f"out-degree {k} does not match {len(succ)} listed successors", lineno)
        for w in succ:
            if not 1 <= w <= n:
                raise ParseError(f"successor {w} outside 1..{n}", lineno)
            edges.append((v, w))
        weights.append(weight)
    return build_graph(n, weights, edges)


def write(g: TaskGraph) -> str:
    """Canonical text: vertices in id order, single spaces, trailing newline."""
    lines = [str(g.n)]
    for v in g.vertices:
        succ = g.succ(v)
        lines.append(" ".join(map(str, (g.c(v), len(succ), *succ))))
    return "\n".join(lines) + "\n"


def read_file(path: str | Path) -> TaskGraph:
    return parse(Path(path).read_text(encoding="utf-8"))


def write_file(g: TaskGraph, path: str | Path) -> None:
    Path(path).write_text(write(g), encoding="utf-8", newline="\n")
