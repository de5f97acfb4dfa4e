from __future__ import annotations

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from graphground.graph import Graph  # noqa: E402


def connected_graphs(max_n: int, min_n: int = 3):
    """All connected graphs with ``min_n <= n <= max_n`` vertices, up to isomorphism.

    ``networkx.graph_atlas_g`` lists every graph on at most 7 vertices.
    """
    import networkx as nx

    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if min_n <= n <= max_n and nx.is_connected(g):
            yield Graph.from_edges(n, g.edges(), name=f"atlas:{n}:{g.number_of_edges()}")


@pytest.fixture(scope="session")
def atlas7():
    return list(connected_graphs(7))


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion; the summary prints them all."""

    def record(number: int, ok: bool, detail: str):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
