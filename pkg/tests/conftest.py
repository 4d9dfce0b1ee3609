"""Shared test helpers: a random graph corpus and acceptance reporting."""

import numpy as np
import pytest

from graphbands import Edge, MagneticGraph

_CRITERION_LINES = []


def random_magnetic_graph(seed, n_edges=5, generators=1, loops=True):
    """Random connected bound magnetic graph: spanning tree plus extra
    edges (parallel edges and self-loops allowed), flux entries in
    {-1, 0, 1}."""
    rng = np.random.default_rng(seed)
    n_vertices = int(rng.integers(2, min(n_edges, 4) + 1))
    vertices = tuple(range(n_vertices))
    edges = []
    for v in range(1, n_vertices):
        u = int(rng.integers(0, v))
        edges.append((u, v))
    while len(edges) < n_edges:
        u = int(rng.integers(0, n_vertices))
        v = int(rng.integers(0, n_vertices))
        if u == v and not loops:
            continue
        edges.append((u, v))
    built = []
    for i, (u, v) in enumerate(edges):
        flux = tuple(int(f) for f in rng.integers(-1, 2, size=generators))
        length = float(rng.uniform(0.5, 2.0))
        built.append(Edge(id=i + 1, tail=u, head=v, length=length, flux=flux))
    return MagneticGraph(vertices=vertices, edges=tuple(built),
                         generators=generators)


@pytest.fixture
def record_criterion():
    def _record(line):
        _CRITERION_LINES.append(line)
        print(line)
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERION_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _CRITERION_LINES:
        terminalreporter.write_line(line)
