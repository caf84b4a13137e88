import itertools
import json
from importlib import resources
from pathlib import Path

import pytest
from hypothesis import strategies as st

from catg.graphs import Graph
from catg.perm import Permutation

DATA = Path(str(resources.files("catg") / "data"))


def data_path(name: str) -> Path:
    return DATA / name


def load_schema(name: str) -> dict:
    return json.loads((DATA / f"{name}.schema.json").read_text())


@st.composite
def permutations(draw, min_degree=1, max_degree=9):
    n = draw(st.integers(min_degree, max_degree))
    img = draw(st.permutations(range(1, n + 1)))
    return Permutation(img)


def perm_pair(max_degree=9):
    """Two permutations of the same degree."""
    return st.integers(1, max_degree).flatmap(
        lambda n: st.tuples(st.permutations(range(1, n + 1)), st.permutations(range(1, n + 1)))
    ).map(lambda t: (Permutation(t[0]), Permutation(t[1])))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, list(itertools.combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def petersen() -> Graph:
    V = list(itertools.combinations(range(5), 2))
    ix = {v: i for i, v in enumerate(V)}
    return Graph.from_edges(10, [(ix[a], ix[b]) for a, b in itertools.combinations(V, 2)
                                 if not set(a) & set(b)])


def k55() -> Graph:
    return Graph.from_edges(10, [(i, 5 + j) for i in range(5) for j in range(5)])


def hypercube(d: int) -> Graph:
    n = 1 << d
    return Graph.from_edges(n, [(x, x ^ (1 << i)) for x in range(n) for i in range(d) if x < x ^ (1 << i)])


def count_automorphisms_brute(graph: Graph) -> int:
    """Count adjacency-preserving bijections by plain backtracking (no refinement)."""
    n = graph.vertex_count
    adj = [set(a) for a in graph.adjacency]
    deg = [len(a) for a in adj]
    img = [-1] * n
    used = [False] * n

    def extend(v):
        if v == n:
            return 1
        total = 0
        for w in range(n):
            if used[w] or deg[w] != deg[v]:
                continue
            if all((u in adj[v]) == (img[u] in adj[w]) for u in range(v)):
                img[v], used[w] = w, True
                total += extend(v + 1)
                used[w] = False
        return total

    return extend(0)


@pytest.fixture(scope="session")
def bundled_report():
    from catg.certify import verify_construction_a79
    return verify_construction_a79()


# acceptance reporting: one line per criterion in the terminal summary

_criteria: dict[int, list[bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _criteria.setdefault(marker.args[0], []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        results = _criteria[n]
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status} ({sum(results)}/{len(results)} tests)")
