"""Graph automorphisms, isomorphism, s-arcs, and Cayley-graph normality.

Automorphism groups are found by individualization and refinement: an
ordered partition is refined to an equitable one by neighbour counts, the
first smallest non-singleton cell is split by individualizing its vertices,
and leaves of the search tree are compared against the leftmost leaf.  The
search runs level by level from the bottom of the leftmost path, so the
generators found form a stabilizer chain and orbit pruning is sound.
No canonical labelling is computed.

Refinement is label-invariant: it depends only on the ordered partition and
the graph, which is what makes traces comparable across nodes and across
graphs.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from typing import Sequence

from .graphs import (
    DEFAULT_VERTEX_CAP,
    CayleyGraphSpec,
    Graph,
    cayley_elements,
    materialize_cayley_graph,
)
from .group import (
    DEFAULT_CAP,
    OrderExceedsCap,
    PermGroup,
    is_normal_in,
)
from .perm import Permutation

__all__ = [
    "VertexCapExceeded",
    "NonAutomorphismGroup",
    "NotArcTransitive",
    "DegenerateValency",
    "equitable_partition",
    "automorphism_group",
    "find_isomorphism",
    "are_isomorphic",
    "is_automorphism",
    "count_s_arcs",
    "enumerate_s_arcs",
    "s_arc_orbits",
    "transitivity_degree",
    "right_regular_representation",
    "is_normal_cayley",
    "aut_G_S",
    "AUT_VERTEX_CAP",
]

AUT_VERTEX_CAP = 2000
ARC_ENUMERATION_CAP = 5_000_000


class VertexCapExceeded(Exception):
    pass


class NonAutomorphismGroup(ValueError):
    pass


class NotArcTransitive(ValueError):
    pass


class DegenerateValency(ValueError):
    pass


# partition refinement

def _refine(adj, cells: list[list[int]], splitters) -> tuple[list[list[int]], list]:
    """Refine ``cells`` to an equitable partition; returns (cells, trace)."""
    cells = list(cells)
    live = {id(c) for c in cells}
    queue = deque(splitters)
    trace = []
    while queue:
        W = queue.popleft()
        if id(W) not in live:
            continue
        count = Counter()
        for w in W:
            for x in adj[w]:
                count[x] += 1
        step = []
        out = []
        for pos, C in enumerate(cells):
            if len(C) == 1:
                k = count.get(C[0], 0)
                if k:
                    step.append((len(out), k, 1))
                out.append(C)
                continue
            groups: dict[int, list[int]] = {}
            for v in C:
                groups.setdefault(count.get(v, 0), []).append(v)
            if len(groups) == 1:
                k = next(iter(groups))
                if k:
                    step.append((len(out), k, len(C)))
                out.append(C)
                continue
            live.discard(id(C))
            for k in sorted(groups):
                piece = groups[k]
                step.append((len(out), k, len(piece)))
                out.append(piece)
                live.add(id(piece))
                queue.append(piece)
        cells = out
        trace.append(tuple(step))
    return cells, trace


def equitable_partition(graph: Graph, cells: Sequence[Sequence[int]] | None = None) -> list[list[int]]:
    if cells is None:
        cells = [list(range(graph.vertex_count))]
    cells = [sorted(c) for c in cells]
    return _refine(graph.adjacency, cells, cells)[0]


def _target(cells) -> int | None:
    """Index of the first smallest non-singleton cell."""
    best = None
    for i, c in enumerate(cells):
        if len(c) > 1 and (best is None or len(c) < len(cells[best])):
            best = i
    return best


def _individualize(adj, cells, pos: int, v: int):
    C = cells[pos]
    single = [v]
    rest = [x for x in C if x != v]
    new = cells[:pos] + [single, rest] + cells[pos + 1:]
    return _refine(adj, new, [single])


class _Tree:
    """The leftmost path of the search tree of one graph."""

    def __init__(self, graph: Graph):
        self.adj = graph.adjacency
        n = graph.vertex_count
        cells, trace = _refine(self.adj, [list(range(n))], [list(range(n))]) if n else ([], [])
        self.root_trace = trace
        self.nodes = [cells]      # partitions along the path
        self.traces = [trace]     # trace of the refinement that produced each node
        self.targets = []         # target cell index at each internal node
        self.chosen = []          # vertex individualized at each internal node
        while True:
            t = _target(cells)
            if t is None:
                break
            v = cells[t][0]
            cells, trace = _individualize(self.adj, cells, t, v)
            self.targets.append(t)
            self.chosen.append(v)
            self.nodes.append(cells)
            self.traces.append(trace)
        self.leaf = [c[0] for c in cells]


def _search_leaf(adj, cells, depth: int, ref: _Tree, accept):
    """DFS below ``cells`` (at ``depth``) following ``ref``'s traces; first accepted leaf."""
    t = _target(cells)
    if t is None:
        leaf = [c[0] for c in cells]
        return leaf if accept(leaf) else None
    if depth >= len(ref.targets) or t != ref.targets[depth]:
        return None
    for u in cells[t]:
        child, trace = _individualize(adj, cells, t, u)
        if trace != ref.traces[depth + 1]:
            continue
        found = _search_leaf(adj, child, depth + 1, ref, accept)
        if found is not None:
            return found
    return None


def _maps_edges(graph_a: Graph, graph_b: Graph, mapping: Sequence[int]) -> bool:
    sets_b = graph_b._sets
    for u, nbrs in enumerate(graph_a.adjacency):
        mu = mapping[u]
        if len(nbrs) != len(graph_b.adjacency[mu]):
            return False
        bset = sets_b[mu]
        for v in nbrs:
            if mapping[v] not in bset:
                return False
    return True


def is_automorphism(graph: Graph, p: Permutation) -> bool:
    if p.degree != graph.vertex_count:
        return False
    return _maps_edges(graph, graph, p._img)


def _orbit_of(point: int, gens: list[tuple]) -> set[int]:
    seen = {point}
    todo = [point]
    for x in todo:
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def automorphism_group(graph: Graph, vertex_cap: int = AUT_VERTEX_CAP) -> PermGroup:
    """Full automorphism group, acting on vertices 1..n."""
    n = graph.vertex_count
    if n > vertex_cap:
        raise VertexCapExceeded(f"{n} vertices exceeds cap {vertex_cap}")
    if n == 0:
        raise ValueError("empty graph")
    adj = graph.adjacency
    ref = _Tree(graph)
    gens: list[tuple] = []

    for level in reversed(range(len(ref.targets))):
        cells = ref.nodes[level]
        t = ref.targets[level]
        v = ref.chosen[level]
        orbit = _orbit_of(v, gens)
        for w in cells[t]:
            if w in orbit:
                continue
            child, trace = _individualize(adj, cells, t, w)
            if trace != ref.traces[level + 1]:
                continue
            found = []

            def accept(leaf):
                img = [0] * n
                for a, b in zip(ref.leaf, leaf):
                    img[a] = b
                if _maps_edges(graph, graph, img):
                    found.append(tuple(img))
                    return True
                return False

            if _search_leaf(adj, child, level + 1, ref, accept) is not None:
                gens.append(found[0])
                orbit = _orbit_of(v, gens)

    perms = [Permutation(g, zero_based=True) for g in gens]
    for p in perms:
        assert is_automorphism(graph, p), "search produced a non-automorphism"
    return PermGroup(perms or [Permutation.identity(n)])


def find_isomorphism(a: Graph, b: Graph) -> list[int] | None:
    """A vertex map a -> b preserving adjacency, or None."""
    if a.vertex_count != b.vertex_count or a.edge_count() != b.edge_count():
        return None
    if sorted(a.degrees()) != sorted(b.degrees()):
        return None
    n = a.vertex_count
    if n == 0:
        return []
    ref = _Tree(a)
    cells, trace = _refine(b.adjacency, [list(range(n))], [list(range(n))])
    if trace != ref.root_trace:
        return None
    found = []

    def accept(leaf):
        img = [0] * n
        for x, y in zip(ref.leaf, leaf):
            img[x] = y
        if _maps_edges(a, b, img):
            found.append(img)
            return True
        return False

    if _search_leaf(b.adjacency, cells, 0, ref, accept) is None:
        return None
    return found[0]


def are_isomorphic(a: Graph, b: Graph) -> bool:
    return find_isomorphism(a, b) is not None


# s-arcs

def count_s_arcs(graph: Graph, s: int) -> int:
    if s < 0:
        raise ValueError("s must be non-negative")
    if s == 0:
        return graph.vertex_count
    adj = graph.adjacency
    ways = {(u, v): 1 for u in range(graph.vertex_count) for v in adj[u]}
    for _ in range(s - 1):
        ways = {(u, v): sum(ways[(v, w)] for w in adj[v] if w != u) for (u, v) in ways}
    return sum(ways.values())


def enumerate_s_arcs(graph: Graph, s: int) -> list[tuple[int, ...]]:
    adj = graph.adjacency
    arcs = [(v,) for v in range(graph.vertex_count)]
    for _ in range(s):
        arcs = [a + (w,) for a in arcs for w in adj[a[-1]]
                if len(a) < 2 or w != a[-2]]
    return arcs


def _check_automorphisms(graph: Graph, A: PermGroup) -> None:
    if A.degree != graph.vertex_count:
        raise NonAutomorphismGroup("group degree differs from vertex count")
    for g in A.generators:
        if not is_automorphism(graph, g):
            raise NonAutomorphismGroup(f"generator {g} does not preserve edges")


def s_arc_orbits(graph: Graph, A: PermGroup, s: int) -> int:
    """Number of A-orbits on s-arcs (union-find over generator images)."""
    _check_automorphisms(graph, A)
    total = count_s_arcs(graph, s)
    if total > ARC_ENUMERATION_CAP:
        raise OrderExceedsCap(total, ARC_ENUMERATION_CAP)
    arcs = enumerate_s_arcs(graph, s)
    index = {a: i for i, a in enumerate(arcs)}
    parent = list(range(len(arcs)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in A.generators:
        img = g._img
        for i, a in enumerate(arcs):
            j = index[tuple(img[x] for x in a)]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    return sum(1 for i in range(len(arcs)) if parent[i] == i)


def transitivity_degree(graph: Graph, A: PermGroup) -> int:
    """Largest s such that A is transitive on s-arcs (valency >= 3 required)."""
    k = graph.regular_degree()
    if k is None or k < 3:
        raise DegenerateValency("transitivity degree needs a regular graph of valency >= 3")
    _check_automorphisms(graph, A)
    if not A.is_transitive() or s_arc_orbits(graph, A, 1) != 1:
        raise NotArcTransitive("group is not arc-transitive on the graph")
    s = 1
    while count_s_arcs(graph, s + 1) <= A.order() and s_arc_orbits(graph, A, s + 1) == 1:
        s += 1
    return s


# Cayley graphs

def right_regular_representation(G: PermGroup, cap: int = DEFAULT_VERTEX_CAP) -> PermGroup:
    """G acting by right multiplication on the vertex ids of its Cayley graphs."""
    elems = cayley_elements(G, cap)
    where = {e: i for i, e in enumerate(elems)}
    gens = [Permutation([where[e * g] for e in elems], zero_based=True) for g in G.generators]
    return PermGroup(gens)


def is_normal_cayley(spec: CayleyGraphSpec, cap: int = AUT_VERTEX_CAP) -> bool:
    if spec.G.order() > cap:
        raise OrderExceedsCap(spec.G.order(), cap)
    graph = materialize_cayley_graph(spec, cap)
    A = automorphism_group(graph, cap)
    return is_normal_in(right_regular_representation(spec.G, cap), A)


def _group_automorphisms_preserving(elems: Sequence[Permutation], gens: Sequence[Permutation],
                                    S: Sequence[Permutation]) -> list[tuple[int, ...]]:
    """Automorphisms of the group on `elems` mapping S onto S, as index maps.

    Each candidate is fixed by the images of `gens` (same element order,
    inside S when the generator is); it is extended along right multiplication
    by generators and rejected on any inconsistency or collision.
    """
    n = len(elems)
    where = {e: i for i, e in enumerate(elems)}
    s_idx = {where[s] for s in S}
    gen_idx = [where[g] for g in gens]
    step = [[where[e * g] for g in gens] for e in elems]
    orders = [e.order() for e in elems]
    choices = []
    for k in gen_idx:
        pool = s_idx if k in s_idx else range(n)
        choices.append([j for j in pool if orders[j] == orders[k]])
    found = []
    for images in itertools.product(*choices):
        img_perm = [elems[j] for j in images]
        phi = [-1] * n
        phi[0] = 0
        used = {0}
        todo = [0]
        ok = True
        for i in todo:
            x = elems[phi[i]]
            for k, j in enumerate(step[i]):
                target = where[x * img_perm[k]]
                if phi[j] < 0:
                    if target in used:
                        ok = False
                        break
                    phi[j] = target
                    used.add(target)
                    todo.append(j)
                elif phi[j] != target:
                    ok = False
                    break
            if not ok:
                break
        if ok and len(todo) == n and {phi[i] for i in s_idx} == s_idx:
            found.append(tuple(phi))
    return found


def aut_G_S(spec: CayleyGraphSpec, cap: int = AUT_VERTEX_CAP, enum_cap: int = DEFAULT_CAP) -> PermGroup:
    """Aut(G, S) acting on the vertices of Cay(G, S), fixing the identity vertex.

    Found by searching group automorphisms of G that preserve S.  Each one is
    checked to be a graph automorphism normalizing the right regular
    representation.  When the identity-vertex stabilizer of the full
    automorphism group has at most `enum_cap` elements, its multiplicative
    elements and its R-normalizing elements are also listed, and both lists
    must equal the search result.
    """
    if spec.G.order() > cap:
        raise OrderExceedsCap(spec.G.order(), cap)
    graph = materialize_cayley_graph(spec, cap)
    elems = graph.labels
    assert elems[0].is_identity()
    where = {e: i for i, e in enumerate(elems)}
    n = graph.vertex_count
    gens = list(spec.G.generators)
    maps = _group_automorphisms_preserving(elems, gens, spec.S)
    found = sorted(Permutation(m, zero_based=True) for m in maps)

    A = automorphism_group(graph, cap)
    stab = A.point_stabilizer(1)
    R = right_regular_representation(spec.G, cap)
    for sigma in found:
        assert is_automorphism(graph, sigma) and stab.contains(sigma)
        assert all(R.contains(sigma.inverse() * r * sigma) for r in R.generators)

    if stab.order() <= enum_cap:
        gen_idx = [where[g] for g in gens]
        multiplicative = []
        normalizing = []
        for sigma in stab.elements(enum_cap):
            img = sigma._img
            if all(elems[img[where[u * elems[k]]]] == elems[img[i]] * elems[img[k]]
                   for i, u in enumerate(elems) for k in gen_idx):
                multiplicative.append(sigma)
            if all(R.contains(sigma.inverse() * r * sigma) for r in R.generators):
                normalizing.append(sigma)
        assert sorted(multiplicative) == sorted(normalizing) == found, \
            "Aut(G,S) differs from the normalizer stabilizer"
    nontrivial = [s for s in found if not s.is_identity()]
    return PermGroup(nontrivial or [Permutation.identity(n)])
