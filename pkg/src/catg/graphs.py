"""Coset graphs Cos(X, H, g) and Cayley graphs Cay(G, S).

Right cosets Hx are the vertices of a coset graph; Hx ~ Hy iff
y x^-1 lies in the double coset HgH.  Products follow the package
convention (``p * q`` applies ``p`` first), so X acts on cosets by right
multiplication.

Each coset is labelled by a canonical representative: walking down the
stabilizer chain of H, at every level the transversal element is chosen to
minimise the image of the base point, which pins down one element of Hx.

The neighbours of the base vertex H are the H-orbit of the coset Hg;
the neighbours of Hx are those cosets multiplied on the right by x.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .group import (
    DEFAULT_CAP,
    OrderExceedsCap,
    PermGroup,
    closure_elements,
    conjugate_subgroup,
    group_from_generators,
    intersection_small,
)
from .perm import Permutation, PermutationError
from . import formats

__all__ = [
    "Graph",
    "CosetGraphSpec",
    "CayleyGraphSpec",
    "IndexExceedsCap",
    "InvalidConnectionSet",
    "InvalidCosetSpec",
    "canonical_coset_rep",
    "valency_of_spec",
    "is_connected_spec",
    "double_coset",
    "connection_set",
    "materialize_coset_graph",
    "materialize_cayley_graph",
    "coset_action",
    "cayley_elements",
    "DEFAULT_VERTEX_CAP",
]

DEFAULT_VERTEX_CAP = 100_000


class IndexExceedsCap(Exception):
    def __init__(self, index: int, cap: int):
        super().__init__(f"index {index} exceeds vertex cap {cap}")
        self.index = index
        self.cap = cap


class InvalidConnectionSet(ValueError):
    pass


class InvalidCosetSpec(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with sorted neighbour lists."""

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.adjacency) != self.vertex_count:
            raise ValueError("adjacency length differs from vertex count")
        for v, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError(f"neighbours of {v} not sorted or repeated")
            for w in nbrs:
                if w == v:
                    raise ValueError(f"loop at {v}")
                if not 0 <= w < self.vertex_count:
                    raise ValueError(f"neighbour {w} of {v} out of range")
        for v, nbrs in enumerate(self.adjacency):
            for w in nbrs:
                if v not in self._sets[w]:
                    raise ValueError(f"edge {v}-{w} is not symmetric")

    @property
    def _sets(self):
        sets = self.__dict__.get("_adjsets")
        if sets is None:
            sets = tuple(frozenset(nb) for nb in self.adjacency)
            object.__setattr__(self, "_adjsets", sets)
        return sets

    @classmethod
    def from_edges(cls, n: int, edges, labels=None) -> "Graph":
        nbrs: list[set] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs),
                   tuple(labels) if labels is not None else None)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._sets[u]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.adjacency]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nb in enumerate(self.adjacency) for v in nb if u < v]

    def edge_count(self) -> int:
        return sum(len(nb) for nb in self.adjacency) // 2

    def regular_degree(self) -> int | None:
        degs = set(self.degrees())
        return degs.pop() if len(degs) == 1 else None

    def component_count(self) -> int:
        seen = [False] * self.vertex_count
        count = 0
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            count += 1
            seen[s] = True
            todo = [s]
            while todo:
                v = todo.pop()
                for w in self.adjacency[v]:
                    if not seen[w]:
                        seen[w] = True
                        todo.append(w)
        return count

    def is_connected(self) -> bool:
        return self.vertex_count > 0 and self.component_count() == 1

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex v renamed perm[v]."""
        return Graph.from_edges(self.vertex_count, [(perm[u], perm[v]) for u, v in self.edges()])

    def to_edge_list(self) -> str:
        return formats.format_edge_list(self.vertex_count, self.edges())

    def to_dot(self, name: str = "G") -> str:
        labels = None if self.labels is None else [str(x) for x in self.labels]
        return formats.format_dot(self.vertex_count, self.edges(), labels, name)


@dataclass(frozen=True)
class CosetGraphSpec:
    X: PermGroup
    H: PermGroup
    g: Permutation

    def validate(self) -> None:
        if not (self.X.degree == self.H.degree == self.g.degree):
            raise PermutationError("degree mismatch in coset graph spec")
        if not self.H.is_subgroup_of(self.X):
            raise InvalidCosetSpec("H is not a subgroup of X")
        if not self.X.contains(self.g):
            raise InvalidCosetSpec("g is not an element of X")
        if self.H.contains(self.g):
            raise InvalidCosetSpec("g lies in H, so HgH = H gives loops")
        if not in_double_coset(self.H, self.g, self.g.inverse()):
            raise InvalidCosetSpec("g^-1 is not in HgH; adjacency would not be symmetric")


@dataclass(frozen=True)
class CayleyGraphSpec:
    G: PermGroup
    S: tuple[Permutation, ...]

    def __init__(self, G: PermGroup, S):
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "S", tuple(S))

    def validate(self) -> None:
        S = self.S
        if len(set(S)) != len(S):
            raise InvalidConnectionSet("repeated element in S")
        Sset = set(S)
        for s in S:
            if s.degree != self.G.degree:
                raise PermutationError("degree mismatch in connection set")
            if s.is_identity():
                raise InvalidConnectionSet("identity in S")
            if s.inverse() not in Sset:
                raise InvalidConnectionSet(f"S is not inverse-closed: missing inverse of {s}")
            if not self.G.contains(s):
                raise InvalidConnectionSet(f"{s} is not in G")


# canonical coset representatives

def _canonical(chain, y):
    """Canonical element of the right coset H y (internal encoding)."""
    be = chain.be
    mul, table = be.mul, be.table
    for orb, reps in zip(chain.orbits, chain.reps):
        best = min(orb, key=y.__getitem__)
        u = reps[best]
        if u != be.identity:
            y = mul(u, table(y))
    return y


def canonical_coset_rep(H: PermGroup, x: Permutation) -> Permutation:
    """The representative of Hx used as its vertex label."""
    chain = H._chain
    be = chain.be
    return be.decode(_canonical(chain, be.encode(x)))


def _coset_orbit(H: PermGroup, start, acting: Sequence[Permutation]):
    """Cosets reachable from H·start by right multiplication with ``acting``."""
    chain = H._chain
    be = chain.be
    mul, table = be.mul, be.table
    tabs = [table(be.encode(a)) for a in acting]
    first = _canonical(chain, be.encode(start))
    seen = {first}
    order = [first]
    for y in order:
        for t in tabs:
            z = _canonical(chain, mul(y, t))
            if z not in seen:
                seen.add(z)
                order.append(z)
    return order


def in_double_coset(H: PermGroup, g: Permutation, y: Permutation) -> bool:
    """Whether y ∈ HgH, decided on cosets (works for any order of H)."""
    chain = H._chain
    be = chain.be
    target = _canonical(chain, be.encode(y))
    return target in set(_coset_orbit(H, g, H.generators))


# spec-level operations

def valency_of_spec(spec: CosetGraphSpec, cap: int = DEFAULT_CAP) -> int:
    """|H : H ∩ H^g|."""
    H = spec.H
    if H.order() > cap:
        raise OrderExceedsCap(H.order(), cap)
    inter = intersection_small(H, conjugate_subgroup(H, spec.g), cap)
    q, r = divmod(H.order(), inter.order())
    assert r == 0, "Lagrange violated"
    return q


def is_connected_spec(spec: CosetGraphSpec, shortcuts: bool = True) -> bool:
    """Whether <H, g> = X, by comparing orders."""
    gens = tuple(spec.H.generators) + (spec.g,)
    return group_from_generators(gens, shortcuts=shortcuts).order() == spec.X.order()


def double_coset(H: PermGroup, g: Permutation, cap: int = DEFAULT_CAP) -> list[Permutation]:
    """The distinct products h1 g h2, sorted."""
    n = H.order()
    if n * n > cap:
        raise OrderExceedsCap(n * n, cap)
    elems = H.elements(n)
    left = {h * g for h in elems}
    out = {x * h for x in left for h in elems}
    inter = intersection_small(H, conjugate_subgroup(H, g.inverse()), n)
    assert len(out) * inter.order() == n * n, "double coset size mismatch"
    return sorted(out)


def connection_set(spec: CosetGraphSpec, R: PermGroup, cap: int = DEFAULT_CAP) -> list[Permutation]:
    """R ∩ HgH."""
    return [p for p in double_coset(spec.H, spec.g, cap) if R.contains(p)]


def coset_index(spec: CosetGraphSpec) -> int:
    q, r = divmod(spec.X.order(), spec.H.order())
    if r:
        raise InvalidCosetSpec("order of H does not divide order of X")
    return q


def materialize_coset_graph(spec: CosetGraphSpec, vertex_cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    spec.validate()
    index = coset_index(spec)
    if index > vertex_cap:
        raise IndexExceedsCap(index, vertex_cap)
    H = spec.H
    chain = H._chain
    be = chain.be
    mul, table = be.mul, be.table
    reps = _coset_orbit(H, Permutation.identity(H.degree), spec.X.generators)
    if len(reps) != index:
        raise AssertionError(f"found {len(reps)} cosets, expected {index}")
    where = {y: i for i, y in enumerate(reps)}
    # neighbours of the base vertex H: the cosets contained in HgH
    base_nbrs = _coset_orbit(H, spec.g, H.generators)
    adjacency = []
    for y in reps:
        ty = table(y)
        nbrs = sorted(where[_canonical(chain, mul(d, ty))] for d in base_nbrs)
        adjacency.append(tuple(nbrs))
    labels = tuple(be.decode(y) for y in reps)
    return Graph(index, tuple(adjacency), labels)


def coset_action(spec: CosetGraphSpec, graph: Graph) -> PermGroup:
    """The right-multiplication action of X on the vertices of ``graph`` (1-based)."""
    if graph.labels is None:
        raise ValueError("graph carries no coset labels")
    H = spec.H
    chain = H._chain
    be = chain.be
    where = {be.encode(p): i for i, p in enumerate(graph.labels)}
    gens = []
    for x in spec.X.generators:
        tx = be.table(be.encode(x))
        img = [where[_canonical(chain, be.mul(be.encode(p), tx))] for p in graph.labels]
        gens.append(Permutation(img, zero_based=True))
    return PermGroup(gens)


def cayley_elements(G: PermGroup, cap: int = DEFAULT_VERTEX_CAP) -> list[Permutation]:
    """Elements of G in breadth-first order from the identity over G's generators."""
    if G.order() > cap:
        raise OrderExceedsCap(G.order(), cap)
    elems = closure_elements(G.generators, cap)
    assert len(elems) == G.order()
    return elems


def materialize_cayley_graph(spec: CayleyGraphSpec, vertex_cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    """x ~ y iff y x^-1 ∈ S; the neighbours of x are s x for s in S."""
    spec.validate()
    elems = cayley_elements(spec.G, vertex_cap)
    where = {e: i for i, e in enumerate(elems)}
    adjacency = tuple(tuple(sorted(where[s * x] for s in spec.S)) for x in elems)
    return Graph(len(elems), adjacency, tuple(elems))
