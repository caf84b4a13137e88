"""Normal quotients and a small census of pentavalent arc-transitive coset graphs."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .graphs import (
    CosetGraphSpec,
    Graph,
    _coset_orbit,
    coset_action,
    coset_index,
    is_connected_spec,
    materialize_coset_graph,
    valency_of_spec,
)
from .group import DEFAULT_CAP, OrderExceedsCap, PermGroup, _generate_from, is_normal_in
from .perm import Permutation, format_cycles
from .structure import StabilizerTag, infer_s, recognize_table3
from .symmetry import (
    AUT_VERTEX_CAP,
    automorphism_group,
    find_isomorphism,
    is_automorphism,
    transitivity_degree,
)

__all__ = [
    "NotNormal",
    "NotAutomorphism",
    "QuotientResult",
    "quotient_graph",
    "CensusEntry",
    "census_pentavalent",
    "candidate_stabilizers",
    "core_is_trivial",
]

log = logging.getLogger(__name__)

CANDIDATE_ORDERS = (5, 10, 20, 40, 80)


class NotNormal(ValueError):
    pass


class NotAutomorphism(ValueError):
    pass


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


@dataclass(frozen=True)
class QuotientResult:
    quotient: Graph
    orbit_map: tuple[int, ...]
    semiregular: bool
    # None unless the valency is an odd prime and there are more than two orbits
    valency_preserved: bool | None
    orbit_count: int


def quotient_graph(graph: Graph, X: PermGroup, N: PermGroup) -> QuotientResult:
    """The graph on N-orbits, two orbits adjacent when some members are."""
    n = graph.vertex_count
    for G, name in ((X, "X"), (N, "N")):
        if G.degree != n:
            raise NotAutomorphism(f"{name} has degree {G.degree}, graph has {n} vertices")
        for p in G.generators:
            if not is_automorphism(graph, p):
                raise NotAutomorphism(f"generator {p} of {name} does not preserve edges")
    if not N.is_subgroup_of(X) or not is_normal_in(N, X):
        raise NotNormal("N is not a normal subgroup of X")

    orbit_map = [-1] * n
    sizes = []
    for orb in N.orbits():
        for v in orb:
            orbit_map[v - 1] = len(sizes)
        sizes.append(len(orb))
    count = len(sizes)
    qedges = {(min(a, b), max(a, b)) for u, v in graph.edges()
              if (a := orbit_map[u]) != (b := orbit_map[v])}
    quotient = Graph.from_edges(count, sorted(qedges))
    semiregular = all(s == N.order() for s in sizes)

    k = graph.regular_degree()
    preserved = None
    if k is not None and k > 2 and _is_prime(k) and count > 2:
        preserved = quotient.regular_degree() == k
    return QuotientResult(quotient, tuple(orbit_map), semiregular, preserved, count)


# census

@dataclass(frozen=True)
class CensusEntry:
    h_generators: tuple[Permutation, ...]
    g: Permutation
    valency: int
    vertex_count: int
    stabilizer_tag: StabilizerTag
    s_value: int
    s_coset_action: int
    connected: bool
    aut_order: int
    graph: Graph = field(compare=False, repr=False)

    def spec(self, X: PermGroup) -> CosetGraphSpec:
        return CosetGraphSpec(X, PermGroup(self.h_generators), self.g)

    def to_json(self, edge_list_path: str | None = None) -> dict:
        return {
            "h_generators": [format_cycles(h) for h in self.h_generators],
            "g": format_cycles(self.g),
            "valency": self.valency,
            "vertex_count": self.vertex_count,
            "stabilizer_tag": self.stabilizer_tag.value,
            "s_value": self.s_value,
            "s_coset_action": self.s_coset_action,
            "connected": self.connected,
            "aut_order": str(self.aut_order),
            "edge_list": edge_list_path,
        }


def _power_of_two(n: int) -> bool:
    return n & (n - 1) == 0


def _conj_class_of_subgroup(elems: frozenset, acting) -> set[frozenset]:
    seen = {elems}
    todo = [elems]
    for S in todo:
        for x in acting:
            xi = x.inverse()
            T = frozenset(xi * s * x for s in S)
            if T not in seen:
                seen.add(T)
                todo.append(T)
    return seen


def core_is_trivial(H: PermGroup, X: PermGroup) -> bool:
    """Whether the intersection of all X-conjugates of H is trivial."""
    core = set(H.elements(H.order()))
    changed = True
    while changed:
        changed = False
        for c in list(core):
            if any(x.inverse() * c * x not in core for x in X.generators):
                core.discard(c)
                changed = True
    return len(core) == 1


def candidate_stabilizers(X: PermGroup, elems: list[Permutation]) -> list[PermGroup]:
    """Subgroups of order 5·2^k (k <= 4) with a normal Sylow 5-subgroup whose
    fingerprint matches a soluble stabilizer type, one per X-conjugacy class,
    restricted to core-free ones.
    """
    fives = {}
    for x in elems:
        if x.order() == 5:
            P = frozenset(x ** i for i in range(5))
            fives.setdefault(P, x)
    seen_p: set[frozenset] = set()
    out = []
    twos_set = {x for x in elems if not x.is_identity() and _power_of_two(x.order())}
    for P, x in fives.items():
        if P in seen_p:
            continue
        seen_p |= _conj_class_of_subgroup(P, X.generators)
        normalizer = [t for t in elems if t.inverse() * x * t in P]
        NP = _generate_from(normalizer, X.degree)
        local_twos = [t for t in normalizer if t in twos_set]
        start = PermGroup([x])
        found = {P: start}
        todo = [start]
        for H in todo:
            if H.order() >= 80:
                continue
            for t in local_twos:
                if H.contains(t):
                    continue
                K = PermGroup(list(H.generators) + [t])
                if K.order() not in CANDIDATE_ORDERS:
                    continue
                key = frozenset(K.elements(80))
                if key in found:
                    continue
                # one representative per N_X(P)-class
                cls = _conj_class_of_subgroup(key, NP.generators)
                if any(c in found for c in cls):
                    continue
                found[key] = K
                todo.append(K)
        for H in found.values():
            if recognize_table3(H) is StabilizerTag.Other:
                continue
            if core_is_trivial(H, X):
                out.append(H)
    return out


def census_pentavalent(X: PermGroup, order_cap: int = DEFAULT_CAP,
                       graph_cap: int = AUT_VERTEX_CAP) -> list[CensusEntry]:
    """Connected pentavalent X-arc-transitive coset graphs Cos(X, H, g) with a
    soluble stabilizer type, up to graph isomorphism.
    """
    if X.order() > order_cap:
        raise OrderExceedsCap(X.order(), order_cap)
    elems = X.elements(order_cap)
    twos = [x for x in elems if not x.is_identity() and _power_of_two(x.order())]

    candidates = []
    for H in candidate_stabilizers(X, elems):
        tag = recognize_table3(H)
        done = set()
        for g in twos:
            if H.contains(g) or not H.contains(g * g):
                continue
            spec = CosetGraphSpec(X, H, g)
            dc = frozenset(_coset_orbit(H, g, H.generators))
            if dc in done:
                continue
            done.add(dc)
            if valency_of_spec(spec) != 5 or not is_connected_spec(spec):
                continue
            index = coset_index(spec)
            if index > graph_cap:
                log.warning("skipping H of order %d: index %d exceeds graph cap", H.order(), index)
                continue
            graph = materialize_coset_graph(spec, graph_cap)
            aut = automorphism_group(graph, graph_cap).order()
            key = (graph.vertex_count, tuple(sorted(graph.degrees())), aut)
            candidates.append((key, -H.order(), len(candidates), spec, tag, graph, aut))

    candidates.sort(key=lambda c: c[:3])
    entries: list[CensusEntry] = []
    kept: list[tuple] = []
    for key, _, _, spec, tag, graph, aut in candidates:
        if any(k == key and find_isomorphism(gr, graph) is not None for k, gr in kept):
            continue
        kept.append((key, graph))
        action = coset_action(spec, graph)
        entries.append(CensusEntry(
            h_generators=tuple(spec.H.generators),
            g=spec.g,
            valency=graph.regular_degree(),
            vertex_count=graph.vertex_count,
            stabilizer_tag=tag,
            s_value=infer_s(tag),
            s_coset_action=transitivity_degree(graph, action),
            connected=graph.is_connected(),
            aut_order=aut,
            graph=graph,
        ))
    return entries
