import pytest

from catg.census import (
    CensusEntry,
    NotAutomorphism,
    NotNormal,
    candidate_stabilizers,
    census_pentavalent,
    core_is_trivial,
    quotient_graph,
)
from catg.formats import read_edge_list, read_generator_file
from catg.graphs import Graph, coset_action, is_connected_spec, valency_of_spec
from catg.group import OrderExceedsCap, PermGroup
from catg.perm import Permutation, parse_cycles
from catg.structure import REFERENCE_REALIZATIONS, StabilizerTag, recognize_table3
from catg.symmetry import automorphism_group, find_isomorphism, s_arc_orbits, transitivity_degree

from conftest import complete_graph, data_path, k55


def P(text, n):
    return parse_cycles(text, n)


def G(n, *cycles):
    return PermGroup([P(c, n) for c in cycles])


A5 = G(5, "(1 2 3)", "(1 2 3 4 5)")
S5 = G(5, "(1 2)", "(1 2 3 4 5)")


def k10_circulant_pentavalent():
    # Cay(Z10, {1, 3, 5, 7, 9}) is K5,5 with the parts split by parity
    return Graph.from_edges(10, [(i, (i + j) % 10) for i in range(10) for j in (1, 3, 5)])


def z10_shift(k):
    return PermGroup([Permutation([(i + k) % 10 + 1 for i in range(10)])])


@pytest.fixture(scope="module")
def a5_census():
    return census_pentavalent(A5)


@pytest.fixture(scope="module")
def s5_census():
    return census_pentavalent(S5)


# quotients

def test_trivial_quotient_of_k6():
    K6 = complete_graph(6)
    A = automorphism_group(K6)
    res = quotient_graph(K6, A, PermGroup([P("()", 6)]))
    assert res.quotient == K6 and res.semiregular and res.orbit_count == 6
    assert res.orbit_map == tuple(range(6))
    assert res.valency_preserved is True


def test_z10_circulant_quotient():
    graph = k10_circulant_pentavalent()
    assert graph.regular_degree() == 5
    X = z10_shift(1)
    N = z10_shift(5)
    res = quotient_graph(graph, X, N)
    assert res.orbit_count == 5 and res.semiregular
    assert all(res.orbit_map[v] == res.orbit_map[(v + 5) % 10] for v in range(10))
    # the translation group is not arc-transitive, so the quotient may lose valency
    assert res.quotient == complete_graph(5) and res.valency_preserved is False


def test_two_orbit_quotient_is_not_judged():
    graph = k55()
    A = automorphism_group(graph)
    # S5 x S5 preserves both parts and has index 2
    N = G(10, "(1 2 3 4 5)", "(1 2)", "(6 7 8 9 10)", "(6 7)")
    res = quotient_graph(graph, A, N)
    assert res.orbit_count == 2 and res.valency_preserved is None
    assert res.quotient.edge_count() == 1 and not res.semiregular


def test_quotient_errors():
    K6 = complete_graph(6)
    C = G(6, "(1 2 3 4 5 6)")
    with pytest.raises(NotNormal):
        quotient_graph(K6, C, G(6, "(1 2)"))
    with pytest.raises(NotNormal):
        quotient_graph(K6, G(6, "(1 2)", "(1 2 3 4 5 6)"), G(6, "(1 2 3)"))
    cycle = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    with pytest.raises(NotAutomorphism):
        quotient_graph(cycle, G(6, "(1 2)"), G(6, "()"))
    with pytest.raises(NotAutomorphism):
        quotient_graph(K6, G(5, "(1 2)"), G(5, "()"))


def test_bundled_quotient_of_k66_minus_matching():
    n, edges = read_edge_list(data_path("k66i.edges"))
    graph = Graph.from_edges(n, edges)
    gens = read_generator_file(data_path("k66i.perms"))[1]
    X = PermGroup(list(gens.values()))
    assert s_arc_orbits(graph, X, 1) == 1
    res = quotient_graph(graph, X, PermGroup([gens["t"]]))
    assert res.orbit_count == 6 and res.semiregular and res.valency_preserved
    assert find_isomorphism(res.quotient, complete_graph(6)) is not None


# census

def test_core_is_trivial():
    assert core_is_trivial(G(5, "(1 2 3 4 5)"), A5)
    assert not core_is_trivial(G(5, "(1 2)(3 4)", "(1 3)(2 4)"), G(5, "(1 2)(3 4)", "(1 3)(2 4)", "(1 2 3)"))
    assert not core_is_trivial(A5, S5)


def test_candidate_stabilizers_of_s5():
    cands = candidate_stabilizers(S5, S5.elements())
    tags = sorted(recognize_table3(H).value for H in cands)
    assert tags == sorted({"Z5", "D10", "F20"})
    assert all(core_is_trivial(H, S5) for H in cands)


def test_census_a5_contains_k6(a5_census):
    assert any(e.vertex_count == 6 and e.stabilizer_tag is StabilizerTag.D10
               and find_isomorphism(e.graph, complete_graph(6)) is not None for e in a5_census)


def test_census_of_group_without_order_five():
    assert census_pentavalent(G(3, "(1 2 3)")) == []


def test_census_cap():
    with pytest.raises(OrderExceedsCap):
        census_pentavalent(S5, order_cap=100)


def _check_entry(X, e: CensusEntry):
    spec = e.spec(X)
    assert e.valency == 5 and e.connected and e.graph.is_connected()
    assert e.graph.regular_degree() == 5
    assert spec.H.contains(e.g * e.g) and not spec.H.contains(e.g)
    assert valency_of_spec(spec) == 5 and is_connected_spec(spec)
    action = coset_action(spec, e.graph)
    assert action.is_transitive() and s_arc_orbits(e.graph, action, 1) == 1
    assert transitivity_degree(e.graph, action) == e.s_value == e.s_coset_action
    assert automorphism_group(e.graph).order() == e.aut_order


def test_census_entries_are_sound(a5_census, s5_census):
    for X, entries in ((A5, a5_census), (S5, s5_census)):
        assert entries
        for e in entries:
            _check_entry(X, e)


def test_census_s5_tags(s5_census):
    allowed = set(REFERENCE_REALIZATIONS)
    assert all(e.stabilizer_tag in allowed for e in s5_census)


def test_census_entries_pairwise_non_isomorphic(a5_census, s5_census):
    for entries in (a5_census, s5_census):
        for i, a in enumerate(entries):
            for b in entries[i + 1:]:
                assert find_isomorphism(a.graph, b.graph) is None


def test_census_is_deterministic(a5_census):
    again = census_pentavalent(A5)
    assert [e.to_json() for e in again] == [e.to_json() for e in a5_census]


def test_entry_json(a5_census):
    record = a5_census[0].to_json("graph0.edges")
    assert record["edge_list"] == "graph0.edges"
    assert isinstance(record["aut_order"], str) and record["valency"] == 5
