import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catg.certify import bundled_fixture
from catg.formats import parse_generator_file
from catg.perm import (
    CycleParseError,
    Permutation,
    PermutationError,
    compose,
    conjugate,
    cycle_decomposition,
    cycle_type,
    element_order,
    fixed_points,
    format_cycles,
    identity,
    inverse,
    parse_cycles,
)

from conftest import perm_pair, permutations


@pytest.fixture(scope="module")
def construction():
    return parse_generator_file(bundled_fixture().read_text())[1]


def test_parse_single_cycle():
    assert parse_cycles("(1 2 3)", 3).images == (2, 3, 1)


@pytest.mark.parametrize("text", ["", "()", "  "])
def test_parse_identity(text):
    assert parse_cycles(text, 5) == identity(5)


def test_parse_construction_a(construction):
    a = construction["a"]
    assert a(1) == 16 and a(16) == 11


def test_parse_product_of_cycles_fixes_unlisted_points():
    p = parse_cycles("(1 2)(4 5 6)", 7)
    assert p.images == (2, 1, 3, 5, 6, 4, 7)
    assert fixed_points(p) == {3, 7}


@pytest.mark.parametrize("text, offset", [
    ("(1 2 9)", 5),     # out of range
    ("(1 2)(2 3)", 6),  # repeated across cycles
    ("(1 2 1)", 5),     # repeated within a cycle
    ("(1 (2))", 3),     # nested
    ("1 2)", 0),        # point outside parentheses
    ("(1 2))", 5),      # unmatched close
    ("(1 2", 0),        # unclosed
    ("(1,2)", 2),       # unexpected character
])
def test_parse_errors_report_byte_offset(text, offset):
    with pytest.raises(CycleParseError) as exc:
        parse_cycles(text, 5)
    assert exc.value.offset == offset


def test_constructor_rejects_non_bijection():
    with pytest.raises(PermutationError):
        Permutation([1, 1, 2])
    with pytest.raises(PermutationError):
        Permutation([0, 1, 2])


def test_compose_applies_left_argument_first():
    p = parse_cycles("(1 2)", 3)
    q = parse_cycles("(2 3)", 3)
    # 1 -p-> 2 -q-> 3
    assert compose(p, q)(1) == 3
    assert compose(p, q) == parse_cycles("(1 3 2)", 3)


def test_compose_involution_squared():
    t = parse_cycles("(1 2)", 2)
    assert compose(t, t).is_identity()


def test_degree_mismatch():
    with pytest.raises(PermutationError):
        compose(identity(3), identity(4))


def test_conjugate_by_identity():
    p = parse_cycles("(1 2 3)", 3)
    assert conjugate(p, identity(3)) == p


def test_conjugate_relation_in_construction(construction):
    b, c = construction["b"], construction["c"]
    assert conjugate(c, b) == compose(c, c)


def test_conjugate_relabels_cycles():
    p = parse_cycles("(1 2 3)", 4)
    g = parse_cycles("(1 4)", 4)
    assert conjugate(p, g) == parse_cycles("(4 2 3)", 4)


def test_orders_in_construction(construction):
    assert element_order(construction["a"]) == 4
    assert element_order(construction["c"]) == 5
    assert cycle_type(construction["a"]) == {4: 20}
    assert 1 in fixed_points(construction["x1"])


def test_format_is_canonical():
    p = parse_cycles("(5 3)(4 2 1)", 6)
    assert format_cycles(p) == "(1 4 2)(3 5)"
    assert format_cycles(identity(4)) == "()"
    assert cycle_decomposition(p) == [[1, 4, 2], [3, 5]]


def test_str_and_repr():
    p = parse_cycles("(2 3)", 3)
    assert str(p) == "(2 3)"
    assert eval(repr(p), {"Permutation": Permutation}) == p


@given(perm_pair())
def test_inverse_laws(pq):
    p, q = pq
    assert compose(p, inverse(p)).is_identity()
    assert inverse(compose(p, q)) == compose(inverse(q), inverse(p))


@given(perm_pair())
def test_order_is_conjugation_invariant(pq):
    p, g = pq
    assert element_order(conjugate(p, g)) == element_order(p)


@given(perm_pair())
def test_conjugate_matches_definition(pq):
    p, g = pq
    assert conjugate(p, g) == compose(compose(inverse(g), p), g)


@given(permutations(max_degree=12))
def test_order_is_least_power_to_identity(p):
    k = element_order(p)
    assert (p ** k).is_identity()
    assert all(not (p ** j).is_identity() for j in range(1, k))


@settings(max_examples=200)
@given(permutations(max_degree=200))
def test_parse_print_round_trip(p):
    assert parse_cycles(format_cycles(p), p.degree) == p


@given(st.integers(1, 50), st.data())
def test_parity_matches_cycle_type(n, data):
    p = Permutation(data.draw(st.permutations(range(1, n + 1))))
    even_length = sum(k for length, k in cycle_type(p).items() if length % 2 == 0)
    assert p.is_even() == (even_length % 2 == 0)
