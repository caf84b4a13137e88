import pytest

from catg.formats import (
    FormatError,
    format_dot,
    format_edge_list,
    format_generator_file,
    parse_edge_list,
    parse_generator_file,
    read_generator_file,
)
from catg.perm import parse_cycles

from conftest import data_path


def test_generator_file_round_trip():
    text = "# two generators\ndegree 4\nr = (1 2 3 4)\ns = (1 3)  # reflection\n"
    degree, perms = parse_generator_file(text)
    assert degree == 4 and list(perms) == ["r", "s"]
    assert perms["s"] == parse_cycles("(1 3)", 4)
    again = parse_generator_file(format_generator_file(perms, degree))
    assert again == (degree, perms)


def test_bundled_files_parse():
    degree, perms = read_generator_file(data_path("a79.perms"))
    assert degree == 80 and list(perms) == ["a", "b", "c", "x1", "x2", "x3"]
    assert read_generator_file(data_path("h.perms"))[1] == {k: perms[k] for k in "abc"}


@pytest.mark.parametrize("text, line", [
    ("r = (1 2)\n", 1),                      # missing header
    ("degree x\n", 1),
    ("degree 3\nr (1 2)\n", 2),               # missing '='
    ("degree 3\nr-1 = (1 2)\n", 2),           # bad name
    ("degree 3\nr = (1 2)\nr = (2 3)\n", 3),  # duplicate
    ("degree 3\n\n# c\nr = (1 4)\n", 4),      # out of range, line number counts blanks and comments
])
def test_generator_file_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as exc:
        parse_generator_file(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_missing_header_in_empty_file():
    with pytest.raises(FormatError):
        parse_generator_file("# nothing\n")


def test_edge_list_round_trip():
    n, edges = parse_edge_list("vertices 3\n0 1\n2 1\n")
    assert n == 3 and edges == [(0, 1), (1, 2)]
    assert parse_edge_list(format_edge_list(n, edges)) == (n, edges)


@pytest.mark.parametrize("text, line", [
    ("0 1\n", 1),
    ("vertices 2\n0 2\n", 2),
    ("vertices 2\n1 1\n", 2),
    ("vertices 2\n0\n", 2),
])
def test_edge_list_errors(text, line):
    with pytest.raises(FormatError) as exc:
        parse_edge_list(text)
    assert exc.value.line == line


def test_dot():
    dot = format_dot(2, [(0, 1)], labels=["()", '(1 "2)'])
    assert dot.startswith("graph G {") and "0 -- 1;" in dot
    assert '\\"' in dot
