import json
import math

import jsonschema
import pytest

from catg.cli import main
from catg.formats import parse_edge_list, read_generator_file

from conftest import data_path, load_schema


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, schema, *argv):
    code, out, err = run(capsys, *argv, "--json")
    assert code == 0, err
    data = json.loads(out)
    jsonschema.validate(data, load_schema(schema))
    return data


# verify-a79

@pytest.mark.slow
def test_verify_a79(capsys, tmp_path):
    report = tmp_path / "cert.json"
    code, out, err = run(capsys, "verify-a79", "--report", report)
    assert code == 0, err
    lines = out.splitlines()
    assert len(lines) == 13 and lines[-1] == "overall: PASS (12/12)"
    data = json.loads(report.read_text())
    jsonschema.validate(data, load_schema("certificate"))
    assert "timings" not in data


def test_verify_a79_failure_exit_code(capsys, tmp_path):
    text = data_path("a79.perms").read_text()
    bad = tmp_path / "bad.perms"
    # swap the roles of a and b: the conjugation relation breaks
    bad.write_text(text.replace("\nb = ", "\nB = ").replace("\na = ", "\nb = ").replace("\nB = ", "\na = "))
    code, out, _ = run(capsys, "verify-a79", "--fixture", bad, "--json")
    assert code == 1
    data = json.loads(out)
    jsonschema.validate(data, load_schema("certificate"))
    assert data["overall"] is False


def test_verify_a79_missing_fixture(capsys, tmp_path):
    code, _, err = run(capsys, "verify-a79", "--fixture", tmp_path / "nope.perms")
    assert code == 2 and "nope.perms" in err


# group

def test_group_order_of_h(capsys):
    code, out, _ = run(capsys, "group", "--file", data_path("h.perms"), "--order")
    assert code == 0 and out == "80\n"


def test_group_json(capsys):
    data = run_json(capsys, "group", "group", "--file", data_path("h.perms"),
                    "--orbits", "--stabilizer", "1", "--tag")
    assert data["order"] == "80" and data["tag"] == "F20xZ4"
    assert data["stabilizer"]["order"] == "1" and len(data["orbits"]) == 1


def test_group_subset_and_text(capsys):
    code, out, _ = run(capsys, "group", "--file", data_path("a79.perms"), "--gens", "a,b,c,x1",
                       "--stabilizer", "1")
    assert code == 0
    assert out.splitlines()[1] == f"order {math.factorial(80) // 2}"
    assert out.splitlines()[-1] == f"stabilizer of 1 has order {math.factorial(79) // 2}"


def test_group_errors(capsys, tmp_path):
    code, _, err = run(capsys, "group", "--file", data_path("h.perms"), "--gens", "a,zz")
    assert code == 2 and "zz" in err
    code, _, _ = run(capsys, "group", "--file", data_path("h.perms"), "--stabilizer", "81")
    assert code == 2
    bad = tmp_path / "bad.perms"
    bad.write_text("degree 4\n\nr = (1 2 5)\n")
    code, _, err = run(capsys, "group", "--file", bad)
    assert code == 2 and "line 3" in err


# coset-graph

def test_coset_graph_a80(capsys):
    data = run_json(capsys, "coset-graph", "coset-graph", "--file", data_path("a79.perms"),
                    "--X", "a,b,c,x1", "--H", "a,b,c", "--g", "x1")
    assert data["valency"] == 5 and data["connected"] is True
    assert data["index"] == str(math.factorial(79) // 2)
    assert int(data["index"]) * 80 == int(data["order_X"])


def test_coset_graph_refuses_to_materialize_a80(capsys):
    code, _, err = run(capsys, "coset-graph", "--file", data_path("a79.perms"),
                       "--X", "a,b,c,x1", "--H", "a,b,c", "--g", "x1", "--materialize")
    assert code == 2 and "exceeds" in err


def test_coset_graph_materialize(capsys, tmp_path):
    perms = tmp_path / "a5d10.perms"
    perms.write_text("degree 5\na = (1 2 3)\nb = (1 2 3 4 5)\nr = (2 5)(3 4)\ng = (1 2)(3 4)\n")
    edges, dot = tmp_path / "g.edges", tmp_path / "g.dot"
    data = run_json(capsys, "coset-graph", "coset-graph", "--file", perms, "--X", "a,b",
                    "--H", "b,r", "--g", "g", "--edges", edges, "--dot", dot)
    assert data["vertex_count"] == 6 and data["edge_count"] == 15 and data["bfs_connected"]
    assert parse_edge_list(edges.read_text())[0] == 6
    assert dot.read_text().startswith("graph")


def test_coset_graph_invalid_spec(capsys, tmp_path):
    perms = tmp_path / "s3.perms"
    perms.write_text("degree 3\nt = (1 2)\nr = (1 2 3)\n")
    code, _, _ = run(capsys, "coset-graph", "--file", perms, "--X", "t,r", "--H", "t", "--g", "t")
    assert code == 2


# cayley

def test_cayley_k6(capsys, tmp_path):
    data = run_json(capsys, "cayley", "cayley", "--file", data_path("z6.perms"), "--G", "g1",
                    "--S", "g1,g2,g3,g4,g5", "--aut")
    assert data["vertex_count"] == 6 and data["valency"] == 5
    assert data["aut_order"] == "720" and data["normal"] is False and data["aut_G_S_order"] == "2"


def test_cayley_close_inverses(capsys, tmp_path):
    edges = tmp_path / "c6.edges"
    code, out, err = run(capsys, "cayley", "--file", data_path("z6.perms"), "--G", "g1",
                         "--S", "g1", "--close-inverses", "--edges", edges)
    assert code == 0, err
    assert "valency 2" in out
    assert len(parse_edge_list(edges.read_text())[1]) == 6
    code, _, err = run(capsys, "cayley", "--file", data_path("z6.perms"), "--G", "g1", "--S", "g1")
    assert code == 2 and "invers" in err


# aut

def test_aut_k6(capsys):
    code, out, _ = run(capsys, "aut", "--graph", data_path("k6.edges"))
    assert code == 0 and out == "order 720\n"


def test_aut_k55_and_generators(capsys, tmp_path):
    gens = tmp_path / "aut.perms"
    data = run_json(capsys, "aut", "aut", "--graph", data_path("k55.edges"), "--s-transitivity",
                    "--generators", gens)
    assert data == {"vertex_count": 10, "order": "28800", "s": 3}
    degree, perms = read_generator_file(gens)
    assert degree == 10 and perms


def test_aut_petersen(capsys):
    code, out, _ = run(capsys, "aut", "--graph", data_path("petersen.edges"), "--s-transitivity")
    assert code == 0 and out == "order 120\ns 3\n"


def test_aut_errors(capsys, tmp_path):
    bad = tmp_path / "bad.edges"
    bad.write_text("vertices 3\n0 1\n1 7\n")
    code, _, err = run(capsys, "aut", "--graph", bad)
    assert code == 2 and "line 3" in err
    code, _, _ = run(capsys, "aut", "--graph", data_path("k6.edges"), "--vertex-cap", "5")
    assert code == 2
    code, _, _ = run(capsys, "aut", "--graph", data_path("k6.edges"), "--vertex-cap", "0")
    assert code == 2


# census

def test_census_a5(capsys, tmp_path):
    out_dir = tmp_path / "census"
    data = run_json(capsys, "census", "census", "--file", data_path("a5.perms"), "--out-dir", out_dir)
    assert data["group_order"] == "60"
    k6 = [e for e in data["entries"] if e["vertex_count"] == 6]
    assert k6 and k6[0]["stabilizer_tag"] == "D10" and k6[0]["aut_order"] == "720"
    for e in data["entries"]:
        assert parse_edge_list(open(e["edge_list"]).read())[0] == e["vertex_count"]


def test_census_text(capsys):
    code, out, _ = run(capsys, "census", "--file", data_path("s5.perms"))
    assert code == 0 and out.split()[1] == "entries"


# quotient

def test_quotient_k66i(capsys, tmp_path):
    dot = tmp_path / "q.dot"
    data = run_json(capsys, "quotient", "quotient", "--graph", data_path("k66i.edges"),
                    "--file", data_path("k66i.perms"), "--X", "s,r,t", "--N", "t", "--dot", dot)
    assert data["orbit_count"] == 6 and data["semiregular"] and data["valency_preserved"]
    assert data["quotient_valency"] == 5 and dot.exists()


def test_quotient_not_normal(capsys):
    code, _, err = run(capsys, "quotient", "--graph", data_path("k66i.edges"),
                       "--file", data_path("k66i.perms"), "--X", "s,r,t", "--N", "s")
    assert code == 2 and "normal" in err


# tables

def test_tables(capsys):
    code, out, _ = run(capsys, "tables", "--table", "insoluble")
    assert code == 0 and "23040" in out
    data = run_json(capsys, "tables", "tables")
    assert [t["table"] for t in data] == ["primitive", "index", "soluble", "insoluble"]
    code, out, _ = run(capsys, "tables", "--check")
    assert code == 0 and "table checks pass" in out


def test_out_option(capsys, tmp_path):
    out = tmp_path / "order.txt"
    code, stdout, _ = run(capsys, "group", "--file", data_path("h.perms"), "--order", "--out", out)
    assert code == 0 and stdout == "" and out.read_text() == "80\n"


# usage

def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "aut")[0] == 2
    assert run(capsys, "group", "--file", "/nonexistent/file.perms")[0] == 2


def test_help(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "verify-a79" in out
