"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
Results go to stdout (or ``--out``), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .census import NotAutomorphism, NotNormal, census_pentavalent, quotient_graph
from .certify import bundled_fixture, verify_construction_a79
from .formats import FormatError, format_generator_file, read_edge_list, read_generator_file
from .graphs import (
    DEFAULT_VERTEX_CAP,
    CayleyGraphSpec,
    CosetGraphSpec,
    Graph,
    IndexExceedsCap,
    InvalidConnectionSet,
    InvalidCosetSpec,
    coset_index,
    is_connected_spec,
    materialize_cayley_graph,
    materialize_coset_graph,
    valency_of_spec,
)
from .group import DEFAULT_CAP, OrderExceedsCap, PermGroup
from .perm import PermutationError, format_cycles
from .structure import recognize_table3
from .symmetry import (
    AUT_VERTEX_CAP,
    DegenerateValency,
    NotArcTransitive,
    VertexCapExceeded,
    aut_G_S,
    automorphism_group,
    is_normal_cayley,
    transitivity_degree,
)
from .tables import TABLE_NAMES, format_table, self_check_tables


class UsageError(Exception):
    pass


_INPUT_ERRORS = (
    UsageError, FormatError, PermutationError, OSError, InvalidCosetSpec, InvalidConnectionSet,
    OrderExceedsCap, IndexExceedsCap, VertexCapExceeded, NotNormal, NotAutomorphism,
    NotArcTransitive, DegenerateValency,
)


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[Path] = field(default_factory=list)
    vertex_cap: int = DEFAULT_VERTEX_CAP
    order_cap: int = DEFAULT_CAP
    enum_cap: int = DEFAULT_CAP
    fmt: str = "text"
    out: Path | None = None

    def validate(self) -> None:
        for name in ("vertex_cap", "order_cap", "enum_cap"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name.replace('_', '-')} must be positive")
        for p in self.inputs:
            if not p.is_file():
                raise UsageError(f"no such file: {p}")


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load_group(path: Path, names: str | None):
    """Read a generator file; return (all perms by name, group on the chosen names)."""
    degree, perms = read_generator_file(path)
    if not perms:
        raise UsageError(f"{path}: no generators")
    chosen = _pick(perms, names, path)
    return perms, PermGroup(chosen)


def _pick(perms: dict, names: str | None, path) -> list:
    if names is None:
        return list(perms.values())
    out = []
    for n in names.split(","):
        n = n.strip()
        if n not in perms:
            raise UsageError(f"{path}: no generator named {n!r}")
        out.append(perms[n])
    return out


def _load_graph(path: Path) -> Graph:
    n, edges = read_edge_list(path)
    return Graph.from_edges(n, edges)


# subcommands

def cmd_verify(args, cfg: RunConfig) -> int:
    path = args.fixture or bundled_fixture()
    report = verify_construction_a79(path)
    if cfg.fmt == "json":
        _emit(report.dumps(timings=args.timings), cfg.out)
    else:
        passed = sum(c.status == "pass" for c in report.checks)
        lines = report.summary_lines() + [
            f"overall: {'PASS' if report.overall else 'FAIL'} ({passed}/{len(report.checks)})"]
        _emit("\n".join(lines) + "\n", cfg.out)
    if args.report:
        Path(args.report).write_text(report.dumps(timings=args.timings))
    return 0 if report.overall else 1


def cmd_group(args, cfg: RunConfig) -> int:
    perms, G = _load_group(Path(args.file), args.gens)
    result = {"degree": G.degree, "order": str(G.order())}
    want_any = args.order or args.orbits or args.stabilizer is not None or args.tag
    if args.orbits or not want_any:
        result["orbits"] = G.orbits()
    if args.stabilizer is not None:
        if not 1 <= args.stabilizer <= G.degree:
            raise UsageError(f"point {args.stabilizer} out of range 1..{G.degree}")
        stab = G.point_stabilizer(args.stabilizer)
        result["stabilizer"] = {"point": args.stabilizer, "order": str(stab.order()),
                                "generators": [format_cycles(g) for g in stab.generators]}
    if args.tag:
        result["tag"] = recognize_table3(G, cfg.enum_cap).value if G.order() <= cfg.enum_cap else "Other"
    if cfg.fmt == "json":
        _emit(_dump(result), cfg.out)
        return 0
    if args.order and not (args.orbits or args.stabilizer is not None or args.tag):
        _emit(f"{G.order()}\n", cfg.out)
        return 0
    lines = [f"degree {G.degree}", f"order {G.order()}"]
    if "orbits" in result:
        lines.append("orbits " + " ".join("{" + ",".join(map(str, o)) + "}" for o in result["orbits"]))
    if "stabilizer" in result:
        lines.append(f"stabilizer of {args.stabilizer} has order {result['stabilizer']['order']}")
    if "tag" in result:
        lines.append(f"type {result['tag']}")
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0


def _write_graph(graph: Graph, args) -> None:
    if getattr(args, "edges", None):
        Path(args.edges).write_text(graph.to_edge_list())
    if getattr(args, "dot", None):
        Path(args.dot).write_text(graph.to_dot())


def cmd_coset_graph(args, cfg: RunConfig) -> int:
    perms = read_generator_file(args.file)[1]
    X = PermGroup(_pick(perms, args.X, args.file))
    H = PermGroup(_pick(perms, args.H, args.file))
    g = _pick(perms, args.g, args.file)
    if len(g) != 1:
        raise UsageError("--g names exactly one generator")
    spec = CosetGraphSpec(X, H, g[0])
    spec.validate()
    result = {
        "index": str(coset_index(spec)),
        "valency": valency_of_spec(spec, cfg.enum_cap),
        "connected": is_connected_spec(spec),
        "order_X": str(X.order()),
        "order_H": str(H.order()),
    }
    if args.materialize or args.edges or args.dot:
        graph = materialize_coset_graph(spec, cfg.vertex_cap)
        result["vertex_count"] = graph.vertex_count
        result["edge_count"] = graph.edge_count()
        result["bfs_connected"] = graph.is_connected()
        _write_graph(graph, args)
    if cfg.fmt == "json":
        _emit(_dump(result), cfg.out)
    else:
        _emit("".join(f"{k} {v}\n" for k, v in result.items()), cfg.out)
    return 0


def cmd_cayley(args, cfg: RunConfig) -> int:
    perms = read_generator_file(args.file)[1]
    G = PermGroup(_pick(perms, args.G, args.file))
    S = _pick(perms, args.S, args.file)
    if args.close_inverses:
        for s in list(S):
            if s.inverse() not in S:
                S.append(s.inverse())
    spec = CayleyGraphSpec(G, S)
    graph = materialize_cayley_graph(spec, cfg.vertex_cap)
    result = {
        "vertex_count": graph.vertex_count,
        "valency": graph.regular_degree(),
        "connected": graph.is_connected(),
    }
    if args.aut:
        A = automorphism_group(graph, cfg.vertex_cap)
        result["aut_order"] = str(A.order())
        result["normal"] = is_normal_cayley(spec, cfg.vertex_cap)
        result["aut_G_S_order"] = str(aut_G_S(spec, cfg.vertex_cap, cfg.enum_cap).order())
    _write_graph(graph, args)
    if cfg.fmt == "json":
        _emit(_dump(result), cfg.out)
    else:
        _emit("".join(f"{k} {v}\n" for k, v in result.items()), cfg.out)
    return 0


def cmd_aut(args, cfg: RunConfig) -> int:
    graph = _load_graph(Path(args.graph))
    A = automorphism_group(graph, cfg.vertex_cap)
    result = {"vertex_count": graph.vertex_count, "order": str(A.order())}
    if args.s_transitivity:
        result["s"] = transitivity_degree(graph, A)
    if args.generators:
        named = {f"g{i + 1}": p for i, p in enumerate(A.generators)}
        Path(args.generators).write_text(format_generator_file(
            named, graph.vertex_count, comment=f"automorphism group of {Path(args.graph).name}"))
    if cfg.fmt == "json":
        _emit(_dump(result), cfg.out)
    else:
        lines = [f"order {A.order()}"]
        if "s" in result:
            lines.append(f"s {result['s']}")
        _emit("\n".join(lines) + "\n", cfg.out)
    return 0


def cmd_census(args, cfg: RunConfig) -> int:
    _, X = _load_group(Path(args.file), args.X)
    entries = census_pentavalent(X, cfg.order_cap, cfg.vertex_cap)
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    records = []
    for i, e in enumerate(entries):
        path = None
        if out_dir:
            p = out_dir / f"entry{i + 1}.edges"
            p.write_text(e.graph.to_edge_list())
            path = str(p)
        records.append(e.to_json(path))
    if cfg.fmt == "json":
        _emit(_dump({"group_order": str(X.order()), "entries": records}), cfg.out)
    else:
        lines = [f"{len(entries)} entries"]
        for r in records:
            lines.append(f"vertices {r['vertex_count']}  stabilizer {r['stabilizer_tag']}  "
                         f"s {r['s_value']}  s(action) {r['s_coset_action']}  |Aut| {r['aut_order']}")
        _emit("\n".join(lines) + "\n", cfg.out)
    return 0


def cmd_quotient(args, cfg: RunConfig) -> int:
    graph = _load_graph(Path(args.graph))
    perms = read_generator_file(args.file)[1]
    X = PermGroup(_pick(perms, args.X, args.file))
    N = PermGroup(_pick(perms, args.N, args.file))
    res = quotient_graph(graph, X, N)
    result = {
        "orbit_count": res.orbit_count,
        "semiregular": res.semiregular,
        "valency_preserved": res.valency_preserved,
        "quotient_valency": res.quotient.regular_degree(),
        "orbit_map": list(res.orbit_map),
    }
    _write_graph(res.quotient, args)
    if cfg.fmt == "json":
        _emit(_dump(result), cfg.out)
    else:
        _emit("".join(f"{k} {v}\n" for k, v in result.items() if k != "orbit_map"), cfg.out)
    return 0


def cmd_tables(args, cfg: RunConfig) -> int:
    if args.check:
        checks = self_check_tables()
        failed = [c for c in checks if not c.passed]
        for c in failed:
            print(f"FAIL {c.name}: {c.detail}", file=sys.stderr)
        print(f"{len(checks) - len(failed)}/{len(checks)} table checks pass")
        return 1 if failed else 0
    names = TABLE_NAMES if args.table == "all" else (args.table,)
    if cfg.fmt == "json":
        data = [json.loads(format_table(t, "json")) for t in names]
        _emit(_dump(data if len(data) > 1 else data[0]), cfg.out)
    else:
        _emit("\n".join(f"[{t}]\n" + format_table(t) for t in names), cfg.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="catg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--out", help="write results here instead of stdout")
    common.add_argument("--vertex-cap", type=int, default=None)
    common.add_argument("--order-cap", type=int, default=DEFAULT_CAP)
    common.add_argument("--enum-cap", type=int, default=DEFAULT_CAP)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-a79", parents=[common], help="certify the A79 Cayley graph construction")
    p.add_argument("--fixture", help="generator file (default: bundled)")
    p.add_argument("--report", help="write the JSON certificate here")
    p.add_argument("--timings", action="store_true", help="include per-check wall times in the report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("group", parents=[common], help="order, orbits, stabilizer of a generator file")
    p.add_argument("--file", required=True)
    p.add_argument("--gens", help="comma-separated generator names (default: all)")
    p.add_argument("--order", action="store_true")
    p.add_argument("--orbits", action="store_true")
    p.add_argument("--stabilizer", type=int, metavar="POINT")
    p.add_argument("--tag", action="store_true", help="soluble stabilizer type of a small group")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("coset-graph", parents=[common], help="analyse Cos(X, H, g)")
    p.add_argument("--file", required=True)
    p.add_argument("--X", required=True, help="generator names of X")
    p.add_argument("--H", required=True, help="generator names of H")
    p.add_argument("--g", required=True, help="name of g")
    p.add_argument("--materialize", action="store_true")
    p.add_argument("--edges", help="write the edge list here")
    p.add_argument("--dot", help="write DOT here")
    p.set_defaults(func=cmd_coset_graph)

    p = sub.add_parser("cayley", parents=[common], help="build and analyse Cay(G, S)")
    p.add_argument("--file", required=True)
    p.add_argument("--G", required=True, help="generator names of G")
    p.add_argument("--S", required=True, help="names of the connection set elements")
    p.add_argument("--close-inverses", action="store_true", help="add missing inverses to S")
    p.add_argument("--aut", action="store_true", help="automorphism group, normality, Aut(G,S)")
    p.add_argument("--edges")
    p.add_argument("--dot")
    p.set_defaults(func=cmd_cayley)

    p = sub.add_parser("aut", parents=[common], help="automorphism group of an edge list")
    p.add_argument("--graph", required=True)
    p.add_argument("--s-transitivity", action="store_true")
    p.add_argument("--generators", help="write a generator file for the group here")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("census", parents=[common], help="pentavalent coset graphs of a small group")
    p.add_argument("--file", required=True)
    p.add_argument("--X", help="generator names (default: all)")
    p.add_argument("--out-dir", help="write one edge list per entry here")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("quotient", parents=[common], help="normal quotient of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--file", required=True, help="generator file acting on vertices 1..n")
    p.add_argument("--X", required=True)
    p.add_argument("--N", required=True)
    p.add_argument("--edges")
    p.add_argument("--dot")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("tables", parents=[common], help="print the classification tables")
    p.add_argument("--table", choices=TABLE_NAMES + ("all",), default="all")
    p.add_argument("--check", action="store_true", help="run the table self-checks")
    p.set_defaults(func=cmd_tables)
    return parser


def _config(args) -> RunConfig:
    inputs = [Path(v) for k in ("file", "graph", "fixture") if (v := getattr(args, k, None))]
    default_cap = AUT_VERTEX_CAP if args.command in ("aut", "cayley", "census") else DEFAULT_VERTEX_CAP
    cfg = RunConfig(
        subcommand=args.command,
        inputs=inputs,
        vertex_cap=args.vertex_cap if args.vertex_cap is not None else default_cap,
        order_cap=args.order_cap,
        enum_cap=args.enum_cap,
        fmt="json" if args.json else "text",
        out=Path(args.out) if args.out else None,
    )
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except _INPUT_ERRORS as exc:
        print(f"catg {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
