"""Classification data for pentavalent symmetric graphs, as checked records.

The data lives in one text block (``_DATA``) so every row can be read and
grepped as plain text.  It is parsed once at import and
``self_check_tables`` verifies the arithmetic relations between the tables.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

from .structure import StabilizerTag

__all__ = [
    "PrimitiveRecord",
    "IndexRecord",
    "StabilizerRecord",
    "TableCheck",
    "PRIMITIVE",
    "INDEX",
    "STABILIZERS",
    "lookup_primitive",
    "lookup_stabilizers",
    "self_check_tables",
    "format_table",
    "TABLE_NAMES",
]

SOLUBLE_BOUND = 80                 # soluble stabilizer orders divide this
INSOLUBLE_BOUND = 2**9 * 3**2 * 5  # insoluble stabilizer orders divide this
INDEX_BOUND = 2**5 * 3**2

_DATA = """
[primitive]   # group | point stabilizer | degree
A8        | A7             | 8
A10       | A9             | 10
A16       | A15            | 16
A20       | A19            | 20
PSL(4,3)  | Z3^3:PSL(3,3)  | 40
A40       | A39            | 40
A80       | A79            | 80

[index]       # group | subgroup | index
An        | An-1           | n | 2^5*3^2
M11       | PSL(2,11)      | 12
M12       | M11            | 12
M24       | M23            | 24

[soluble]     # s | stabilizer names | orders
1 | Z5, D10, D20     | 5, 10, 20
2 | F20, F20xZ2      | 20, 40
3 | F20xZ4           | 80

[insoluble]   # s | stabilizer names | orders
2 | A5, S5                                  | 60, 120
3 | A4xA5, (A4xA5):Z2, S4xS5                | 720, 1440, 2880
4 | ASL(2,4), AGL(2,4), ASigmaL(2,4), AGammaL(2,4) | 960, 1920, 2880, 5760
5 | Z2^6:GammaL(2,4)                        | 23040
"""


@dataclass(frozen=True)
class PrimitiveRecord:
    group_name: str
    stabilizer_name: str
    degree: int


@dataclass(frozen=True)
class IndexRecord:
    group_name: str
    subgroup_name: str
    index_description: str


@dataclass(frozen=True)
class StabilizerRecord:
    soluble: bool
    s: int
    names: tuple[str, ...]
    orders: tuple[int, ...]

    @property
    def order(self) -> int | tuple[int, ...]:
        """An int for a one-group soluble row; otherwise the tuple of orders."""
        return self.orders[0] if self.soluble and len(self.orders) == 1 else self.orders


def _split_names(field: str) -> tuple[str, ...]:
    """Split on commas outside parentheses, so ASL(2,4) stays whole."""
    names, depth, cur = [], 0, ""
    for ch in field:
        depth += (ch == "(") - (ch == ")")
        if ch == "," and depth == 0:
            names.append(cur.strip())
            cur = ""
        else:
            cur += ch
    names.append(cur.strip())
    return tuple(names)


def _parse(text: str):
    sections: dict[str, list[list[str]]] = {}
    current = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = sections.setdefault(line[1:-1], [])
            continue
        current.append([f.strip() for f in line.split("|")])

    primitive = tuple(PrimitiveRecord(g, k, int(d)) for g, k, d in sections["primitive"])
    index = tuple(IndexRecord(row[0], row[1], " | ".join(row[2:])) for row in sections["index"])
    stabilizers = {}
    for kind in ("soluble", "insoluble"):
        for s, names, orders in sections[kind]:
            rec = StabilizerRecord(
                soluble=kind == "soluble",
                s=int(s),
                names=_split_names(names),
                orders=tuple(int(o) for o in orders.split(",")),
            )
            stabilizers[(rec.soluble, rec.s)] = rec
    return primitive, index, stabilizers


PRIMITIVE, INDEX, STABILIZERS = _parse(_DATA)
TABLE_NAMES = ("primitive", "index", "soluble", "insoluble")


def lookup_primitive(d: int) -> list[PrimitiveRecord]:
    """Primitive simple-group actions whose degree divides ``d``."""
    if d < 1:
        raise ValueError("degree must be positive")
    return [r for r in PRIMITIVE if d % r.degree == 0]


def lookup_stabilizers(s: int, soluble: bool) -> StabilizerRecord:
    try:
        return STABILIZERS[(bool(soluble), s)]
    except KeyError:
        kind = "soluble" if soluble else "insoluble"
        raise ValueError(f"no {kind} stabilizer row for s = {s}") from None


@dataclass(frozen=True)
class TableCheck:
    name: str
    passed: bool
    detail: str


def _alt_degree(name: str) -> int | None:
    if name.startswith("A") and name[1:].isdigit():
        return int(name[1:])
    return None


def self_check_tables() -> list[TableCheck]:
    checks = []

    def check(name, ok, detail=""):
        checks.append(TableCheck(name, bool(ok), detail))

    check("primitive rows", len(PRIMITIVE) == 7, f"{len(PRIMITIVE)} rows")
    for r in PRIMITIVE:
        check(f"degree {r.degree} divides 80", SOLUBLE_BOUND % r.degree == 0)
        n = _alt_degree(r.group_name)
        if n is not None:
            check(f"{r.group_name} row", r.degree == n and _alt_degree(r.stabilizer_name) == n - 1,
                  f"{r.group_name} on {r.degree} points, stabilizer {r.stabilizer_name}")

    for r in INDEX:
        if r.index_description.isdigit():
            check(f"{r.group_name} index divides {INDEX_BOUND}", INDEX_BOUND % int(r.index_description) == 0)

    for (soluble, s), rec in STABILIZERS.items():
        bound = SOLUBLE_BOUND if soluble else INSOLUBLE_BOUND
        check(f"{'soluble' if soluble else 'insoluble'} s={s} arity", len(rec.names) == len(rec.orders))
        for name, o in zip(rec.names, rec.orders):
            check(f"{name} order {o} divides {bound}", bound % o == 0)
            if soluble:
                tag = StabilizerTag(name)
                check(f"{name} tag", tag.group_order == o and tag.s_value == s,
                      f"tag order {tag.group_order}, tag s {tag.s_value}")

    sol = [rec for (soluble, _), rec in STABILIZERS.items() if soluble]
    where80 = [rec.s for rec in sol if SOLUBLE_BOUND in rec.orders]
    check("order 80 only at s=3", where80 == [3], f"found at s={where80}")
    check("soluble s range", sorted(r.s for r in sol) == [1, 2, 3])
    insol = [rec for (soluble, _), rec in STABILIZERS.items() if not soluble]
    check("insoluble s range", sorted(r.s for r in insol) == [2, 3, 4, 5])
    check("largest insoluble order", max(max(r.orders) for r in insol) == INSOLUBLE_BOUND,
          f"lcm of insoluble orders {math.lcm(*(o for r in insol for o in r.orders))}")
    return checks


def _rows(table: str) -> tuple[list[str], list[list[str]]]:
    if table == "primitive":
        return ["group", "stabilizer", "degree"], [[r.group_name, r.stabilizer_name, str(r.degree)] for r in PRIMITIVE]
    if table == "index":
        return ["group", "subgroup", "index"], [[r.group_name, r.subgroup_name, r.index_description] for r in INDEX]
    if table in ("soluble", "insoluble"):
        soluble = table == "soluble"
        recs = sorted((r for r in STABILIZERS.values() if r.soluble == soluble), key=lambda r: r.s)
        return ["s", "stabilizers", "orders"], [
            [str(r.s), ", ".join(r.names), ", ".join(map(str, r.orders))] for r in recs]
    raise ValueError(f"unknown table {table!r}; choose from {', '.join(TABLE_NAMES)}")


def format_table(table: str, fmt: str = "text") -> str:
    header, rows = _rows(table)
    if fmt == "json":
        if table == "primitive":
            data = [asdict(r) for r in PRIMITIVE]
        elif table == "index":
            data = [asdict(r) for r in INDEX]
        else:
            soluble = table == "soluble"
            data = [{"soluble": r.soluble, "s": r.s, "names": list(r.names), "orders": list(r.orders)}
                    for r in sorted(STABILIZERS.values(), key=lambda r: r.s) if r.soluble == soluble]
        return json.dumps({"table": table, "rows": data}, indent=2) + "\n"
    widths = [max(len(x) for x in col) for col in zip(header, *rows)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in [header] + rows]
    return "\n".join(lines) + "\n"
