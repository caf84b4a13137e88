"""Text formats: generator files, edge lists, DOT.

Generator file::

    degree 80
    # comment
    a = (1 16 11 6)(2 17 12 7)...

Edge list::

    vertices 6
    0 1
    0 2
"""

from __future__ import annotations

import re
from pathlib import Path

from .perm import CycleParseError, Permutation, format_cycles, parse_cycles

__all__ = [
    "FormatError",
    "parse_generator_file",
    "read_generator_file",
    "format_generator_file",
    "parse_edge_list",
    "read_edge_list",
    "format_edge_list",
    "format_dot",
]

_NAME = re.compile(r"[A-Za-z0-9_]+\Z")


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


def parse_generator_file(text: str) -> tuple[int, dict[str, Permutation]]:
    """Return (degree, {name: permutation}) preserving file order."""
    degree = None
    perms: dict[str, Permutation] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree" or not parts[1].isdigit() or int(parts[1]) < 1:
                raise FormatError("expected 'degree <n>' header", lineno)
            degree = int(parts[1])
            continue
        name, eq, body = line.partition("=")
        name = name.strip()
        if not eq:
            raise FormatError("expected '<name> = <cycles>'", lineno)
        if not _NAME.match(name):
            raise FormatError(f"invalid name {name!r}", lineno)
        if name in perms:
            raise FormatError(f"duplicate name {name!r}", lineno)
        try:
            perms[name] = parse_cycles(body.strip(), degree)
        except CycleParseError as exc:
            raise FormatError(str(exc), lineno) from exc
    if degree is None:
        raise FormatError("missing 'degree <n>' header")
    return degree, perms


def read_generator_file(path) -> tuple[int, dict[str, Permutation]]:
    return parse_generator_file(Path(path).read_text())


def format_generator_file(perms: dict[str, Permutation], degree: int | None = None,
                          comment: str | None = None) -> str:
    if degree is None:
        degree = next(iter(perms.values())).degree
    lines = []
    if comment:
        lines += ["# " + c for c in comment.splitlines()]
    lines.append(f"degree {degree}")
    for name, p in perms.items():
        lines.append(f"{name} = {format_cycles(p)}")
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> tuple[int, list[tuple[int, int]]]:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "vertices" or not parts[1].isdigit():
                raise FormatError("expected 'vertices <n>' header", lineno)
            n = int(parts[1])
            continue
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise FormatError("expected '<u> <v>'", lineno)
        u, v = int(parts[0]), int(parts[1])
        if not (u < n and v < n):
            raise FormatError(f"vertex out of range 0..{n - 1}", lineno)
        if u == v:
            raise FormatError("loop edge", lineno)
        edges.append((min(u, v), max(u, v)))
    if n is None:
        raise FormatError("missing 'vertices <n>' header")
    return n, edges


def read_edge_list(path) -> tuple[int, list[tuple[int, int]]]:
    return parse_edge_list(Path(path).read_text())


def format_edge_list(n: int, edges) -> str:
    lines = [f"vertices {n}"]
    lines += [f"{u} {v}" for u, v in sorted(edges)]
    return "\n".join(lines) + "\n"


def format_dot(n: int, edges, labels=None, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(n):
        if labels is not None:
            lab = str(labels[v]).replace('"', '\\"')
            lines.append(f'  {v} [label="{lab}"];')
        else:
            lines.append(f"  {v};")
    lines += [f"  {u} -- {v};" for u, v in sorted(edges)]
    lines.append("}")
    return "\n".join(lines) + "\n"
