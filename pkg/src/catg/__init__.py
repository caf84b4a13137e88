"""Permutation groups, coset and Cayley graphs, and symmetry computations
for pentavalent arc-transitive graphs."""

__version__ = "0.1.0"

from .perm import Permutation, parse_cycles, format_cycles  # noqa: E402
from .group import PermGroup, OrderExceedsCap  # noqa: E402
from .graphs import Graph, CosetGraphSpec, CayleyGraphSpec  # noqa: E402

__all__ = [
    "__version__",
    "Permutation",
    "parse_cycles",
    "format_cycles",
    "PermGroup",
    "OrderExceedsCap",
    "Graph",
    "CosetGraphSpec",
    "CayleyGraphSpec",
]
