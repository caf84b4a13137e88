"""Recognition of the soluble pentavalent vertex-stabilizer types.

A connected pentavalent (X, s)-transitive graph with soluble vertex
stabilizer has stabilizer Z5, D10 or D20 (s = 1), F20 or F20 x Z2 (s = 2),
or F20 x Z4 (s = 3).  The six groups are told apart by a fingerprint
(order, abelian flag, element-order multiset, centre and derived-subgroup
orders) compared against explicit reference realizations.  The references
are checked to be pairwise distinct at import time.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

from .group import OrderExceedsCap, PermGroup
from .perm import Permutation, parse_cycles

__all__ = [
    "GroupFingerprint",
    "StabilizerTag",
    "fingerprint",
    "recognize_table3",
    "infer_s",
    "REFERENCE_REALIZATIONS",
    "FINGERPRINT_CAP",
]

FINGERPRINT_CAP = 200


@dataclass(frozen=True)
class GroupFingerprint:
    order: int
    abelian: bool
    element_orders: tuple[tuple[int, int], ...]  # sorted (order, count) pairs
    center_order: int
    derived_order: int

    def element_order_counts(self) -> dict[int, int]:
        return dict(self.element_orders)


class StabilizerTag(enum.Enum):
    Z5 = "Z5"
    D10 = "D10"
    D20 = "D20"
    F20 = "F20"
    F20xZ2 = "F20xZ2"
    F20xZ4 = "F20xZ4"
    Other = "Other"

    @property
    def group_order(self) -> int | None:
        return _TAG_ORDER.get(self)

    @property
    def s_value(self) -> int | None:
        return _TAG_S.get(self)


_TAG_ORDER = {
    StabilizerTag.Z5: 5, StabilizerTag.D10: 10, StabilizerTag.D20: 20,
    StabilizerTag.F20: 20, StabilizerTag.F20xZ2: 40, StabilizerTag.F20xZ4: 80,
}
_TAG_S = {
    StabilizerTag.Z5: 1, StabilizerTag.D10: 1, StabilizerTag.D20: 1,
    StabilizerTag.F20: 2, StabilizerTag.F20xZ2: 2, StabilizerTag.F20xZ4: 3,
}


def _commutator(x: Permutation, y: Permutation) -> Permutation:
    return x.inverse() * y.inverse() * x * y


def _derived_subgroup(G: PermGroup) -> PermGroup:
    """Normal closure of the commutators of the generators."""
    gens = [c for x in G.generators for y in G.generators
            if not (c := _commutator(x, y)).is_identity()]
    if not gens:
        return PermGroup([G.identity()])
    D = PermGroup(gens)
    grew = True
    while grew:
        grew = False
        for d in list(D.generators):
            for g in G.generators:
                c = g.inverse() * d * g
                if not D.contains(c):
                    D = PermGroup(list(D.generators) + [c])
                    grew = True
    return D


def fingerprint(G: PermGroup, cap: int = FINGERPRINT_CAP) -> GroupFingerprint:
    if G.order() > cap:
        raise OrderExceedsCap(G.order(), cap)
    elems = G.elements(cap)
    orders = Counter(e.order() for e in elems)
    gens = G.generators
    center = sum(1 for e in elems if all(e * g == g * e for g in gens))
    abelian = all(x * y == y * x for x in gens for y in gens)
    return GroupFingerprint(
        order=len(elems),
        abelian=abelian,
        element_orders=tuple(sorted(orders.items())),
        center_order=center,
        derived_order=_derived_subgroup(G).order(),
    )


def _ref(degree: int, *cycles: str) -> PermGroup:
    return PermGroup([parse_cycles(c, degree) for c in cycles])


# F20 = AGL(1,5) on 1..5: x -> x+1 and x -> 2x (point k stands for k-1 mod 5)
REFERENCE_REALIZATIONS: dict[StabilizerTag, PermGroup] = {
    StabilizerTag.Z5: _ref(5, "(1 2 3 4 5)"),
    StabilizerTag.D10: _ref(5, "(1 2 3 4 5)", "(2 5)(3 4)"),
    StabilizerTag.D20: _ref(10, "(1 2 3 4 5 6 7 8 9 10)", "(2 10)(3 9)(4 8)(5 7)"),
    StabilizerTag.F20: _ref(5, "(1 2 3 4 5)", "(2 3 5 4)"),
    StabilizerTag.F20xZ2: _ref(7, "(1 2 3 4 5)", "(2 3 5 4)", "(6 7)"),
    StabilizerTag.F20xZ4: _ref(9, "(1 2 3 4 5)", "(2 3 5 4)", "(6 7 8 9)"),
}

REFERENCE_FINGERPRINTS: dict[StabilizerTag, GroupFingerprint] = {
    tag: fingerprint(G) for tag, G in REFERENCE_REALIZATIONS.items()
}


def _self_check() -> None:
    seen = {}
    for tag, fp in REFERENCE_FINGERPRINTS.items():
        if fp.order != tag.group_order:
            raise AssertionError(f"reference {tag.value} has order {fp.order}")
        if fp in seen:
            raise AssertionError(f"{tag.value} and {seen[fp].value} share a fingerprint")
        seen[fp] = tag


_self_check()
_BY_FINGERPRINT = {fp: tag for tag, fp in REFERENCE_FINGERPRINTS.items()}


def recognize_table3(G: PermGroup, cap: int = FINGERPRINT_CAP) -> StabilizerTag:
    if G.order() > cap:
        raise OrderExceedsCap(G.order(), cap)
    if G.order() not in (5, 10, 20, 40, 80):
        return StabilizerTag.Other
    return _BY_FINGERPRINT.get(fingerprint(G, cap), StabilizerTag.Other)


def infer_s(tag: StabilizerTag) -> int:
    if tag is StabilizerTag.Other:
        raise ValueError("no arc-transitivity level for an unrecognized stabilizer")
    return _TAG_S[tag]
