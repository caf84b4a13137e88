"""Permutations of {1..n} and cycle notation.

Multiplication follows the right-action convention used throughout the
package: ``p * q`` (equivalently ``compose(p, q)``) applies ``p`` first and
then ``q``, so that ``x^(pq) = (x^p)^q``.  Conjugation ``conjugate(p, g)``
is ``g^-1 * p * g``.

All points seen by callers are 1-based.  Images are stored 0-based.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from functools import reduce

__all__ = [
    "Permutation",
    "PermutationError",
    "CycleParseError",
    "parse_cycles",
    "format_cycles",
    "cycle_decomposition",
    "compose",
    "inverse",
    "conjugate",
    "element_order",
    "cycle_type",
    "fixed_points",
    "identity",
]


class PermutationError(ValueError):
    pass


class CycleParseError(PermutationError):
    """Malformed cycle notation; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class Permutation:
    """An immutable bijection of {1..degree}."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images, *, zero_based: bool = False):
        img = tuple(int(x) for x in images)
        if not zero_based:
            img = tuple(x - 1 for x in img)
        n = len(img)
        if n == 0:
            raise PermutationError("degree must be positive")
        if sorted(img) != list(range(n)):
            raise PermutationError("images do not form a bijection of 1..%d" % n)
        self._img = img
        self._hash = None

    @classmethod
    def _trusted(cls, img: tuple) -> "Permutation":
        p = cls.__new__(cls)
        p._img = img
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree <= 0:
            raise PermutationError("degree must be positive")
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        return parse_cycles(text, degree)

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple:
        """1-based image table: ``images[i-1]`` is the image of point ``i``."""
        return tuple(x + 1 for x in self._img)

    def __call__(self, point: int) -> int:
        if not 1 <= point <= len(self._img):
            raise PermutationError(f"point {point} out of range 1..{len(self._img)}")
        return self._img[point - 1] + 1

    def _check(self, other: "Permutation") -> None:
        if not isinstance(other, Permutation):
            raise TypeError(f"expected Permutation, got {type(other).__name__}")
        if len(other._img) != len(self._img):
            raise PermutationError(
                f"degree mismatch: {len(self._img)} vs {len(other._img)}")

    def __mul__(self, other: "Permutation") -> "Permutation":
        self._check(other)
        return Permutation._trusted(tuple(map(other._img.__getitem__, self._img)))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self._img)
        for i, x in enumerate(self._img):
            inv[x] = i
        return Permutation._trusted(tuple(inv))

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Permutation.identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __xor__(self, g: "Permutation") -> "Permutation":
        # p ^ g is the conjugate g^-1 p g, mirroring exponent notation
        return conjugate(self, g)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._img)
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        return self._img < other._img

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))

    def support(self) -> list[int]:
        return [i + 1 for i, x in enumerate(self._img) if i != x]

    def cycles(self) -> list[list[int]]:
        return cycle_decomposition(self)

    def order(self) -> int:
        return element_order(self)

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation.from_cycles({format_cycles(self)!r}, {self.degree})"


def identity(degree: int) -> Permutation:
    return Permutation.identity(degree)


_TOKEN = re.compile(rb"\s+|\(|\)|[0-9]+|.", re.S)


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse cycle notation such as ``"(1 2 3)(4 5)"`` into a permutation.

    Unlisted points are fixed.  Empty text and ``"()"`` give the identity.
    A point may occur at most once in the whole string.
    """
    if degree <= 0:
        raise PermutationError("degree must be positive")
    raw = text.encode() if isinstance(text, str) else bytes(text)
    img = list(range(degree))
    seen: set[int] = set()
    cycle: list[int] | None = None
    open_at = 0
    for m in _TOKEN.finditer(raw):
        tok, pos = m.group(), m.start()
        if tok.isspace():
            continue
        if tok == b"(":
            if cycle is not None:
                raise CycleParseError("nested '('", pos)
            cycle, open_at = [], pos
        elif tok == b")":
            if cycle is None:
                raise CycleParseError("unmatched ')'", pos)
            for i, x in enumerate(cycle):
                img[x - 1] = cycle[(i + 1) % len(cycle)] - 1
            cycle = None
        elif tok.isdigit():
            if cycle is None:
                raise CycleParseError("point outside parentheses", pos)
            x = int(tok)
            if not 1 <= x <= degree:
                raise CycleParseError(f"point {x} out of range 1..{degree}", pos)
            if x in seen:
                raise CycleParseError(f"point {x} repeated", pos)
            seen.add(x)
            cycle.append(x)
        else:
            raise CycleParseError(f"unexpected character {tok!r}", pos)
    if cycle is not None:
        raise CycleParseError("unclosed '('", open_at)
    return Permutation._trusted(tuple(img))


def cycle_decomposition(p: Permutation) -> list[list[int]]:
    """Nontrivial cycles, each starting at its minimum, ordered by that minimum."""
    img = p._img
    seen = [False] * len(img)
    out = []
    for start in range(len(img)):
        if seen[start] or img[start] == start:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x + 1)
            x = img[x]
        out.append(cyc)
    return out


def format_cycles(p: Permutation) -> str:
    cycles = cycle_decomposition(p)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    return p * q


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def conjugate(p: Permutation, g: Permutation) -> Permutation:
    """Return ``g^-1 p g``."""
    return g.inverse() * p * g


def cycle_type(p: Permutation) -> Counter:
    return Counter(len(c) for c in cycle_decomposition(p))


def element_order(p: Permutation) -> int:
    return reduce(math.lcm, cycle_type(p).keys(), 1)


def fixed_points(p: Permutation) -> set[int]:
    return {i + 1 for i, x in enumerate(p._img) if i == x}
