"""Permutation groups backed by a base and strong generating set.

The chain is built by a deterministic incremental Schreier-Sims: base points
are the smallest point moved by the element that needs a new level, Schreier
generators are tested in a fixed order, and a tested (orbit point, generator)
pair is never re-sifted.  Orders are exact Python integers.

Internally elements of degree <= 256 are packed into 256-byte tables so that
multiplication is a single ``bytes.translate`` call; larger degrees use
tuples.
"""

from __future__ import annotations

import functools
import math
from typing import Iterable, Sequence

from .perm import Permutation, PermutationError, conjugate

__all__ = [
    "PermGroup",
    "OrderExceedsCap",
    "group_from_generators",
    "order",
    "contains",
    "orbit",
    "is_transitive",
    "is_regular",
    "point_stabilizer",
    "enumerate_elements",
    "intersection_small",
    "conjugate_subgroup",
    "is_normal_in",
    "closure_elements",
    "clear_group_cache",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 10_000


class OrderExceedsCap(Exception):
    def __init__(self, order: int, cap: int):
        super().__init__(f"group order {order} exceeds cap {cap}")
        self.order = order
        self.cap = cap


_ID256 = bytes(range(256))


class _Bytes:
    """Degree <= 256.

    An element is stored as its ``degree``-byte image string; as the right
    operand of a product it must be padded to a 256-byte translation table.
    """

    mul = staticmethod(bytes.translate)

    def __init__(self, degree: int):
        self.degree = degree
        self.identity = _ID256[:degree]
        self._pad = _ID256[degree:]

    def encode(self, p: Permutation) -> bytes:
        return bytes(p._img)

    def decode(self, a: bytes) -> Permutation:
        return Permutation._trusted(tuple(a[: self.degree]))

    def table(self, a: bytes) -> bytes:
        return a[: self.degree] + self._pad

    def inv_table(self, a: bytes) -> bytes:
        return bytes.maketrans(a[: self.degree] + self._pad, _ID256)


class _Tuples:
    def __init__(self, degree: int):
        self.degree = degree
        self.identity = tuple(range(degree))

    @staticmethod
    def mul(a: tuple, b: tuple) -> tuple:
        return tuple(map(b.__getitem__, a))

    def encode(self, p: Permutation) -> tuple:
        return p._img

    def decode(self, a: tuple) -> Permutation:
        return Permutation._trusted(a)

    @staticmethod
    def table(a: tuple) -> tuple:
        return a

    @staticmethod
    def inv_table(a: tuple) -> tuple:
        out = [0] * len(a)
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)


def _backend(degree: int):
    return _Bytes(degree) if degree <= 256 else _Tuples(degree)


_POOL = 8
_QUIET = 12
_WARMUP_FACTOR = 4
_PHI = (5 ** 0.5 - 1) / 2
_PHI2 = 2 ** 0.5 - 1


def _order_bound(gens: Sequence, degree: int, all_even: bool) -> int:
    """Order of the largest group with the orbits of ``gens`` (and their parity)."""
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in gens:
        for x in range(degree):
            rx, ry = find(x), find(a[x])
            if rx != ry:
                parent[rx] = ry
    sizes: dict[int, int] = {}
    for x in range(degree):
        r = find(x)
        sizes[r] = sizes.get(r, 0) + 1
    bound = 1
    for s in sizes.values():
        bound *= math.factorial(s)
    if all_even and bound > 1:
        bound //= 2
    return bound


def _is_even(a, degree: int) -> bool:
    seen = bytearray(degree)
    transpositions = 0
    for start in range(degree):
        if seen[start]:
            continue
        x = start
        length = 0
        while not seen[x]:
            seen[x] = 1
            x = a[x]
            length += 1
        transpositions += length - 1
    return transpositions % 2 == 0


class _Chain:
    """Stabilizer chain: base, strong generators, and per-level transversals.

    ``reps[i][p]`` maps ``base[i]`` to ``p``; ``invtab[i][p]`` is the inverse
    as a multiplication table (None off the orbit).  ``level_gens[i]`` indexes
    the strong generators fixing ``base[:i]``; ``gens`` holds them as tables.
    """

    def __init__(self, be, degree: int, shortcuts: bool = True):
        self.be = be
        self.degree = degree
        self.shortcuts = shortcuts
        self.base: list[int] = []
        self.gens: list = []
        self.level_gens: list[list[int]] = []
        self.orbits: list[list[int]] = []
        self.reps: list[dict] = []
        self.invtab: list[list] = []
        # per level: None, or (outside points to check, parity required)
        # once the level is verified to be Sym or Alt of its support
        self.giant: list = []
        self.all_even = True

    def _moved(self, a) -> int:
        for i in range(self.degree):
            if a[i] != i:
                return i
        raise AssertionError("identity has no moved point")

    def _new_level(self, point: int) -> None:
        ident = self.be.identity
        self.base.append(point)
        self.level_gens.append([])
        self.orbits.append([point])
        self.reps.append({point: ident})
        tab = [None] * self.degree
        tab[point] = self.be.table(ident)
        self.invtab.append(tab)
        self.giant.append(None)

    def _extend_orbit(self, i: int, new) -> None:
        """Close orbit ``i`` after ``new`` joined its generators."""
        mul, inv = self.be.mul, self.be.inv_table
        orb, reps, invtab = self.orbits[i], self.reps[i], self.invtab[i]
        old_size = len(orb)
        for j in range(old_size):
            p = orb[j]
            q = new[p]
            if q not in reps:
                r = mul(reps[p], new)
                reps[q] = r
                invtab[q] = inv(r)
                orb.append(q)
        gens = [self.gens[k] for k in self.level_gens[i]]
        j = old_size
        while j < len(orb):
            p = orb[j]
            rp = reps[p]
            for s in gens:
                q = s[p]
                if q not in reps:
                    r = mul(rp, s)
                    reps[q] = r
                    invtab[q] = inv(r)
                    orb.append(q)
            j += 1

    def add_strong(self, a, upto: int) -> None:
        """Register ``a`` (fixing ``base[:upto]``) as a strong generator."""
        if upto == len(self.base):
            self._new_level(self._moved(a))
        a = self.be.table(a)
        for i in range(upto + 1):
            self.giant[i] = None
        k = len(self.gens)
        self.gens.append(a)
        for i in range(upto + 1):
            self.level_gens[i].append(k)
            self._extend_orbit(i, a)

    def _in_giant(self, a, flag, internal: bool) -> bool:
        outside, alternating = flag
        for x in outside:
            if a[x] != x:
                return False
        if not alternating or (internal and self.all_even):
            return True
        return _is_even(a, self.degree)

    def _mark_giant(self, i: int) -> None:
        """Flag level ``i`` (just verified) if it is the full Sym/Alt of its support."""
        support = set()
        for k in self.level_gens[i]:
            s = self.gens[k]
            support.update(x for x in range(self.degree) if s[x] != x)
        size = 1
        for orb in self.orbits[i:]:
            size *= len(orb)
        m = len(support)
        full = math.factorial(m)
        if size == full:
            alternating = False
        elif size * 2 == full:
            alternating = True
        else:
            return
        fixed = set(self.base[:i])
        outside = [x for x in range(self.degree) if x not in support and x not in fixed]
        self.giant[i] = (outside, alternating)

    def sift(self, a, start: int = 0, internal: bool = False):
        """Sift ``a`` from level ``start``; ``internal`` marks a known product of generators."""
        mul = self.be.mul
        i = start
        for b, tab, flag in zip(self.base[start:], self.invtab[start:], self.giant[start:]):
            if flag is not None and self._in_giant(a, flag, internal):
                return self.be.identity, len(self.base)
            r = tab[a[b]]
            if r is None:
                return a, i
            a = mul(a, r)
            i += 1
        return a, i

    def _warm_up(self, gens: list) -> None:
        """Sift a fixed sequence of generator products before verification.

        Product replacement on a small pool with a Weyl-sequence index
        schedule; stops after ``_QUIET`` consecutive products sift trivially.
        Only speeds up the exhaustive Schreier-generator pass that follows.
        """
        if not gens:
            return
        mul, ident = self.be.mul, self.be.identity
        pool = [gens[t % len(gens)] for t in range(max(_POOL, len(gens)))]
        r = len(pool)
        acc = ident
        quiet = 0
        for t in range(1, _WARMUP_FACTOR * self.degree + 50):
            i = int((t * _PHI) % 1.0 * r)
            j = (i + 1 + int((t * _PHI2) % 1.0 * (r - 1))) % r
            pool[i] = mul(pool[i], pool[j])
            acc = mul(acc, pool[i])
            h, k = self.sift(acc, 0, True)
            if h == ident:
                quiet += 1
                if quiet >= _QUIET:
                    return
            else:
                quiet = 0
                self.add_strong(h, k)

    def build(self, gens: Sequence) -> None:
        ident = self.be.identity
        self.all_even = all(_is_even(a, self.degree) for a in gens)
        for a in gens:
            if a == ident:
                continue
            h, j = self.sift(a)
            if h != ident:
                self.add_strong(h, j)
        self._warm_up([self.be.table(a) for a in gens if a != ident])
        if self.shortcuts and self.order() == _order_bound(gens, self.degree, self.all_even):
            # the chain already lists that many distinct elements, so it is complete
            for i in reversed(range(len(self.base))):
                self._mark_giant(i)
            return
        mul = self.be.mul
        done: list[set] = []
        i = len(self.base) - 1
        while i >= 0:
            while len(done) < len(self.base):
                done.append(set())
            failure = None
            seen = done[i]
            reps, invtab = self.reps[i], self.invtab[i]
            for p in self.orbits[i]:
                rp = reps[p]
                for k in self.level_gens[i]:
                    if (p, k) in seen:
                        continue
                    s = self.gens[k]
                    up = mul(rp, s)
                    q = s[p]
                    if up == reps[q]:
                        seen.add((p, k))
                        continue
                    h, j = self.sift(mul(up, invtab[q]), i + 1, True)
                    if h == ident:
                        seen.add((p, k))
                        continue
                    failure = (h, j)
                    break
                if failure:
                    break
            if failure is None:
                if self.shortcuts:
                    self._mark_giant(i)
                i -= 1
                continue
            h, j = failure
            self.add_strong(h, j)
            i = j

    def order(self) -> int:
        n = 1
        for orb in self.orbits:
            n *= len(orb)
        return n

    def tail(self, start: int) -> "_Chain":
        """The chain of the stabilizer of ``base[:start]``."""
        sub = _Chain(self.be, self.degree, self.shortcuts)
        keep = sorted(set().union(*self.level_gens[start:])) if start < len(self.base) else []
        index = {k: n for n, k in enumerate(keep)}
        sub.gens = [self.gens[k] for k in keep]
        sub.base = self.base[start:]
        sub.level_gens = [[index[k] for k in lg] for lg in self.level_gens[start:]]
        sub.orbits = self.orbits[start:]
        sub.reps = self.reps[start:]
        sub.invtab = self.invtab[start:]
        sub.giant = self.giant[start:]
        sub.all_even = self.all_even
        return sub


class PermGroup:
    """A permutation group given by generators, with an eagerly built BSGS.

    Treat instances as immutable.
    """

    def __init__(self, generators: Iterable[Permutation], *, base_prefix: Sequence[int] = (),
                 shortcuts: bool = True):
        gens = list(generators)
        if not gens:
            raise ValueError("empty generator list")
        n = gens[0].degree
        for g in gens:
            if not isinstance(g, Permutation):
                raise TypeError("generators must be Permutation instances")
            if g.degree != n:
                raise PermutationError(f"degree mismatch: {n} vs {g.degree}")
        self.degree = n
        self.generators: tuple[Permutation, ...] = tuple(gens)
        be = _backend(n)
        self._chain = _Chain(be, n, shortcuts)
        for pt in base_prefix:
            if not 1 <= pt <= n:
                raise ValueError(f"point {pt} out of range 1..{n}")
            if pt - 1 not in self._chain.base:
                self._chain._new_level(pt - 1)
        self._chain.build([be.encode(g) for g in gens])
        self._order = self._chain.order()

    @classmethod
    def _from_chain(cls, chain: _Chain, degree: int) -> "PermGroup":
        G = cls.__new__(cls)
        G.degree = degree
        be = chain.be
        gens = tuple(be.decode(a) for a in chain.gens)
        G.generators = gens or (Permutation.identity(degree),)
        G._chain = chain
        G._order = chain.order()
        return G

    # structure
    @property
    def base(self) -> list[int]:
        return [b + 1 for b in self._chain.base]

    @property
    def strong_generators(self) -> list[Permutation]:
        be = self._chain.be
        return [be.decode(a) for a in self._chain.gens]

    def transversal(self, level: int) -> dict[int, Permutation]:
        """Coset representatives at ``level``: point -> element mapping the base point there."""
        be = self._chain.be
        return {p + 1: be.decode(r) for p, r in self._chain.reps[level].items()}

    def order(self) -> int:
        return self._order

    def __len__(self) -> int:
        return self._order

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def sift(self, p: Permutation) -> tuple[Permutation, int]:
        """Residue of ``p`` after sifting, and the level where sifting stopped."""
        self._check(p)
        be = self._chain.be
        h, j = self._chain.sift(be.encode(p))
        return be.decode(h), j

    def contains(self, p: Permutation) -> bool:
        self._check(p)
        be = self._chain.be
        h, _ = self._chain.sift(be.encode(p))
        return h == be.identity

    __contains__ = contains

    def _check(self, p: Permutation) -> None:
        if p.degree != self.degree:
            raise PermutationError(f"degree mismatch: {self.degree} vs {p.degree}")

    def orbit(self, point: int) -> list[int]:
        if not 1 <= point <= self.degree:
            raise ValueError(f"point {point} out of range 1..{self.degree}")
        imgs = [g._img for g in self.generators]
        seen = {point - 1}
        todo = [point - 1]
        for x in todo:
            for a in imgs:
                y = a[x]
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return sorted(y + 1 for y in seen)

    def orbits(self) -> list[list[int]]:
        out, seen = [], set()
        for p in range(1, self.degree + 1):
            if p not in seen:
                o = self.orbit(p)
                seen.update(o)
                out.append(o)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(1)) == self.degree

    def is_regular(self) -> bool:
        return self.is_transitive() and self._order == self.degree

    def is_trivial(self) -> bool:
        return self._order == 1

    def point_stabilizer(self, point: int) -> "PermGroup":
        if not 1 <= point <= self.degree:
            raise ValueError(f"point {point} out of range 1..{self.degree}")
        chain = self._chain
        if not chain.base or chain.base[0] != point - 1:
            chain = PermGroup(self.generators, base_prefix=(point,))._chain
        return PermGroup._from_chain(chain.tail(1), self.degree)

    def elements(self, cap: int = DEFAULT_CAP) -> list[Permutation]:
        """All elements, identity first, without duplicates."""
        if self._order > cap:
            raise OrderExceedsCap(self._order, cap)
        chain = self._chain
        mul = chain.be.mul
        elems = [chain.be.identity]
        for i in reversed(range(len(chain.base))):
            reps = [chain.be.table(chain.reps[i][p]) for p in chain.orbits[i]]
            elems = [mul(e, r) for r in reps for e in elems]
        return [chain.be.decode(a) for a in elems]

    def __iter__(self):
        return iter(self.elements(self._order))

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (self.degree == other.degree and self._order == other._order
                and self.is_subgroup_of(other))

    __hash__ = None

    def __repr__(self) -> str:
        return f"<PermGroup degree={self.degree} order={self._order} gens={len(self.generators)}>"


@functools.lru_cache(maxsize=64)
def _cached_group(gens: tuple, shortcuts: bool) -> PermGroup:
    return PermGroup(gens, shortcuts=shortcuts)


def group_from_generators(gens: Iterable[Permutation], shortcuts: bool = True) -> PermGroup:
    """Group generated by ``gens``; identical generator tuples share one instance.

    ``shortcuts=False`` forces the exhaustive Schreier-generator check with
    no order-bound early exit.
    """
    gens = tuple(gens)
    if not gens:
        raise ValueError("empty generator list")
    return _cached_group(gens, shortcuts)


def clear_group_cache() -> None:
    """Drop the groups memoized by ``group_from_generators``."""
    _cached_group.cache_clear()


def order(G: PermGroup) -> int:
    return G.order()


def contains(G: PermGroup, p: Permutation) -> bool:
    return G.contains(p)


def orbit(G: PermGroup, point: int) -> set[int]:
    return set(G.orbit(point))


def is_transitive(G: PermGroup) -> bool:
    return G.is_transitive()


def is_regular(G: PermGroup) -> bool:
    return G.is_regular()


def point_stabilizer(G: PermGroup, point: int) -> PermGroup:
    return G.point_stabilizer(point)


def enumerate_elements(G: PermGroup, cap: int = DEFAULT_CAP) -> list[Permutation]:
    return G.elements(cap)


def _generate_from(elements: Iterable[Permutation], degree: int) -> PermGroup:
    """Group generated by ``elements``, keeping only generators that enlarge it."""
    gens: list[Permutation] = []
    G = None
    for h in elements:
        if h.is_identity() or (G is not None and G.contains(h)):
            continue
        gens.append(h)
        G = PermGroup(gens)
    return G if G is not None else PermGroup([Permutation.identity(degree)])


def intersection_small(H: PermGroup, K: PermGroup, cap: int = DEFAULT_CAP) -> PermGroup:
    """H ∩ K by filtering the elements of H (which must have order <= cap)."""
    if H.degree != K.degree:
        raise PermutationError(f"degree mismatch: {H.degree} vs {K.degree}")
    return _generate_from((h for h in H.elements(cap) if K.contains(h)), H.degree)


def conjugate_subgroup(H: PermGroup, g: Permutation) -> PermGroup:
    """H^g = g^-1 H g."""
    if g.degree != H.degree:
        raise PermutationError(f"degree mismatch: {H.degree} vs {g.degree}")
    return group_from_generators(conjugate(h, g) for h in H.generators)


def normality_witness(N: PermGroup, G: PermGroup):
    """A pair (n, g) of generators with n^g outside N, or None if N is normalized by G."""
    if N.degree != G.degree:
        raise PermutationError(f"degree mismatch: {N.degree} vs {G.degree}")
    for n in N.generators:
        for g in G.generators:
            if not N.contains(conjugate(n, g)):
                return n, g
    return None


def is_normal_in(N: PermGroup, G: PermGroup) -> bool:
    return normality_witness(N, G) is None


def closure_elements(gens: Sequence[Permutation], cap: int = DEFAULT_CAP) -> list[Permutation]:
    """Brute-force closure of ``gens`` under right multiplication (BFS from identity).

    Independent of the stabilizer chain; used as an oracle and for fixed
    element orderings.
    """
    gens = list(gens)
    e = Permutation.identity(gens[0].degree)
    seen = {e}
    out = [e]
    for x in out:
        for s in gens:
            y = x * s
            if y not in seen:
                if len(out) >= cap:
                    raise OrderExceedsCap(len(out) + 1, cap)
                seen.add(y)
                out.append(y)
    return out
