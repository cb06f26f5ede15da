"""Finite connected posets on bitsets.

Elements are ``0..n-1``; every subset of elements is a Python ``int`` used as
a bitset (bit ``i`` set means element ``i`` is a member).  ``names`` are for
display and I/O only and default to ``"1".."n"``.

Posets are immutable. All functions in this module are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import networkx as nx

from .errors import CycleError, DisconnectedError, PosetError, TooSmallError

UPSET = "upset"
DOWNSET = "downset"
PLAIN = "plain"


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for i in elements:
        m |= 1 << i
    return m


@dataclass(frozen=True, eq=False)
class Poset:
    """A strict partial order with derived Hasse diagram.

    ``up[i]`` is the bitset of all ``j`` with ``i < j``. Construct through
    :func:`from_relations` (which takes the transitive closure); the raw
    constructor expects an already transitive relation and validates it.
    """

    n: int
    up: tuple[int, ...]
    names: tuple[str, ...] = ()
    down: tuple[int, ...] = field(init=False, repr=False)
    cover_up: tuple[int, ...] = field(init=False, repr=False)
    cover_down: tuple[int, ...] = field(init=False, repr=False)
    adj: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        n = self.n
        if n < 2:
            raise TooSmallError(f"a poset needs at least 2 elements, got {n}")
        if len(self.up) != n:
            raise PosetError("order rows do not match element count")
        if not self.names:
            object.__setattr__(self, "names", tuple(str(i + 1) for i in range(n)))
        elif len(self.names) != n or len(set(self.names)) != n:
            raise PosetError("element names must be distinct, one per element")
        full = (1 << n) - 1
        down = [0] * n
        for i, row in enumerate(self.up):
            if row & ~full:
                raise PosetError("order row references elements outside the poset")
            if row >> i & 1:
                raise CycleError(f"element {self.names[i]} lies below itself")
            for j in bits(row):
                down[j] |= 1 << i
        for i, row in enumerate(self.up):
            if row & down[i]:
                j = next(bits(row & down[i]))
                raise CycleError(
                    f"elements {self.names[i]} and {self.names[j]} are mutually related"
                )
            for j in bits(row):
                if self.up[j] & ~row:
                    raise PosetError("order relation is not transitive")
        cover_up = []
        for i, row in enumerate(self.up):
            above_above = 0
            for j in bits(row):
                above_above |= self.up[j]
            cover_up.append(row & ~above_above)
        cover_down = [0] * n
        for i, row in enumerate(cover_up):
            for j in bits(row):
                cover_down[j] |= 1 << i
        object.__setattr__(self, "down", tuple(down))
        object.__setattr__(self, "cover_up", tuple(cover_up))
        object.__setattr__(self, "cover_down", tuple(cover_down))
        object.__setattr__(self, "adj", tuple(u | d for u, d in zip(cover_up, cover_down)))
        if len(self.components(self.full)) != 1:
            raise DisconnectedError("the Hasse diagram is disconnected")

    # -- basic views -----------------------------------------------------

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def lt(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def matrix(self) -> list[list[bool]]:
        return [[self.lt(i, j) for j in range(self.n)] for i in range(self.n)]

    @property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Cover pairs ``(i, j)`` with ``i`` covered by ``j``, sorted."""
        return tuple((i, j) for i in range(self.n) for j in bits(self.cover_up[i]))

    def relations(self) -> tuple[tuple[int, int], ...]:
        """All pairs ``(i, j)`` with ``i < j``."""
        return tuple((i, j) for i in range(self.n) for j in bits(self.up[i]))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PosetError(f"unknown element {name!r}") from None

    def mask(self, names: Iterable[str]) -> int:
        """Bitset for a collection of element names."""
        return mask_of(self.index(x) for x in names)

    def labels(self, mask: int) -> frozenset[str]:
        """Element names of a bitset."""
        return frozenset(self.names[i] for i in bits(mask))

    def minimal(self) -> int:
        return mask_of(i for i in range(self.n) if not self.down[i])

    def maximal(self) -> int:
        return mask_of(i for i in range(self.n) if not self.up[i])

    def bottom(self) -> int | None:
        m = self.minimal()
        return m.bit_length() - 1 if popcount(m) == 1 else None

    def top(self) -> int | None:
        m = self.maximal()
        return m.bit_length() - 1 if popcount(m) == 1 else None

    def linear_extension(self) -> list[int]:
        # i < j forces strictly fewer elements below i
        return sorted(range(self.n), key=lambda i: (popcount(self.down[i]), i))

    def components(self, mask: int) -> list[int]:
        """Connected components of the Hasse subgraph induced on ``mask``."""
        comps = []
        adj = self.adj
        rest = mask
        while rest:
            comp = frontier = rest & -rest
            while frontier:
                reach = 0
                for i in bits(frontier):
                    reach |= adj[i]
                frontier = reach & rest & ~comp
                comp |= frontier
            comps.append(comp)
            rest &= ~comp
        return comps

    def cc(self, mask: int) -> int:
        return len(self.components(mask))

    def is_upset(self, mask: int) -> bool:
        return all(not (self.up[i] & ~mask) for i in bits(mask))

    def is_downset(self, mask: int) -> bool:
        return all(not (self.down[i] & ~mask) for i in bits(mask))

    def hasse_edges(self, mask: int | None = None) -> list[tuple[int, int]]:
        if mask is None:
            return list(self.covers)
        return [(i, j) for i, j in self.covers if mask >> i & 1 and mask >> j & 1]

    def key(self) -> tuple:
        return (self.n, self.up, self.names)

    def __eq__(self, other):
        return isinstance(other, Poset) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        rels = ", ".join(f"{self.names[i]}<{self.names[j]}" for i, j in self.covers)
        return f"Poset(n={self.n}, covers=[{rels}])"


@dataclass(frozen=True)
class SubsetWithDim:
    members: int
    kind: str
    dim: int

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(bits(self.members))


@dataclass(frozen=True)
class MobiusTable:
    """Moebius function of P with an adjoined bottom; ``mu[i]`` is element ``i``."""

    mu: tuple[int, ...]
    mu_hat0: int = 1

    def __getitem__(self, i: int) -> int:
        return self.mu[i]


@dataclass(frozen=True)
class BlockCutTree:
    blocks: tuple[int, ...]
    cut_vertices: int
    tree_edges: tuple[tuple[int, int], ...]  # (block index, cut vertex)


def closure(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    """Transitive closure of the relation as ``up`` bitsets (not validated)."""
    up = [0] * n
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise PosetError(f"relation ({i}, {j}) out of range for n={n}")
        up[i] |= 1 << j
    for k in range(n):
        row_k = up[k]
        bit_k = 1 << k
        for i in range(n):
            if up[i] & bit_k:
                up[i] |= row_k
    return up


def from_relations(
    n: int, pairs: Iterable[tuple[int, int]], names: Sequence[str] | None = None
) -> Poset:
    """Build the poset generated by ``i < j`` for each pair (0-based)."""
    if n < 2:
        raise TooSmallError(f"a poset needs at least 2 elements, got {n}")
    up = closure(n, pairs)
    return Poset(n, tuple(up), tuple(names) if names else ())


def from_named_relations(
    pairs: Iterable[tuple[str, str]], elements: Sequence[str] | None = None
) -> Poset:
    """Build a poset from ``(a, b)`` name pairs meaning ``a < b``.

    Without ``elements`` the element order is first appearance.
    """
    pairs = list(pairs)
    if elements is None:
        seen: dict[str, None] = {}
        for a, b in pairs:
            seen.setdefault(a)
            seen.setdefault(b)
        elements = list(seen)
    pos = {x: i for i, x in enumerate(elements)}
    return from_relations(len(elements), [(pos[a], pos[b]) for a, b in pairs], elements)


def dual(P: Poset) -> Poset:
    return Poset(P.n, P.down, P.names)


def length(P: Poset) -> int:
    height = [0] * P.n
    for i in P.linear_extension():
        height[i] = max((height[j] + 1 for j in bits(P.down[i])), default=0)
    return max(height)


def bounds(P: Poset) -> tuple[bool, bool]:
    return P.bottom() is not None, P.top() is not None


def is_bounded(P: Poset) -> bool:
    return all(bounds(P))


def dimension(P: Poset, A: int) -> int:
    """``cc(A) + cc(complement) - 1`` on induced Hasse subgraphs."""
    return P.cc(A) + P.cc(P.full & ~A) - 1


def upset_masks(P: Poset) -> Iterator[int]:
    """Every upset exactly once, in increasing bitset order.

    Decides elements from the highest index down. Including an element forces
    everything above it in; excluding one forces everything below it out, so
    no branch dead-ends. The count may be exponential in ``n``.
    """
    up, down = P.up, P.down

    def walk(e: int, inside: int, outside: int) -> Iterator[int]:
        if e < 0:
            yield inside
            return
        bit = 1 << e
        if inside & bit:
            yield from walk(e - 1, inside, outside)
        elif outside & bit:
            yield from walk(e - 1, inside, outside)
        else:
            yield from walk(e - 1, inside, outside | bit | down[e])
            yield from walk(e - 1, inside | bit | up[e], outside)

    return walk(P.n - 1, 0, 0)


def upsets(P: Poset) -> Iterator[SubsetWithDim]:
    for A in upset_masks(P):
        yield SubsetWithDim(A, UPSET, dimension(P, A))


def downsets(P: Poset) -> Iterator[SubsetWithDim]:
    """Downsets as complements of upsets, in increasing bitset order."""
    full = P.full
    masks = sorted(full & ~A for A in upset_masks(P))
    for D in masks:
        yield SubsetWithDim(D, DOWNSET, dimension(P, D))


def downset_of(P: Poset, S: int) -> SubsetWithDim:
    D = S
    for i in bits(S):
        D |= P.down[i]
    return SubsetWithDim(D, DOWNSET, dimension(P, D))


def upset_of(P: Poset, S: int) -> SubsetWithDim:
    U = S
    for i in bits(S):
        U |= P.up[i]
    return SubsetWithDim(U, UPSET, dimension(P, U))


def induced(P: Poset, mask: int) -> tuple[Poset, tuple[int, ...]]:
    """Subposet on ``mask``; returns it with the sub-index -> element map."""
    elems = tuple(bits(mask))
    pos = {e: k for k, e in enumerate(elems)}
    up = tuple(mask_of(pos[j] for j in bits(P.up[e] & mask)) for e in elems)
    return Poset(len(elems), up, tuple(P.names[e] for e in elems)), elems


def block_cut_tree(P: Poset) -> BlockCutTree:
    G = nx.Graph()
    G.add_nodes_from(range(P.n))
    G.add_edges_from(P.covers)
    blocks = sorted(mask_of(b) for b in nx.biconnected_components(G))
    cut = mask_of(nx.articulation_points(G))
    edges = tuple(
        (k, v) for k, block in enumerate(blocks) for v in bits(block & cut)
    )
    return BlockCutTree(tuple(blocks), cut, edges)


def mobius_hat(P: Poset) -> MobiusTable:
    """Moebius values of P with a fresh bottom adjoined (even if P has one)."""
    mu = [0] * P.n
    for x in P.linear_extension():
        mu[x] = -1 - sum(mu[y] for y in bits(P.down[x]))
    return MobiusTable(tuple(mu))


def glue(P1: Poset, x1: int, P2: Poset, x2: int) -> tuple[Poset, tuple[int, ...]]:
    """Identify ``x1`` in P1 with ``x2`` in P2.

    P1 keeps its indices; the other elements of P2 follow in order. Returns the
    glued poset and the map from P2 indices to glued indices. The glued name of
    the shared point is ``"<name1>~<name2>"`` when the names differ.
    """
    others = [e for e in range(P2.n) if e != x2]
    where = {x2: x1}
    for k, e in enumerate(others):
        where[e] = P1.n + k
    n = P1.n + len(others)
    pairs = list(P1.relations()) + [(where[i], where[j]) for i, j in P2.relations()]
    names = list(P1.names) + [P2.names[e] for e in others]
    if P1.names[x1] != P2.names[x2]:
        names[x1] = f"{P1.names[x1]}~{P2.names[x2]}"
    if len(set(names)) != n:
        names = []
    return from_relations(n, pairs, names or None), tuple(where[e] for e in range(P2.n))
