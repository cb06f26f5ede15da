"""Named posets: the worked examples and a few infinite families."""

from __future__ import annotations

import random

from .poset import Poset, closure, from_named_relations, from_relations, glue


def diamond() -> Poset:
    """1 < 2, 3 < 4: bounded, Hasse diagram a 4-cycle."""
    return from_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def vee() -> Poset:
    """Two minimal elements 1, 2 under a single top 3."""
    return from_relations(3, [(0, 2), (1, 2)])


def glued_parts() -> tuple[Poset, Poset]:
    P1 = from_named_relations([("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")], "abcd")
    P2 = from_named_relations([("x", "z"), ("y", "z")], "xyz")
    return P1, P2


def glued() -> Poset:
    """Diamond a<b,c<d glued at c to the vee x,y<z at x."""
    P1, P2 = glued_parts()
    return glue(P1, P1.index("c"), P2, P2.index("x"))[0]


def mobius_p() -> Poset:
    """Nine elements with a 1hat; M_P is the path c-a-d-b-e. Not Gorenstein."""
    return from_named_relations(
        [
            ("a", "c"), ("a", "d"), ("b", "d"), ("b", "e"),
            ("c", "f"), ("d", "f"), ("c", "g"), ("e", "g"),
            ("d", "h"), ("e", "h"),
            ("f", "1hat"), ("g", "1hat"), ("h", "1hat"),
        ],
        ["a", "b", "c", "d", "e", "f", "g", "h", "1hat"],
    )


def mobius_q() -> Poset:
    """Six elements with a 1hat; M_Q = {a, b, c, d}."""
    return from_named_relations(
        [("a", "c"), ("a", "d"), ("b", "e"), ("c", "e"), ("d", "e"), ("e", "1hat")],
        ["a", "b", "c", "d", "e", "1hat"],
    )


def quotient_cycle() -> Poset:
    """Eight elements; passes the first round but its tree quotient has a 4-cycle in M."""
    return from_named_relations(
        [
            ("a", "d"), ("b", "d"), ("c", "e"),
            ("d", "f"), ("e", "f"), ("d", "g"), ("e", "g"),
            ("f", "1hat"), ("g", "1hat"),
        ],
        ["a", "b", "c", "d", "e", "f", "g", "1hat"],
    )


def successive_quotients() -> Poset:
    """Thirteen elements of length 4 whose quotients shrink to a 2-chain in three steps."""
    return from_named_relations(
        [
            ("a", "f"), ("b", "f"), ("c", "f"), ("c", "g"), ("d", "g"),
            ("f", "i"), ("g", "i"), ("g", "j"), ("g", "k"), ("e", "k"),
            ("i", "l"), ("j", "l"), ("j", "m"), ("k", "l"), ("k", "m"),
            ("l", "1hat"), ("m", "1hat"),
        ],
        ["a", "b", "c", "d", "e", "f", "g", "i", "j", "k", "l", "m", "1hat"],
    )


def balanced_bipartite_counterexample() -> Poset:
    """Length 1, biconnected, 4 minimal and 4 maximal elements, not Q-Gorenstein."""
    return from_named_relations(
        [
            ("1", "5"), ("1", "6"), ("1", "8"),
            ("2", "5"), ("2", "6"), ("2", "7"),
            ("3", "6"), ("3", "7"), ("3", "8"),
            ("4", "7"), ("4", "8"), ("4", "5"),
        ],
        [str(i) for i in range(1, 9)],
    )


EXAMPLES = {
    "diamond": diamond,
    "vee": vee,
    "glued": glued,
    "mobius_p": mobius_p,
    "mobius_q": mobius_q,
    "quotient_cycle": quotient_cycle,
    "successive_quotients": successive_quotients,
    "balanced_bipartite": balanced_bipartite_counterexample,
}


def chain(n: int) -> Poset:
    return from_relations(n, [(i, i + 1) for i in range(n - 1)])


def cycle(k: int) -> Poset:
    """The length-1 poset whose Hasse diagram is a 2k-cycle (k >= 2).

    Minimal elements ``0..k-1``; maximal element ``k+i`` covers ``i`` and ``i+1 mod k``.
    """
    return from_relations(2 * k, [p for i in range(k) for p in ((i, k + i), ((i + 1) % k, k + i))])


def complete_bipartite(n: int) -> Poset:
    """K_{n,n}: every one of ``n`` minimal elements below each of ``n`` maximal ones."""
    return from_relations(2 * n, [(i, n + j) for i in range(n) for j in range(n)])


def random_tree(n: int, rng: random.Random) -> Poset:
    """Random labeled tree with random edge orientations; its Hasse diagram is the tree."""
    edges = []
    for v in range(1, n):
        u = rng.randrange(v)
        edges.append((u, v) if rng.random() < 0.5 else (v, u))
    return from_relations(n, edges)


def random_poset(n: int, rng: random.Random, p: float = 0.3) -> Poset:
    """Random connected poset: random relations on a shuffled order, components joined."""
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    up = closure(n, pairs)
    # join components by relating consecutive component representatives
    comp = list(range(n))

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for i in range(n):
        for j in range(n):
            if up[i] >> j & 1:
                comp[find(i)] = find(j)
    roots = sorted({find(i) for i in range(n)}, key=perm.index)
    for a, b in zip(roots, roots[1:]):
        lo, hi = sorted((a, b), key=perm.index)
        pairs.append((lo, hi))
    return from_relations(n, pairs)


__all__ = [
    "EXAMPLES",
    "balanced_bipartite_counterexample",
    "chain",
    "complete_bipartite",
    "cycle",
    "diamond",
    "glued",
    "glued_parts",
    "mobius_p",
    "mobius_q",
    "quotient_cycle",
    "random_poset",
    "random_tree",
    "successive_quotients",
    "vee",
]
