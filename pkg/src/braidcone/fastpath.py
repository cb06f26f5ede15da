"""Structural decision procedure for posets with a bottom or a top.

With a top element the only candidate labeling is the Moebius function of P
with an adjoined bottom (plus one at the top). Whether it works is decided
without enumerating upsets: repeatedly check that ``M_P`` (the minimal
elements together with the elements covering only minimal elements) is a
forest and that the tree downset condition holds, then collapse every tree of
``M_P`` to a point. Each round drops the length by one; a poset of length 1
with a top is Gorenstein.

Cost per round is ``O(k n^(k+2))`` for ``k`` trees in ``M_P``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, islice
from typing import NamedTuple

import networkx as nx

from .errors import (
    InvariantError,
    NoMaxError,
    NotAcyclicError,
    NotApplicableError,
    PosetError,
    QuotientNotPosetError,
)
from .gorenstein import GorensteinCertificate, Labeling, Verdict, chamber_labeling
from .poset import (
    Poset,
    bits,
    bounds,
    dual,
    is_bounded,
    length,
    mask_of,
    mobius_hat,
    popcount,
    upset_masks,
)


class MForest(NamedTuple):
    acyclic: bool
    trees: list[int]


@dataclass(frozen=True)
class QuotientPoset:
    """Tree-relation quotient.

    ``classes[X]`` lists the members of class ``X`` as a bitset over the
    *original* elements (flattened through earlier rounds); ``parent_classes``
    gives the same classes over the elements of the poset that was quotiented,
    and ``back_map`` sends each of those elements to its class id.
    """

    classes: tuple[int, ...]
    order: Poset
    back_map: tuple[int, ...]
    parent_classes: tuple[int, ...]


@dataclass(frozen=True)
class TdcWitness:
    """A generated downset ``A_j`` that is connected but meets M in the wrong
    number of components. Bitsets are over the poset that was checked."""

    S: int
    excluded_tree: int
    tree: int
    A_j: int
    expected_m: int
    found_cc: int


@dataclass(frozen=True)
class FastPathFailure:
    iteration: int
    reason: str  # "m_cycle" or "tree_downset"
    stage: Poset
    origin: tuple[int, ...]  # stage element -> original-element bitset
    cycle: tuple[tuple[int, int], ...] | None = None
    tdc: TdcWitness | None = None
    dualized: bool = False

    def lift(self, mask: int) -> int:
        """Translate a stage bitset to original elements."""
        out = 0
        for i in bits(mask):
            out |= self.origin[i]
        return out


def m_set(P: Poset) -> int:
    minimal = P.minimal()
    return mask_of(x for x in range(P.n) if not (P.cover_down[x] & ~minimal))


def m_forest_check(P: Poset) -> MForest:
    M = m_set(P)
    trees = sorted(P.components(M))
    edges = sum(popcount(P.cover_up[x] & M) for x in bits(M))
    return MForest(edges == popcount(M) - len(trees), trees)


def _cycle_in(P: Poset, M: int) -> tuple[tuple[int, int], ...]:
    G = nx.Graph(P.hasse_edges(M))
    cyc = nx.cycle_basis(G)[0]
    return tuple(zip(cyc, cyc[1:] + cyc[:1]))


def tree_quotient(P: Poset, origin: tuple[int, ...] | None = None,
                  root_names: tuple[str, ...] | None = None) -> QuotientPoset:
    """Collapse each tree of ``M_P`` to a single element.

    ``origin``/``root_names`` let iterated quotients keep referring to the
    elements of the poset the iteration started from. Raises
    :class:`~braidcone.errors.TooSmallError` if everything collapses to one
    class (P was already a single tree of M).
    """
    forest = m_forest_check(P)
    if not forest.acyclic:
        raise NotAcyclicError("M_P contains a cycle; the tree relation is undefined")
    if origin is None:
        origin = tuple(1 << i for i in range(P.n))
        root_names = P.names
    merged = set(forest.trees)
    in_tree = 0
    for t in forest.trees:
        in_tree |= t
    parent = list(forest.trees) + [1 << x for x in range(P.n) if not in_tree >> x & 1]
    flat = []
    for cls in parent:
        m = 0
        for x in bits(cls):
            m |= origin[x]
        flat.append(m)
    order_ix = sorted(range(len(parent)), key=lambda k: tuple(bits(flat[k])))
    parent = [parent[k] for k in order_ix]
    flat = [flat[k] for k in order_ix]
    back = [0] * P.n
    for k, cls in enumerate(parent):
        for x in bits(cls):
            back[x] = k
    names = []
    for cls, m in zip(parent, flat):
        if cls in merged and popcount(cls) > 1:
            names.append("{" + ",".join(root_names[i] for i in bits(m)) + "}")
        else:
            names.append(P.names[next(bits(cls))])
    up = []
    for k, cls in enumerate(parent):
        row = 0
        for x in bits(cls):
            for y in bits(P.up[x]):
                row |= 1 << back[y]
        up.append(row & ~(1 << k))
    try:
        order = Poset(len(parent), tuple(up), tuple(names))
    except PosetError as err:
        if len(parent) < 2:
            raise
        raise QuotientNotPosetError(f"tree quotient is not a poset: {err}") from err
    return QuotientPoset(tuple(flat), order, tuple(back), tuple(parent))


def _downset(P: Poset, S: int) -> int:
    D = S
    for i in bits(S):
        D |= P.down[i]
    return D


def tree_downset_condition(P: Poset) -> TdcWitness | None:
    """First violation of the tree downset condition, or ``None`` if it holds.

    Sets ``S`` outside ``M_P`` are scanned by size, then lexicographically;
    excluded trees in ascending order.
    """
    if P.top() is None:
        raise NoMaxError("the tree downset condition needs a top element")
    forest = m_forest_check(P)
    if not forest.acyclic:
        raise NotAcyclicError("M_P contains a cycle")
    M = m_set(P)
    trees = forest.trees
    outside = [x for x in range(P.n) if not M >> x & 1]
    down = [(1 << x) | P.down[x] for x in range(P.n)]
    for size in range(1, len(trees) + 1):
        for S in combinations(outside, size):
            dS = 0
            for x in S:
                dS |= down[x]
            meeting = [k for k, T in enumerate(trees) if T & dS]
            m = len(meeting)
            for j in meeting:
                gen = dS
                for k in meeting:
                    if k != j:
                        gen |= trees[k]
                A = _downset(P, gen)
                if P.cc(A) != 1:
                    continue
                found = P.cc(A & M)
                if found != m:
                    return TdcWitness(mask_of(S), j, trees[j], A, m, found)
    return None


def mobius_labeling(P: Poset) -> Labeling:
    """Moebius values of P with a fresh bottom, plus one at the top.

    Only a candidate: it is the Gorenstein labeling exactly when one exists.
    """
    top = P.top()
    if top is None:
        raise NoMaxError("poset has no top element")
    phi = list(mobius_hat(P).mu)
    phi[top] += 1
    return Labeling(tuple(phi), 1)


def quotients(P: Poset, steps: int | None = None) -> list[QuotientPoset]:
    """Successive tree quotients, stopping at ``steps``, at length 1, or when
    M stops being a forest."""
    out = []
    stage, origin, names = P, tuple(1 << i for i in range(P.n)), P.names
    while (steps is None or len(out) < steps) and length(stage) > 1:
        if not m_forest_check(stage).acyclic:
            break
        q = tree_quotient(stage, origin, names)
        out.append(q)
        stage, origin = q.order, q.classes
    return out


def decide_fast(P: Poset, bounded_shortcut: bool = True, verify_limit: int = 20,
                verify_sample: int = 4096) -> GorensteinCertificate:
    """Decide Gorensteinness for a poset with a bottom or a top.

    Posets with only a bottom are dualized first. With both bounds the answer
    is immediate unless ``bounded_shortcut`` is off, in which case the
    quotient iteration runs anyway. Q-Gorenstein of index above one cannot
    occur on this class, so the verdict is binary.
    """
    has_min, has_max = bounds(P)
    if not (has_min or has_max):
        raise NotApplicableError("poset has neither a bottom nor a top element")
    if has_min and has_max and bounded_shortcut:
        return GorensteinCertificate(
            Verdict.GORENSTEIN, chamber_labeling(P), 1, crepant=True, method="bounded"
        )
    dualized = has_min and not has_max
    Q = dual(P) if dualized else P
    stage, origin = Q, tuple(1 << i for i in range(Q.n))
    k = 0
    while length(stage) > 1:
        forest = m_forest_check(stage)
        if not forest.acyclic:
            fail = FastPathFailure(k, "m_cycle", stage, origin,
                                   cycle=_cycle_in(stage, m_set(stage)), dualized=dualized)
            return _no(fail)
        w = tree_downset_condition(stage)
        if w is not None:
            return _no(FastPathFailure(k, "tree_downset", stage, origin, tdc=w, dualized=dualized))
        q = tree_quotient(stage, origin, Q.names)
        stage, origin = q.order, q.classes
        k += 1

    L = mobius_labeling(Q)
    if dualized:
        L = -L
    if P.n <= verify_limit:
        _spot_check(P, L, verify_sample)
    return GorensteinCertificate(
        Verdict.GORENSTEIN, L, 1, crepant=is_bounded(P), method="fast",
        details={"iterations": k, "dualized": dualized},
    )


def _no(fail: FastPathFailure) -> GorensteinCertificate:
    return GorensteinCertificate(
        Verdict.NOT_Q_GORENSTEIN, witness=fail, method="fast",
        details={"iterations": fail.iteration, "dualized": fail.dualized},
    )


def _spot_check(P: Poset, L: Labeling, limit: int) -> None:
    full = P.full
    if L.total(full) != 0:
        raise InvariantError("fast-path labeling does not sum to zero")
    for A in islice(upset_masks(P), limit):
        if A and A != full and P.cc(A) == 1 and P.cc(full & ~A) == 1 and L.total(A) != 1:
            raise InvariantError(
                f"fast-path labeling fails on ray {sorted(P.labels(A))}"
            )
