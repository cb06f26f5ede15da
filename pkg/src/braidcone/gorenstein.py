"""Brute-force Gorenstein oracle.

A labeling ``phi`` assigns an integer to each element so that the total is
zero and every dimension-1 upset sums to the same positive ``r``. Because the
dimension-1 upsets together with the all-ones vector have full rank, the
normalized system (``r = 1`` over the rationals) has at most one solution; its
denominators decide between Gorenstein, Q-Gorenstein of higher index, and
neither.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Any, Iterable, Sequence

from . import exact
from .cone import cone_ray_masks, rays
from .errors import (
    IndexMismatchError,
    InvariantError,
    NotApplicableError,
    NotUpsetError,
    UnderdeterminedError,
)
from .poset import Poset, bits, block_cut_tree, induced, is_bounded, upset_masks


class Verdict(str, enum.Enum):
    GORENSTEIN = "gorenstein"
    Q_GORENSTEIN_ONLY = "q_gorenstein_only"
    NOT_Q_GORENSTEIN = "not_q_gorenstein"


@dataclass(frozen=True)
class Labeling:
    phi: tuple[int, ...]
    r: int = 1

    def __neg__(self) -> "Labeling":
        return Labeling(tuple(-v for v in self.phi), self.r)

    def scaled(self, k: int) -> "Labeling":
        return Labeling(tuple(k * v for v in self.phi), k * self.r)

    def total(self, mask: int) -> int:
        return sum(self.phi[i] for i in bits(mask))


@dataclass(frozen=True)
class LinearWitness:
    """No labeling exists: ``sum(c * e_A) = 0`` in ``Z^n`` yet ``sum(c * target_A) = total != 0``.

    ``upsets`` may include the ground set (target 0, from the sum-zero
    constraint); every other member is a dimension-1 upset (target 1). The
    ground set is the whole poset, or the block ``scope`` when the witness
    comes from one biconnected component.
    """

    upsets: tuple[int, ...]
    coefficients: tuple[int, ...]
    total: int
    scope: int | None = None

    def targets(self, full: int) -> tuple[int, ...]:
        ground = full if self.scope is None else self.scope
        return tuple(0 if A == ground else 1 for A in self.upsets)


@dataclass(frozen=True)
class GorensteinCertificate:
    verdict: Verdict
    labeling: Labeling | None = None
    index: int | None = None
    crepant: bool = False
    witness: Any = None
    method: str = "brute"
    solution: tuple[Fraction, ...] | None = None
    details: dict = field(default_factory=dict, compare=False)

    @property
    def gorenstein(self) -> bool:
        return self.verdict is Verdict.GORENSTEIN

    @property
    def q_gorenstein(self) -> bool:
        return self.verdict is not Verdict.NOT_Q_GORENSTEIN


@dataclass(frozen=True)
class CrepantResult:
    crepant: bool
    labeling: Labeling | None
    # (dimension-1 upset summing to r, higher-dimensional upset that does not)
    violation: tuple[int, int] | None = None


def _system(n: int, targets: Sequence[int]):
    full = (1 << n) - 1
    A = [[1] * n] + [[(t >> i) & 1 for i in range(n)] for t in targets]
    b = [0] + [1] * len(targets)
    return A, b, [full] + list(targets)


def solve_labeling(P: Poset, targets: Iterable[int]) -> tuple[Fraction, ...] | None:
    """Rational ``y`` with total 0 and sum 1 over every target upset.

    Returns ``None`` if no such vector exists. Raises
    :class:`~braidcone.errors.UnderdeterminedError` when the targets do not
    pin ``y`` down.
    """
    targets = list(targets)
    for t in targets:
        if not P.is_upset(t):
            raise NotUpsetError(f"{sorted(P.labels(t))} is not an upset")
    A, b, _ = _system(P.n, targets)
    try:
        return exact.solve(A, b, P.n)
    except ValueError as err:
        raise UnderdeterminedError(str(err)) from None


def _witness(P: Poset, targets: Sequence[int]) -> LinearWitness:
    A, b, masks = _system(P.n, targets)
    cert = exact.inconsistency(A, b, P.n)
    if cert is None:
        raise InvariantError("solver reported inconsistency but no certificate exists")
    return LinearWitness(tuple(masks[i] for i in cert.rows), cert.coefficients, cert.total)


def gorenstein_status(P: Poset) -> GorensteinCertificate:
    targets = cone_ray_masks(P)
    A, b, _ = _system(P.n, targets)
    try:
        y = exact.solve(A, b, P.n)
    except ValueError:
        raise InvariantError("ray generators do not have full rank") from None
    bounded = is_bounded(P)
    if y is None:
        return GorensteinCertificate(
            Verdict.NOT_Q_GORENSTEIN, witness=_witness(P, targets), method="brute"
        )
    index = lcm(*(v.denominator for v in y))
    phi = tuple(int(v * index) for v in y)
    if index == 1:
        return GorensteinCertificate(
            Verdict.GORENSTEIN, Labeling(phi, 1), 1, crepant=bounded, method="brute"
        )
    return GorensteinCertificate(
        Verdict.Q_GORENSTEIN_ONLY,
        Labeling(phi, index),
        index,
        crepant=bounded,
        witness=y,
        method="brute",
        solution=y,
    )


def check_labeling(P: Poset, L: Labeling, fan: bool = False) -> int | None:
    """First upset violating ``L`` (dimension 1, or any positive dimension with
    ``fan``), or ``None`` if ``L`` is valid. A nonzero total reports the full set."""
    full = P.full
    if L.total(full) != 0:
        return full
    for A in upset_masks(P):
        if A == 0 or A == full:
            continue
        d = P.cc(A) + P.cc(full & ~A) - 1
        if (d == 1 or (fan and d >= 1)) and L.total(A) != L.r:
            return A
    return None


def chamber_labeling(P: Poset) -> Labeling:
    """-1 at the bottom, +1 at the top, 0 elsewhere (bounded posets only)."""
    lo, hi = P.bottom(), P.top()
    if lo is None or hi is None:
        raise NotApplicableError("poset is not bounded")
    phi = [0] * P.n
    phi[lo], phi[hi] = -1, 1
    return Labeling(tuple(phi), 1)


def crepant_status(P: Poset) -> CrepantResult:
    if is_bounded(P):
        L = chamber_labeling(P)
        if check_labeling(P, L, fan=True) is not None:
            raise InvariantError("chamber labeling of a bounded poset failed verification")
        return CrepantResult(True, L)
    cert = gorenstein_status(P)
    if cert.labeling is None:
        return CrepantResult(False, None)
    L = cert.labeling
    rs = rays(P)
    bad = next((ray.members for ray in rs.fan_rays if L.total(ray.members) != L.r), None)
    if bad is None:
        raise InvariantError("unbounded poset admits a chamber crepant labeling")
    return CrepantResult(False, None, (rs.cone_rays[0].members, bad))


def glue_labelings(L1: Labeling, L2: Labeling, x1: int, x2: int) -> Labeling:
    """Labeling of the glued poset, indexed as :func:`braidcone.poset.glue` does.

    Off the shared point the values are copied; at it they add.
    """
    if L1.r != L2.r:
        raise IndexMismatchError(f"labelings certify r={L1.r} and r={L2.r}")
    phi = list(L1.phi)
    phi[x1] += L2.phi[x2]
    phi.extend(v for e, v in enumerate(L2.phi) if e != x2)
    return Labeling(tuple(phi), L1.r)


def status_via_blocks(P: Poset) -> GorensteinCertificate:
    """Decide via biconnected components, then glue block labelings together."""
    tree = block_cut_tree(P)
    subs = []
    for k, block in enumerate(tree.blocks):
        sub, elems = induced(P, block)
        cert = gorenstein_status(sub)
        if cert.verdict is Verdict.NOT_Q_GORENSTEIN:
            w = cert.witness
            mapped = LinearWitness(
                tuple(_lift(A, elems) for A in w.upsets), w.coefficients, w.total, block
            )
            return GorensteinCertificate(
                Verdict.NOT_Q_GORENSTEIN,
                witness=mapped,
                method="blocks",
                details={"block": k, "block_members": block},
            )
        subs.append((elems, cert.labeling))

    index = lcm(*(L.r for _, L in subs))
    scaled = [(elems, L.scaled(index // L.r)) for elems, L in subs]

    # walk the block-cut tree, gluing each new block at its attaching cut vertex
    order, attach = _block_order(tree, P.n)
    elems0, L = scaled[order[0]]
    current = list(elems0)
    for k in order[1:]:
        elems, Lk = scaled[k]
        v = attach[k]
        L = glue_labelings(L, Lk, current.index(v), elems.index(v))
        current.extend(e for e in elems if e != v)
    phi = [0] * P.n
    for pos, e in enumerate(current):
        phi[e] = L.phi[pos]
    labeling = Labeling(tuple(phi), index)
    verdict = Verdict.GORENSTEIN if index == 1 else Verdict.Q_GORENSTEIN_ONLY
    return GorensteinCertificate(
        verdict,
        labeling,
        index,
        crepant=is_bounded(P),
        method="blocks",
        solution=tuple(Fraction(v, index) for v in phi) if index > 1 else None,
        details={"blocks": len(tree.blocks)},
    )


def _lift(mask: int, elems: Sequence[int]) -> int:
    out = 0
    for k in bits(mask):
        out |= 1 << elems[k]
    return out


def _block_order(tree, n: int) -> tuple[list[int], dict[int, int]]:
    """Breadth-first block order from block 0, with each block's glue vertex."""
    by_vertex: dict[int, list[int]] = {}
    for k, v in tree.tree_edges:
        by_vertex.setdefault(v, []).append(k)
    seen = {0}
    order = [0]
    attach: dict[int, int] = {}
    queue = deque([0])
    while queue:
        k = queue.popleft()
        for v in bits(tree.blocks[k] & tree.cut_vertices):
            for k2 in by_vertex[v]:
                if k2 not in seen:
                    seen.add(k2)
                    attach[k2] = v
                    order.append(k2)
                    queue.append(k2)
    if len(order) != len(tree.blocks):
        raise InvariantError("block-cut tree is not connected")
    return order, attach
