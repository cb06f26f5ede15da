"""Ray generators of the braid cone and of its Weyl-chamber fan.

A ray is stored as the bitset ``A`` of its 0-1 lattice vector ``e_A``. The
cone's rays are the dimension-1 upsets; the fan adds every upset of higher
dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poset import UPSET, Poset, SubsetWithDim, popcount, upset_masks


@dataclass(frozen=True)
class RaySet:
    cone_rays: tuple[SubsetWithDim, ...]
    fan_rays: tuple[SubsetWithDim, ...]


def rays(P: Poset) -> RaySet:
    cone, fan = [], []
    full = P.full
    for A in upset_masks(P):
        if A == 0 or A == full:
            continue
        d = P.cc(A) + P.cc(full & ~A) - 1
        ray = SubsetWithDim(A, UPSET, d)
        fan.append(ray)
        if d == 1:
            cone.append(ray)
    return RaySet(tuple(cone), tuple(fan))


def cone_ray_masks(P: Poset) -> list[int]:
    """Bitsets of the dimension-1 upsets only; the oracle's hot path."""
    full = P.full
    cc = P.cc
    out = []
    for A in upset_masks(P):
        if A and A != full and cc(A) == 1 and cc(full & ~A) == 1:
            out.append(A)
    return out


def is_smooth(P: Poset) -> bool:
    """The Hasse diagram is a tree (it is connected by construction)."""
    edges = sum(popcount(c) for c in P.cover_up)
    return edges == P.n - 1
