"""Exact linear solves over the rationals.

Fraction-free Gaussian elimination on integer rows (pivot = first nonzero
entry in the column), every row divided by its content after each update so
entries stay small. No floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence


@dataclass(frozen=True)
class Inconsistency:
    """Integer multipliers with ``sum(c_i * row_i) == 0`` but ``sum(c_i * rhs_i) != 0``."""

    rows: tuple[int, ...]
    coefficients: tuple[int, ...]
    total: int


def _normalize(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _eliminate(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Reduce ``rows`` in place to reduced echelon form on the first ``ncols`` columns."""
    pivots = []
    r = 0
    m = len(rows)
    for c in range(ncols):
        p = r
        while p < m and rows[p][c] == 0:
            p += 1
        if p == m:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        a = prow[c]
        for i in range(m):
            if i == r:
                continue
            b = rows[i][c]
            if b:
                rows[i] = _normalize([a * x - b * y for x, y in zip(rows[i], prow)])
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def solve(
    A: Sequence[Sequence[int]], b: Sequence[int], ncols: int
) -> tuple[Fraction, ...] | None:
    """Unique solution of ``A x = b``, or ``None`` if the system is inconsistent.

    Raises ``ValueError`` when consistent but of rank below ``ncols``.
    """
    rows = [list(row) + [rhs] for row, rhs in zip(A, b)]
    rows, pivots = _eliminate(rows, ncols)
    r = len(pivots)
    for row in rows[r:]:
        if row[ncols]:
            return None
    if r < ncols:
        raise ValueError(f"system has rank {r} < {ncols}; solution is not unique")
    x = [Fraction(0)] * ncols
    for row, c in zip(rows, pivots):
        x[c] = Fraction(row[ncols], row[c])
    return tuple(x)


def inconsistency(A: Sequence[Sequence[int]], b: Sequence[int], ncols: int) -> Inconsistency | None:
    """Certificate that ``A x = b`` has no solution, or ``None`` if it has one.

    The rows in the certificate form an irreducible inconsistent subsystem:
    dropping any one of them leaves a consistent system.
    """
    support = _farkas(A, b, ncols, range(len(A)))
    if support is None:
        return None
    keep = list(support[0])
    for i in list(keep):
        trial = [k for k in keep if k != i]
        if trial and _farkas(A, b, ncols, trial) is not None:
            keep = trial
    rows, coeffs, total = _farkas(A, b, ncols, keep)
    return Inconsistency(rows, coeffs, total)


def _farkas(A, b, ncols, subset):
    subset = list(subset)
    m = len(subset)
    rows = []
    for k, i in enumerate(subset):
        track = [0] * m
        track[k] = 1
        rows.append(list(A[i]) + [b[i]] + track)
    rows, pivots = _eliminate(rows, ncols)
    for row in rows[len(pivots):]:
        if row[ncols]:
            track = row[ncols + 1:]
            g = 0
            for t in track:
                g = gcd(g, t)
            total = row[ncols]
            if g > 1:
                track = [t // g for t in track]
                total //= g
            if total < 0:
                track = [-t for t in track]
                total = -total
            chosen = [(subset[k], t) for k, t in enumerate(track) if t]
            return tuple(i for i, _ in chosen), tuple(t for _, t in chosen), total
    return None
