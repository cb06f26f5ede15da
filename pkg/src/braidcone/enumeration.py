"""Exhaustive generation of small connected posets and the sweeps built on it.

Labeled posets on ``0..n-1`` are grown one element at a time: the new
element ``n-1`` picks a downset ``D`` (what lies below it) and an upset ``U``
(what lies above it) of the poset on the first ``n-1`` elements, subject to
every element of ``D`` lying below every element of ``U``. Each poset arises
from exactly one such choice, so the stream has no duplicates and needs no
canonical form. Intermediate posets may be disconnected; connectivity is
filtered at the end.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice, permutations, product
from typing import Callable, Iterator

from .cone import is_smooth
from .errors import CapExceededError, PosetError
from .exact import solve
from .fastpath import decide_fast
from .gorenstein import Verdict, gorenstein_status, status_via_blocks
from .poset import Poset, bits, bounds, dual, is_bounded, popcount, upset_masks

DEFAULT_CAP = 7


def cap() -> int:
    """Largest ``n`` the harness will enumerate; ``BRAIDCONE_CAP`` raises it."""
    return int(os.environ.get("BRAIDCONE_CAP", DEFAULT_CAP))


def _check_n(n: int) -> None:
    c = cap()
    if n > c:
        raise CapExceededError(f"n = {n} exceeds the enumeration cap {c} (set BRAIDCONE_CAP)")
    if n < 2:
        raise PosetError(f"n must be at least 2, got {n}")


# --- raw generation over up-mask tuples -------------------------------------


def _down_of(up: tuple[int, ...]) -> list[int]:
    down = [0] * len(up)
    for x, row in enumerate(up):
        for y in bits(row):
            down[y] |= 1 << x
    return down


def _upsets_within(up, down, n: int, allowed: int) -> Iterator[int]:
    """Upsets contained in ``allowed`` (itself an upset)."""

    def walk(e, inside, outside):
        while e >= 0 and (inside | outside) >> e & 1:
            e -= 1
        if e < 0:
            yield inside
            return
        yield from walk(e - 1, inside, outside | (1 << e) | down[e])
        yield from walk(e - 1, inside | (1 << e) | up[e], outside)

    full = (1 << n) - 1
    yield from walk(n - 1, 0, full & ~allowed)


def _extensions(up: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    n = len(up)
    full = (1 << n) - 1
    down = _down_of(up)
    new = 1 << n
    for comp in _upsets_within(up, down, n, full):
        D = full & ~comp
        W = comp
        for d in bits(D):
            W &= up[d]
        for U in _upsets_within(up, down, n, W):
            yield tuple(row | new if D >> x & 1 else row for x, row in enumerate(up)) + (U,)


def labeled_up_tuples(n: int) -> Iterator[tuple[int, ...]]:
    """Every strict partial order on ``0..n-1`` as an up-mask tuple, connected or not."""
    if n == 1:
        yield (0,)
        return
    for base in labeled_up_tuples(n - 1):
        yield from _extensions(base)


def _connected(up: tuple[int, ...]) -> bool:
    n = len(up)
    adj = [row for row in up]
    for x, row in enumerate(up):
        for y in bits(row):
            adj[y] |= 1 << x
    seen = frontier = 1
    while frontier:
        nxt = 0
        for x in bits(frontier):
            nxt |= adj[x]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << n) - 1


# --- isomorphism classes ------------------------------------------------------


def _signature_classes(up: tuple[int, ...]) -> list[list[int]]:
    down = _down_of(up)
    sig = sorted({(popcount(down[x]), popcount(up[x])) for x in range(len(up))})
    groups = {s: [] for s in sig}
    for x in range(len(up)):
        groups[(popcount(down[x]), popcount(up[x]))].append(x)
    return [groups[s] for s in sig]


def _relabel(up: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    pos = {old: new for new, old in enumerate(order)}
    out = [0] * len(up)
    for old, row in enumerate(up):
        m = 0
        for y in bits(row):
            m |= 1 << pos[y]
        out[pos[old]] = m
    return tuple(out)


def _orderings(up: tuple[int, ...]) -> Iterator[list[int]]:
    classes = _signature_classes(up)
    for parts in product(*(permutations(c) for c in classes)):
        yield [x for part in parts for x in part]


def canonical_form(up: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically least relabeling, among orders that list elements by
    (number below, number above). Isomorphic posets get the same form."""
    return min(_relabel(up, o) for o in _orderings(up))


def automorphism_count(up: tuple[int, ...]) -> int:
    return sum(1 for o in _orderings(up) if _relabel(up, o) == up)


def unlabeled_up_tuples(n: int) -> list[tuple[int, ...]]:
    """Canonical representatives of all posets on ``n`` elements, sorted."""
    if n == 1:
        return [(0,)]
    reps = set()
    for base in unlabeled_up_tuples(n - 1):
        m = len(base)
        full = (1 << m) - 1
        down = _down_of(base)
        # every poset has a maximal element; add one above a downset D
        for comp in _upsets_within(base, down, m, full):
            D = full & ~comp
            grown = tuple(row | (1 << m) if D >> x & 1 else row for x, row in enumerate(base)) + (0,)
            reps.add(canonical_form(grown))
    return sorted(reps)


def _names(n: int) -> tuple[str, ...]:
    return tuple(str(i + 1) for i in range(n))


def enumerate_connected_posets(n: int, dedup: bool = False) -> Iterator[Poset]:
    """Every connected poset on ``n`` elements, labeled or one per isomorphism class.

    Deterministic order. Raises :class:`~braidcone.errors.CapExceededError`
    above the cap.
    """
    _check_n(n)
    source = unlabeled_up_tuples(n) if dedup else labeled_up_tuples(n)
    names = _names(n)
    for up in source:
        if _connected(up):
            yield Poset(n, up, names)


# --- sweeps -------------------------------------------------------------------


@dataclass
class SweepConfig:
    max_n: int
    jobs: int = 1
    dedup: bool = False
    min_n: int = 2


@dataclass
class Counts:
    total: int = 0
    gorenstein: int = 0
    q_gorenstein_only: int = 0
    not_q_gorenstein: int = 0
    crepant: int = 0

    def add(self, other: "Counts") -> None:
        for k in vars(self):
            setattr(self, k, getattr(self, k) + getattr(other, k))


CHECKS = ("fast_vs_oracle", "blocks_vs_oracle", "dual_invariance", "crepant_iff_bounded",
          "smooth_implies_gorenstein")


@dataclass
class SweepReport:
    kind: str
    max_n: int
    dedup: bool = False
    per_n: dict[int, Counts] = field(default_factory=dict)
    checks_run: dict[str, int] = field(default_factory=dict)
    mismatches: dict[str, int] = field(default_factory=dict)
    counterexamples: list[dict] = field(default_factory=list)
    wall_time: dict[int, float] = field(default_factory=dict)

    @property
    def clean(self) -> bool:
        return not self.counterexamples

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "kind": self.kind,
            "max_n": self.max_n,
            "dedup": self.dedup,
            "per_n": {str(n): vars(c) for n, c in sorted(self.per_n.items())},
            "counterexamples": self.counterexamples,
        }
        if self.kind == "cross_validate":
            out["checks_run"] = dict(sorted(self.checks_run.items()))
            out["mismatches"] = dict(sorted(self.mismatches.items()))
        if timing:
            out["timing"] = {str(n): t for n, t in sorted(self.wall_time.items())}
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "SweepReport":
        return cls(
            kind=d["kind"],
            max_n=d["max_n"],
            dedup=d["dedup"],
            per_n={int(n): Counts(**c) for n, c in d["per_n"].items()},
            checks_run=d.get("checks_run", {}),
            mismatches=d.get("mismatches", {}),
            counterexamples=d["counterexamples"],
            wall_time={int(n): t for n, t in d.get("timing", {}).items()},
        )


def describe(P: Poset) -> dict:
    return {
        "elements": list(P.names),
        "covers": sorted([P.names[a], P.names[b]] for a, b in P.covers()),
    }


def _tally(c: Counts, cert) -> None:
    c.total += 1
    c.crepant += cert.crepant
    if cert.verdict is Verdict.GORENSTEIN:
        c.gorenstein += 1
    elif cert.verdict is Verdict.Q_GORENSTEIN_ONLY:
        c.q_gorenstein_only += 1
    else:
        c.not_q_gorenstein += 1


def _conjecture_one(P: Poset, c: Counts, checks, mism, bad: list) -> None:
    cert = gorenstein_status(P)
    _tally(c, cert)
    if cert.verdict is Verdict.Q_GORENSTEIN_ONLY:
        bad.append({**describe(P), "reason": "q_gorenstein_only",
                    "solution": [str(v) for v in cert.solution]})


def _crepant_brute(P: Poset) -> bool:
    """Whether any labeling sums to the same value on all upsets of positive dimension."""
    full = P.full
    targets = [A for A in upset_masks(P) if A and A != full]
    rows = [[1] * P.n] + [[A >> i & 1 for i in range(P.n)] for A in targets]
    return solve(rows, [0] + [1] * len(targets), P.n) is not None


def _cross_one(P: Poset, c: Counts, checks, mism, bad: list) -> None:
    cert = gorenstein_status(P)
    _tally(c, cert)
    found = []

    def record(name: str, ok: bool, detail: str = "") -> None:
        checks[name] = checks.get(name, 0) + 1
        if not ok:
            mism[name] = mism.get(name, 0) + 1
            found.append(f"{name}: {detail}" if detail else name)

    def same(a, b) -> bool:
        return a.verdict is b.verdict and a.index == b.index and a.labeling == b.labeling

    lo, hi = bounds(P)
    if lo or hi:
        fast = decide_fast(P, bounded_shortcut=False)
        record("fast_vs_oracle", same(fast, cert), fast.verdict.value)
    blocks = status_via_blocks(P)
    record("blocks_vs_oracle", same(blocks, cert), blocks.verdict.value)
    dcert = gorenstein_status(dual(P))
    record(
        "dual_invariance",
        dcert.verdict is cert.verdict and dcert.index == cert.index
        and (cert.labeling is None or dcert.labeling == -cert.labeling),
        dcert.verdict.value,
    )
    bounded = is_bounded(P)
    record("crepant_iff_bounded", _crepant_brute(P) == bounded and cert.crepant == bounded)
    if is_smooth(P):
        record("smooth_implies_gorenstein", cert.verdict is Verdict.GORENSTEIN)
    if cert.verdict is Verdict.Q_GORENSTEIN_ONLY:
        found.append("q_gorenstein_only")
    if found:
        bad.append({**describe(P), "reason": sorted(found)})


_KINDS: dict[str, Callable] = {
    "verify_conjecture": _conjecture_one,
    "cross_validate": _cross_one,
}


def _run_shard(kind: str, n: int, dedup: bool, shard: int, jobs: int):
    c, checks, mism, bad = Counts(), {}, {}, []
    fn = _KINDS[kind]
    for P in islice(enumerate_connected_posets(n, dedup), shard, None, jobs):
        fn(P, c, checks, mism, bad)
    return c, checks, mism, bad


def _sorted_records(records: list[dict]) -> list[dict]:
    return sorted(records, key=lambda r: json.dumps(r, sort_keys=True))


def run_sweep(kind: str, config: SweepConfig) -> SweepReport:
    """Run ``kind`` over all connected posets with ``min_n <= n <= max_n``.

    Work is split round-robin over the enumeration stream; the merged report
    does not depend on ``jobs``.
    """
    _check_n(config.max_n)
    report = SweepReport(kind, config.max_n, config.dedup)
    pool = ProcessPoolExecutor(config.jobs) if config.jobs > 1 else None
    try:
        for n in range(max(2, config.min_n), config.max_n + 1):
            t0 = time.perf_counter()
            if pool is None:
                parts = [_run_shard(kind, n, config.dedup, 0, 1)]
            else:
                futs = [pool.submit(_run_shard, kind, n, config.dedup, s, config.jobs)
                        for s in range(config.jobs)]
                parts = [f.result() for f in futs]
            total = Counts()
            for c, checks, mism, bad in parts:
                total.add(c)
                for k, v in checks.items():
                    report.checks_run[k] = report.checks_run.get(k, 0) + v
                for k, v in mism.items():
                    report.mismatches[k] = report.mismatches.get(k, 0) + v
                report.counterexamples.extend(bad)
            report.per_n[n] = total
            report.wall_time[n] = time.perf_counter() - t0
    finally:
        if pool is not None:
            pool.shutdown()
    report.counterexamples = _sorted_records(report.counterexamples)
    return report


def verify_conjecture(max_n: int, jobs: int = 1, dedup: bool = False) -> SweepReport:
    """Look for posets that are Q-Gorenstein of index above one."""
    return run_sweep("verify_conjecture", SweepConfig(max_n, jobs, dedup))


def cross_validate(max_n: int, jobs: int = 1, dedup: bool = False) -> SweepReport:
    """Compare every decision procedure against the brute-force oracle."""
    return run_sweep("cross_validate", SweepConfig(max_n, jobs, dedup))


def corpus_check(examples: dict[str, Callable[[], Poset]]) -> dict[str, str]:
    """Oracle verdict for each named poset."""
    return {name: gorenstein_status(f()).verdict.value for name, f in sorted(examples.items())}
