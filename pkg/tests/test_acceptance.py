"""Acceptance criteria, one test per criterion.

Each criterion is a function returning ``(ok, detail)``. Under pytest the
results are printed as one PASS/FAIL line per criterion in the terminal
summary; ``python tests/test_acceptance.py`` prints the same lines directly.
"""

from __future__ import annotations

import io
import random
import sys
import time
from contextlib import redirect_stdout
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from braidcone.cli import main as cli_main  # noqa: E402
from braidcone.cone import rays  # noqa: E402
from braidcone.corpus import (  # noqa: E402
    EXAMPLES,
    complete_bipartite,
    cycle,
    random_poset,
    random_tree,
)
from braidcone.enumeration import cross_validate, enumerate_connected_posets  # noqa: E402
from braidcone.fastpath import (  # noqa: E402
    decide_fast,
    m_forest_check,
    m_set,
    tree_downset_condition,
    tree_quotient,
)
from braidcone.gorenstein import (  # noqa: E402
    Verdict,
    crepant_status,
    gorenstein_status,
    status_via_blocks,
)
from braidcone.poset import bits, is_bounded, length, mobius_hat  # noqa: E402
from oracles import mobius_by_chains, with_top  # noqa: E402

RESULTS: dict[str, tuple[bool, str]] = {}


def _record(name, ok, detail):
    RESULTS[name] = (ok, detail)
    return ok, detail


def _names(P, L):
    return dict(zip(P.names, L.phi))


# --- 1 ----------------------------------------------------------------------


def criterion_1():
    t0 = time.perf_counter()
    fails = []

    def want(cond, what):
        if not cond:
            fails.append(what)

    P = EXAMPLES["diamond"]()
    c = gorenstein_status(P)
    want(c.gorenstein and c.index == 1 and c.labeling.phi == (-1, 0, 0, 1) and c.crepant, "diamond labeling")
    cone = sorted(sorted(P.labels(r.members), key=int) for r in rays(P).cone_rays)
    want(cone == [["2", "3", "4"], ["2", "4"], ["3", "4"], ["4"]], "diamond rays")

    P = EXAMPLES["vee"]()
    c = gorenstein_status(P)
    want(c.gorenstein and c.labeling.phi == (-1, -1, 2) and not c.crepant, "vee")
    want(not crepant_status(P).crepant, "vee crepant")

    P = EXAMPLES["glued"]()
    shown = {"a": -1, "b": 0, "c~x": -1, "d": 1, "y": -1, "z": 2}
    want(_names(P, gorenstein_status(P).labeling) == shown, "glued oracle")
    b = status_via_blocks(P)
    want(b.gorenstein and _names(P, b.labeling) == shown, "glued blocks")

    want(gorenstein_status(EXAMPLES["mobius_p"]()).verdict is Verdict.NOT_Q_GORENSTEIN, "mobius_p")
    Q = EXAMPLES["mobius_q"]()
    red = {"1hat": 0, "e": 1, "c": 0, "d": 0, "a": -1, "b": -1}
    want(dict(zip(Q.names, mobius_hat(Q).mu)) == red, "mobius_q mobius")

    P = EXAMPLES["quotient_cycle"]()
    want(gorenstein_status(P).verdict is Verdict.NOT_Q_GORENSTEIN, "quotient_cycle oracle")
    w = decide_fast(P).witness
    want(w is not None and w.reason == "m_cycle" and w.iteration == 1, "quotient_cycle witness")

    want(gorenstein_status(EXAMPLES["balanced_bipartite"]()).verdict is Verdict.NOT_Q_GORENSTEIN, "balanced_bipartite")
    dt = time.perf_counter() - t0
    want(dt < 1.0, f"time {dt:.3f}s")
    return not fails, f"{dt:.3f}s" + (f"; failed: {', '.join(fails)}" if fails else "")


# --- 2 ----------------------------------------------------------------------


def criterion_2():
    fails = []
    bounded_seen = 0
    for k in range(2, 9):
        if not gorenstein_status(cycle(k)).gorenstein:
            fails.append(f"2{k}-cycle")
    for n in range(2, 7):
        c = gorenstein_status(complete_bipartite(n))
        if not (c.gorenstein and set(c.labeling.phi) == {-1, 1}):
            fails.append(f"K_{n},{n}")
    rng = random.Random(20240611)
    for _ in range(60):
        T = random_tree(rng.randint(2, 15), rng)
        if not gorenstein_status(T).gorenstein:
            fails.append(f"tree {T!r}")
    for _ in range(200):
        P = random_poset(rng.randint(2, 9), rng, rng.choice([0.2, 0.4, 0.6]))
        for Q in (P, with_top(P) if P.n < 9 else P):
            c = gorenstein_status(Q)
            if is_bounded(Q):
                bounded_seen += 1
                if not (c.crepant and c.index == 1 and crepant_status(Q).crepant):
                    fails.append(f"bounded {Q!r}")
    return not fails, f"{bounded_seen} bounded instances" + (f"; failed: {fails[:3]}" if fails else "")


# --- 3 ----------------------------------------------------------------------


def _sweep_ok(report):
    qonly = sum(c.q_gorenstein_only for c in report.per_n.values())
    ok = not report.mismatches and not report.counterexamples and qonly == 0
    ok = ok and report.checks_run.get("fast_vs_oracle", 0) > 0
    total = sum(c.total for c in report.per_n.values())
    return ok, f"{total} posets, checks {report.checks_run}, mismatches {report.mismatches or 0}, q-only {qonly}"


def criterion_3():
    return _sweep_ok(cross_validate(6))


def criterion_3_slow():
    return _sweep_ok(cross_validate(7))


# --- 4 ----------------------------------------------------------------------


def criterion_4():
    rng = random.Random(7)
    fails = []
    for _ in range(500):
        P = random_poset(rng.randint(2, 12), rng, rng.choice([0.15, 0.3, 0.5]))
        mu = mobius_hat(P).mu
        # 1 (for the adjoined bottom) plus everything up to x sums to 0
        if any(1 + mu[x] + sum(mu[y] for y in bits(P.down[x])) != 0 for x in range(P.n)):
            fails.append("delta")
        if P.n <= 9 and list(mu) != mobius_by_chains(P):
            fails.append("chains")

    for _ in range(200):
        P = random_poset(rng.randint(2, 12), rng, rng.choice([0.15, 0.3, 0.5]))
        mu = mobius_hat(P).mu
        for comp in P.components(m_set(P)):
            e, v = len(P.hasse_edges(comp)), bin(comp).count("1")
            if sum(mu[x] for x in bits(comp)) != e - v:
                fails.append("tree-sum")

    checked = 0
    for n in range(2, 7):
        for P in enumerate_connected_posets(n):
            if P.top() is None or length(P) < 2 or not m_forest_check(P).acyclic:
                continue
            if tree_downset_condition(P) is not None:
                continue
            checked += 1
            q = tree_quotient(P)
            mu, qmu = mobius_hat(P).mu, mobius_hat(q.order).mu
            M = m_set(P)
            for x in range(P.n):
                if not M >> x & 1 and mu[x] != qmu[q.back_map[x]]:
                    fails.append(f"quotient {P!r}")
    return not fails, f"{checked} quotients checked" + (f"; failed: {sorted(set(fails))[:3]}" if fails else "")


# --- 5 ----------------------------------------------------------------------


def _cli(*argv) -> bytes:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(list(argv))
    assert code == 0
    return buf.getvalue().encode()


def criterion_5():
    data = Path(__file__).resolve().parent.parent / "data"
    diffs = []
    for f in sorted(data.glob("*.poset")):
        for cmd in ("gorenstein", "analyze"):
            runs = [_cli(cmd, str(f), "--jobs", j) for j in ("1", "8", "1", "8")]
            if len(set(runs)) != 1:
                diffs.append(f"{cmd} {f.name}")
    for cmd in ("verify-conjecture", "cross-validate"):
        runs = [_cli(cmd, "--max-n", "5", "--jobs", j) for j in ("1", "8", "1", "8")]
        if len(set(runs)) != 1:
            diffs.append(cmd)
    return not diffs, "byte-identical" if not diffs else f"differs: {diffs}"


# --- pytest entry points ------------------------------------------------------


def test_criterion_1_worked_examples():
    ok, detail = _record("1 worked examples", *criterion_1())
    assert ok, detail


def test_criterion_2_family_laws():
    ok, detail = _record("2 family laws", *criterion_2())
    assert ok, detail


def test_criterion_3_oracle_sweep_n6():
    ok, detail = _record("3 oracle equivalence sweep n<=6", *criterion_3())
    assert ok, detail


@pytest.mark.slow
def test_criterion_3_oracle_sweep_n7():
    ok, detail = _record("3 oracle equivalence sweep n<=7 (slow tier)", *criterion_3_slow())
    assert ok, detail


def test_criterion_4_mobius_identities():
    ok, detail = _record("4 Moebius identities", *criterion_4())
    assert ok, detail


def test_criterion_5_determinism():
    ok, detail = _record("5 determinism jobs 1 vs 8", *criterion_5())
    assert ok, detail


if __name__ == "__main__":
    slow = "--runslow" in sys.argv
    runs = [("1 worked examples", criterion_1), ("2 family laws", criterion_2),
            ("3 oracle equivalence sweep n<=6", criterion_3),
            ("4 Moebius identities", criterion_4), ("5 determinism jobs 1 vs 8", criterion_5)]
    if slow:
        runs.insert(3, ("3 oracle equivalence sweep n<=7", criterion_3_slow))
    failed = 0
    for name, fn in runs:
        ok, detail = fn()
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  criterion {name}: {detail}", flush=True)
    sys.exit(1 if failed else 0)
