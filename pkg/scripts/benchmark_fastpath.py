"""Time the structural fast path against the brute-force oracle on posets with a top.

The oracle enumerates every upset, so its cost grows with the number of
upsets; the fast path is polynomial for a fixed number of trees in M.
"""

import argparse
import random
import time

from braidcone.corpus import random_poset
from braidcone.fastpath import decide_fast
from braidcone.gorenstein import gorenstein_status
from braidcone.poset import from_relations


def topped(n, rng, p):
    P = random_poset(n - 1, rng, p)
    pairs = [(i, j) for i in range(P.n) for j in range(P.n) if P.up[i] >> j & 1]
    return from_relations(n, pairs + [(i, n - 1) for i in range(n - 1)])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 12, 16, 20])
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--p", type=float, default=0.3)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"{'n':>4} {'fast ms':>10} {'oracle ms':>10} {'agree':>6}")
    for n in args.sizes:
        posets = [topped(n, rng, args.p) for _ in range(args.samples)]
        t0 = time.perf_counter()
        fast = [decide_fast(P, bounded_shortcut=False, verify_limit=0) for P in posets]
        t1 = time.perf_counter()
        brute = [gorenstein_status(P) for P in posets]
        t2 = time.perf_counter()
        agree = all(a.verdict is b.verdict for a, b in zip(fast, brute))
        k = len(posets)
        print(f"{n:>4} {1000 * (t1 - t0) / k:>10.2f} {1000 * (t2 - t1) / k:>10.2f} {str(agree):>6}")


if __name__ == "__main__":
    main()
