"""Print the verdict, labeling and Moebius values for every built-in example."""

import argparse

from braidcone.corpus import EXAMPLES
from braidcone.decide import decide
from braidcone.fileio import export_hasse
from braidcone.gorenstein import gorenstein_status, status_via_blocks
from braidcone.poset import mobius_hat


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dot-dir", help="also write one labeled .dot file per example here")
    args = ap.parse_args()
    for name, make in EXAMPLES.items():
        P = make()
        brute, blocks, auto = gorenstein_status(P), status_via_blocks(P), decide(P)
        agree = brute.verdict is blocks.verdict is auto.verdict
        print(f"{name}: {brute.verdict.value} (crepant={brute.crepant}, methods agree={agree})")
        if brute.labeling:
            print("  labeling:", " ".join(f"{x}={v}" for x, v in zip(P.names, brute.labeling.phi)))
        print("  moebius: ", " ".join(f"{x}={v}" for x, v in zip(P.names, mobius_hat(P).mu)))
        if auto.method == "fast" and auto.witness is not None:
            w = auto.witness
            print(f"  fast-path witness: {w.reason} at iteration {w.iteration}")
        if args.dot_dir:
            with open(f"{args.dot_dir}/{name}.dot", "w") as fh:
                fh.write(export_hasse(P, brute.labeling or mobius_hat(P).mu))


if __name__ == "__main__":
    main()
