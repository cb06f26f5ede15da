"""Command-line interface.

Exit status: 0 when a decision was produced (whatever the verdict), 1 on bad
input, 2 when an internal consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .cone import is_smooth, rays
from .corpus import EXAMPLES
from .decide import METHODS, decide
from .enumeration import cross_validate, verify_conjecture
from .errors import InvariantError, PosetError
from .fastpath import mobius_labeling, quotients
from .fileio import certificate_document, emit_certificate, export_hasse, load_poset
from .gorenstein import crepant_status
from .poset import bits, is_bounded, mobius_hat


def _names(P, mask):
    return [P.names[i] for i in bits(mask)]


def _dump(obj, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"
    lines = []
    for k, v in obj.items():
        lines.append(f"{k}: {v if isinstance(v, str) else json.dumps(v, sort_keys=True)}")
    return "\n".join(lines) + "\n"


def _load(args):
    if args.example:
        if args.example not in EXAMPLES:
            raise PosetError(f"unknown example {args.example!r}; known: {', '.join(sorted(EXAMPLES))}")
        return EXAMPLES[args.example]()
    if not args.file:
        raise PosetError("give a poset file or --example NAME")
    return load_poset(args.file)


def cmd_certificate(args, analyze: bool):
    P = _load(args)
    t0 = time.perf_counter()
    cert = decide(P, args.method)
    meta = {"seconds": round(time.perf_counter() - t0, 6)} if args.timing else None
    if not analyze:
        return emit_certificate(P, cert, args.format, meta)
    doc = certificate_document(P, cert)
    doc["analysis"] = {
        "bounded": is_bounded(P),
        "smooth": is_smooth(P),
        "cone_rays": len(rays(P).cone_rays),
    }
    if meta:
        doc["meta"] = meta
    return _dump(doc, args.format)


def cmd_crepant(args):
    P = _load(args)
    res = crepant_status(P)
    out = {
        "crepant": res.crepant,
        "labeling": dict(zip(P.names, res.labeling.phi)) if res.labeling else None,
        "violation": [_names(P, m) for m in res.violation] if res.violation else None,
    }
    return _dump(out, args.format)


def cmd_rays(args):
    P = _load(args)
    rs = rays(P)
    return _dump({
        "cone_rays": [_names(P, r.members) for r in rs.cone_rays],
        "fan_rays": [{"members": _names(P, r.members), "dim": r.dim} for r in rs.fan_rays],
    }, args.format)


def cmd_mobius(args):
    P = _load(args)
    mu = mobius_hat(P)
    out = {"mobius": dict(zip(P.names, mu.mu))}
    if P.top() is not None:
        out["candidate_labeling"] = dict(zip(P.names, mobius_labeling(P).phi))
    return _dump(out, args.format)


def cmd_quotient(args):
    P = _load(args)
    stages = []
    for q in quotients(P, args.steps):
        stages.append({
            "elements": list(q.order.names),
            "covers": sorted([q.order.names[a], q.order.names[b]] for a, b in q.order.covers),
        })
    return _dump({"stages": stages}, args.format)


def cmd_smooth(args):
    return _dump({"smooth": is_smooth(_load(args))}, args.format)


def cmd_sweep(args, fn):
    report = fn(args.max_n, jobs=args.jobs, dedup=args.dedup)
    if args.format == "json":
        return report.to_json(timing=args.timing) + "\n"
    d = report.to_dict(timing=args.timing)
    lines = [f"{d['kind']} up to n={d['max_n']}{' (up to isomorphism)' if d['dedup'] else ''}"]
    for n, c in d["per_n"].items():
        lines.append(f"n={n}: " + " ".join(f"{k}={v}" for k, v in sorted(c.items())))
    if "mismatches" in d:
        lines.append(f"mismatches: {d['mismatches'] or 'none'}")
    lines.append(f"counterexamples: {len(d['counterexamples'])}")
    return "\n".join(lines) + "\n"


def cmd_dot(args):
    P = _load(args)
    labels = None
    if args.labels == "mobius":
        labels = mobius_hat(P).mu
    elif args.labels == "gorenstein":
        labels = decide(P, args.method).labeling
    return export_hasse(P, labels)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--method", choices=METHODS, default="auto")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--timing", action="store_true", help="add wall-clock metadata")

    parser = argparse.ArgumentParser(
        prog="braidcone", description="Gorenstein and crepancy checks for braid cones of posets."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(name, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("file", nargs="?", help="poset file")
        p.add_argument("--example", help=f"built-in example ({', '.join(sorted(EXAMPLES))})")
        return p

    with_input("analyze", "full certificate plus structural facts").set_defaults(
        run=lambda a: cmd_certificate(a, True))
    with_input("gorenstein", "Gorenstein certificate").set_defaults(
        run=lambda a: cmd_certificate(a, False))
    with_input("crepant", "chamber crepant labeling or a violation").set_defaults(run=cmd_crepant)
    with_input("rays", "ray generators of the cone and the chamber fan").set_defaults(run=cmd_rays)
    with_input("mobius", "Moebius values with an adjoined bottom").set_defaults(run=cmd_mobius)
    q = with_input("quotient", "iterated tree quotients")
    q.add_argument("--steps", type=int, default=None)
    q.set_defaults(run=cmd_quotient)
    with_input("smooth", "whether the Hasse diagram is a tree").set_defaults(run=cmd_smooth)
    d = with_input("export-dot", "Hasse diagram in DOT")
    d.add_argument("--labels", choices=("none", "gorenstein", "mobius"), default="none")
    d.set_defaults(run=cmd_dot)
    for name, fn in (("verify-conjecture", verify_conjecture), ("cross-validate", cross_validate)):
        p = sub.add_parser(name, parents=[common], help="exhaustive sweep over connected posets")
        p.add_argument("--max-n", type=int, required=True)
        p.add_argument("--dedup", action="store_true", help="one poset per isomorphism class")
        p.set_defaults(run=lambda a, fn=fn: cmd_sweep(a, fn))
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        sys.stdout.write(args.run(args))
    except (PosetError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except InvariantError as err:
        print(f"internal error: {err}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
