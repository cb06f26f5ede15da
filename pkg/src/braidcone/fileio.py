"""Poset text files, certificate documents and DOT export.

File format, one statement per line::

    # comment
    poset 4            (elements named 1..4)   or   elements a b c d
    1 < 2              (a relation; closure is taken, covers not required)

Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import CycleError, ParseError, PosetError
from .fastpath import FastPathFailure
from .gorenstein import GorensteinCertificate, Labeling, LinearWitness, Verdict
from .poset import Poset, bits, closure, from_relations

_RELATION = re.compile(r"^(\S+)\s*<\s*(\S+)$")


@dataclass
class PosetDocument:
    n: int
    names: tuple[str, ...] | None
    relations: list[tuple[str, str]]
    source: str | None = None
    lines: list[int] = field(default_factory=list, compare=False)

    def element_names(self) -> tuple[str, ...]:
        return self.names or tuple(str(i + 1) for i in range(self.n))

    def to_poset(self) -> Poset:
        names = self.element_names()
        pos = {x: i for i, x in enumerate(names)}
        pairs = [(pos[a], pos[b]) for a, b in self.relations]
        try:
            return from_relations(self.n, pairs, names)
        except CycleError as err:
            raise err.at(self._first_cycle_line(pairs)) from None
        except PosetError as err:
            if err.line is None and self.source:
                raise type(err)(f"{self.source}: {err.message}") from None
            raise

    def _first_cycle_line(self, pairs) -> int | None:
        for k in range(1, len(pairs) + 1):
            up = closure(self.n, pairs[:k])
            if any(row >> i & 1 for i, row in enumerate(up)):
                return self.lines[k - 1] if self.lines else None
        return None


def parse_document(text: str, source: str | None = None) -> PosetDocument:
    doc = None
    known: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        col = raw.index(line[0]) + 1
        if doc is None:
            head, _, rest = line.partition(" ")
            if head == "poset":
                try:
                    n = int(rest.strip())
                except ValueError:
                    raise ParseError(f"expected 'poset <n>', got {line!r}", lineno, col) from None
                doc = PosetDocument(n, None, [], source)
            elif head == "elements":
                names = tuple(rest.split())
                if len(set(names)) != len(names):
                    raise ParseError("duplicate element name", lineno, col)
                doc = PosetDocument(len(names), names, [], source)
            else:
                raise ParseError("file must start with 'poset <n>' or 'elements ...'", lineno, col)
            if doc.n < 2:
                raise ParseError(f"a poset needs at least 2 elements, got {doc.n}", lineno, col)
            known = {x: i for i, x in enumerate(doc.element_names())}
            continue
        m = _RELATION.match(line)
        if not m:
            raise ParseError(f"expected '<a> < <b>', got {line!r}", lineno, col)
        for g in (1, 2):
            if m.group(g) not in known:
                raise ParseError(f"unknown element {m.group(g)!r}", lineno, col + m.start(g))
        doc.relations.append((m.group(1), m.group(2)))
        doc.lines.append(lineno)
    if doc is None:
        raise ParseError("empty poset file", 1, 1)
    return doc


def parse_poset(text: str, source: str | None = None) -> Poset:
    return parse_document(text, source).to_poset()


def load_poset(path: str) -> Poset:
    with open(path, encoding="utf-8") as fh:
        return parse_poset(fh.read(), path)


def emit_document(doc: PosetDocument) -> str:
    head = f"poset {doc.n}" if doc.names is None else "elements " + " ".join(doc.names)
    return "\n".join([head] + [f"{a} < {b}" for a, b in doc.relations]) + "\n"


def document_of(P: Poset) -> PosetDocument:
    default = P.names == tuple(str(i + 1) for i in range(P.n))
    rels = [(P.names[a], P.names[b]) for a, b in P.covers]
    return PosetDocument(P.n, None if default else P.names, rels)


def format_poset(P: Poset) -> str:
    """Poset file text listing the cover relations."""
    return emit_document(document_of(P))


# --- certificates -----------------------------------------------------------


def _names(P: Poset, mask: int) -> list[str]:
    return [P.names[i] for i in bits(mask)]


def _render_witness(P: Poset, w: Any) -> Any:
    if w is None:
        return None
    if isinstance(w, LinearWitness):
        return {
            "kind": "linear",
            "upsets": [_names(P, A) for A in w.upsets],
            "coefficients": list(w.coefficients),
            "total": w.total,
            "scope": None if w.scope is None else _names(P, w.scope),
        }
    if isinstance(w, FastPathFailure):
        base = {"kind": w.reason, "iteration": w.iteration, "dualized": w.dualized}
        if w.cycle is not None:
            base["cycle"] = [[_names(P, w.origin[a]), _names(P, w.origin[b])] for a, b in w.cycle]
        if w.tdc is not None:
            t = w.tdc
            base.update(
                S=_names(P, w.lift(t.S)),
                tree=_names(P, w.lift(t.tree)),
                downset=_names(P, w.lift(t.A_j)),
                excluded_tree=t.excluded_tree,
                expected_components=t.expected_m,
                found_components=t.found_cc,
            )
        return base
    if isinstance(w, dict):
        return w
    if isinstance(w, tuple) and all(isinstance(v, Fraction) for v in w):
        return {"kind": "rational_solution", "values": [str(v) for v in w]}
    raise TypeError(f"cannot render witness of type {type(w).__name__}")


def certificate_document(P: Poset, cert: GorensteinCertificate) -> dict:
    """JSON-ready certificate. Contains no timing, so it is reproducible."""
    lab = None
    if cert.labeling is not None:
        lab = {name: v for name, v in zip(P.names, cert.labeling.phi)}
    return {
        "input": {
            "elements": list(P.names),
            "covers": sorted([P.names[a], P.names[b]] for a, b in P.covers),
        },
        "verdict": cert.verdict.value,
        "gorenstein": cert.gorenstein,
        "q_gorenstein": cert.q_gorenstein,
        "index": cert.index,
        "crepant": cert.crepant,
        "labeling": lab,
        "witness": _render_witness(P, cert.witness),
        "method": cert.method,
        "details": {k: v for k, v in sorted(cert.details.items()) if _jsonable(v)},
    }


def _jsonable(v) -> bool:
    return isinstance(v, (bool, int, str, float)) or v is None


def poset_from_document(d: dict) -> Poset:
    names = d["input"]["elements"]
    pos = {x: i for i, x in enumerate(names)}
    return from_relations(len(names), [(pos[a], pos[b]) for a, b in d["input"]["covers"]], names)


def certificate_from_document(d: dict) -> tuple[Poset, GorensteinCertificate]:
    """Inverse of :func:`certificate_document`.

    Linear witnesses come back as :class:`LinearWitness`; fast-path witnesses
    stay in their rendered (name-based) form.
    """
    P = poset_from_document(d)
    lab = None
    if d["labeling"] is not None:
        lab = Labeling(tuple(d["labeling"][x] for x in P.names), d["index"])
    w = d["witness"]
    solution = None
    if isinstance(w, dict) and w.get("kind") == "linear":
        scope = None if w.get("scope") is None else P.mask(w["scope"])
        w = LinearWitness(tuple(P.mask(u) for u in w["upsets"]), tuple(w["coefficients"]), w["total"], scope)
    elif isinstance(w, dict) and w.get("kind") == "rational_solution":
        solution = tuple(Fraction(v) for v in w["values"])
        w = solution
    cert = GorensteinCertificate(
        Verdict(d["verdict"]), lab, d["index"], d["crepant"], w, d["method"], solution,
        dict(d.get("details", {})),
    )
    return P, cert


def emit_certificate(P: Poset, cert: GorensteinCertificate, fmt: str = "json",
                     meta: dict | None = None) -> str:
    """Serialize deterministically. ``meta`` (e.g. timing) is kept apart from
    the canonical body under a ``meta`` key."""
    doc = certificate_document(P, cert)
    if fmt == "json":
        if meta:
            doc = {**doc, "meta": meta}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    return certificate_text(doc) + ("" if not meta else "".join(f"{k}: {v}\n" for k, v in sorted(meta.items())))


def certificate_text(doc: dict) -> str:
    out = [
        f"verdict: {doc['verdict']}",
        f"gorenstein: {str(doc['gorenstein']).lower()}",
        f"q_gorenstein: {str(doc['q_gorenstein']).lower()}",
        f"index: {doc['index'] if doc['index'] is not None else '-'}",
        f"crepant: {str(doc['crepant']).lower()}",
        f"method: {doc['method']}",
    ]
    if doc["labeling"] is not None:
        out.append("labeling: " + " ".join(f"{k}={v}" for k, v in doc["labeling"].items()))
    w = doc["witness"]
    if w is not None:
        out.append("witness: " + json.dumps(w, sort_keys=True))
    return "\n".join(out) + "\n"


# --- DOT --------------------------------------------------------------------


def _heights(P: Poset) -> list[int]:
    h = [0] * P.n
    for x in P.linear_extension():
        h[x] = max((h[y] + 1 for y in bits(P.down[x])), default=0)
    return h


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_hasse(P: Poset, labels: Labeling | dict | tuple | None = None) -> str:
    """Hasse diagram in DOT, bottom to top, one rank per height. ``labels``
    (a labeling, or per-element values) are drawn in red next to the nodes."""
    if isinstance(labels, Labeling):
        values = list(labels.phi)
    elif isinstance(labels, dict):
        values = [labels[x] for x in P.names]
    else:
        values = list(labels) if labels is not None else None
    lines = ["digraph poset {", "  rankdir=BT;", "  node [shape=circle];"]
    for i, name in enumerate(P.names):
        attrs = f"label={_quote(name)}"
        if values is not None:
            v = values[i]
            text = f"+{v}" if isinstance(v, int) and v > 0 else str(v)
            attrs += f', xlabel=<<font color="red">{text}</font>>'
        lines.append(f"  {_quote(name)} [{attrs}];")
    h = _heights(P)
    for level in range(max(h) + 1):
        members = " ".join(f"{_quote(P.names[i])};" for i in range(P.n) if h[i] == level)
        lines.append(f"  {{ rank=same; {members} }}")
    for a, b in P.covers:
        lines.append(f"  {_quote(P.names[a])} -> {_quote(P.names[b])};")
    lines.append("}")
    return "\n".join(lines) + "\n"
