"""Method dispatch for the Gorenstein decision."""

from __future__ import annotations

from .errors import PosetError
from .fastpath import decide_fast
from .gorenstein import GorensteinCertificate, gorenstein_status, status_via_blocks
from .poset import Poset, bounds

METHODS = ("auto", "brute", "fast", "blocks")


def decide(P: Poset, method: str = "auto") -> GorensteinCertificate:
    """``auto`` uses the structural fast path when P has a bottom or a top
    (immediately if it has both) and the per-block oracle otherwise."""
    if method == "brute":
        return gorenstein_status(P)
    if method == "blocks":
        return status_via_blocks(P)
    if method == "fast":
        return decide_fast(P)
    if method == "auto":
        return decide_fast(P) if any(bounds(P)) else status_via_blocks(P)
    raise PosetError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
