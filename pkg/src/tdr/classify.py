"""Finite / tame / wild trichotomy for tensor diagrams.

A connected component is wild exactly when some vertex carries three or
more wire slots (a loop occupies two).  Otherwise the component is a path
or a cycle: with dangling ends it is finite (A0 with two open ends, A1
with one), closed it is tame (P when acyclic, J when a cycle).
"""

from typing import NamedTuple, Optional

from .errors import NotNormalized
from .semigraph import connected_components


class WildWitness(NamedTuple):
    kind: str        # "open-claw" | "needle" | "figure-eight"
    vertex: str
    wires: tuple     # claw: three wires; needle: (loop, extra); eight: two loops


class ComponentClass(NamedTuple):
    kind: str                  # "finite" | "tame" | "wild"
    family: Optional[str]      # "A0" | "A1" | "P" | "J" | None when wild
    n: Optional[int]
    witness: Optional[WildWitness]


def _slot_table(d):
    """vertex -> (sorted loop wire ids, sorted non-loop wire ids at vertex)."""
    loops = {v: [] for v in d.vertices}
    plain = {v: [] for v in d.vertices}
    for w in d.wires:
        if w.is_loop():
            loops[w.tail].append(w.id)
        else:
            if w.tail is not None:
                plain[w.tail].append(w.id)
            if w.head is not None:
                plain[w.head].append(w.id)
    for v in d.vertices:
        loops[v].sort()
        plain[v].sort()
    return loops, plain


def _witness_at(v, loops, plain):
    if len(loops) >= 2:
        return WildWitness("figure-eight", v, (loops[0], loops[1]))
    if len(loops) == 1 and plain:
        return WildWitness("needle", v, (loops[0], plain[0]))
    if len(plain) >= 3:
        return WildWitness("open-claw", v, tuple(plain[:3]))
    return None


def find_forbidden_witness(d):
    """First open claw, needle, or figure eight, scanning vertices in order."""
    loops, plain = _slot_table(d)
    for v in d.vertices:
        if 2 * len(loops[v]) + len(plain[v]) >= 3:
            w = _witness_at(v, loops[v], plain[v])
            if w is not None:
                return w
    return None


def classify_diagram(d):
    """Classify each connected component; diagram must be normalized."""
    if any(w.is_endpointless() for w in d.wires):
        raise NotNormalized("endpointless wires present; normalize first")
    loops, plain = _slot_table(d)
    wire_by_id = {w.id: w for w in d.wires}
    out = []
    for comp in connected_components(d):
        cls = None
        for v in comp.vertices:
            if 2 * len(loops[v]) + len(plain[v]) >= 3:
                cls = ComponentClass(
                    "wild", None, None, _witness_at(v, loops[v], plain[v]))
                break
        if cls is None:
            n = len(comp.vertices)
            wires = [wire_by_id[wid] for wid in comp.wires]
            dangling = sum(1 for w in wires if w.is_dangling())
            if dangling == 2:
                cls = ComponentClass("finite", "A0", n, None)
            elif dangling == 1:
                cls = ComponentClass("finite", "A1", n, None)
            elif len(wires) == n:
                cls = ComponentClass("tame", "J", n, None)
            else:
                cls = ComponentClass("tame", "P", n, None)
        out.append((comp, cls))
    return out
