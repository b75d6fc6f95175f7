"""Tensor diagrams as directed semi-graphs.

A diagram is a sorted tuple of vertex ids plus a sorted tuple of wires; a
wire may dangle (one endpoint None) or be endpointless (both None).  All
surgery returns new diagrams; nothing mutates.  Canonical order is
lexicographic on ids and every downstream multi-index convention relies on
it, so validate_diagram is the only sanctioned constructor for outside data.
"""

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import (
    DuplicateId,
    NotAPartition,
    NotASubdiagram,
    UnknownVertexRef,
    UnknownWire,
)


class Wire(NamedTuple):
    id: str
    tail: Optional[str]
    head: Optional[str]

    def is_loop(self):
        return self.tail is not None and self.tail == self.head

    def is_dangling(self):
        return (self.tail is None) != (self.head is None)

    def is_endpointless(self):
        return self.tail is None and self.head is None


class TensorDiagram(NamedTuple):
    vertices: tuple
    wires: tuple

    def wire(self, wire_id):
        for w in self.wires:
            if w.id == wire_id:
                return w
        raise UnknownWire(wire_id)

    def has_vertex(self, v):
        return v in self.vertices

    def is_closed(self):
        return all(w.tail is not None and w.head is not None for w in self.wires)


class VertexNeighborhood(NamedTuple):
    incoming: tuple   # wire ids with head = v, canonical order
    outgoing: tuple   # wire ids with tail = v, canonical order


@dataclass(frozen=True)
class SubdiagramRef:
    vertices: tuple
    wires: tuple
    induced: bool


def validate_diagram(raw):
    """Build a canonical TensorDiagram from a record or another diagram."""
    if isinstance(raw, TensorDiagram):
        vs = list(raw.vertices)
        ws = [(w.id, w.tail, w.head) for w in raw.wires]
    else:
        vs = list(raw.get("vertices", ()))
        ws = [(w.get("id"), w.get("tail"), w.get("head"))
              for w in raw.get("wires", ())]
    seen = set()
    for v in vs:
        if not isinstance(v, str) or not v:
            raise UnknownVertexRef(f"bad vertex id {v!r}")
        if v in seen:
            raise DuplicateId(f"vertex {v}")
        seen.add(v)
    vset = seen
    wseen = set()
    wires = []
    for wid, tail, head in ws:
        if not isinstance(wid, str) or not wid:
            raise UnknownWire(f"bad wire id {wid!r}")
        if wid in wseen:
            raise DuplicateId(f"wire {wid}")
        wseen.add(wid)
        for end in (tail, head):
            if end is not None and end not in vset:
                raise UnknownVertexRef(f"wire {wid} endpoint {end}")
        wires.append(Wire(wid, tail, head))
    return TensorDiagram(tuple(sorted(vs)), tuple(sorted(wires)))


def diagram_to_record(d):
    return {
        "vertices": list(d.vertices),
        "wires": [{"id": w.id, "tail": w.tail, "head": w.head} for w in d.wires],
    }


def neighborhood(d, v):
    if v not in d.vertices:
        raise UnknownVertexRef(v)
    incoming = tuple(w.id for w in d.wires if w.head == v)
    outgoing = tuple(w.id for w in d.wires if w.tail == v)
    return VertexNeighborhood(incoming, outgoing)


def degree(d, v):
    nb = neighborhood(d, v)
    return len(nb.incoming) + len(nb.outgoing)


def normalize(d):
    """Drop endpointless wires; returns (diagram, removed wire ids)."""
    removed = [w.id for w in d.wires if w.is_endpointless()]
    if not removed:
        return d, []
    kept = tuple(w for w in d.wires if not w.is_endpointless())
    return TensorDiagram(d.vertices, kept), removed


def reverse_wire(d, wire_id):
    found = False
    wires = []
    for w in d.wires:
        if w.id == wire_id:
            wires.append(Wire(w.id, w.head, w.tail))
            found = True
        else:
            wires.append(w)
    if not found:
        raise UnknownWire(wire_id)
    return TensorDiagram(d.vertices, tuple(sorted(wires)))


def _slots_at(d, v):
    slots = []
    for w in d.wires:
        if w.tail == v:
            slots.append((w.id, "tail"))
        if w.head == v:
            slots.append((w.id, "head"))
    return slots


def _normalize_part(d, v, part, all_slots):
    """Expand a mixed wire-id / (wire-id, side) collection into a slot set."""
    out = set()
    for item in part:
        if isinstance(item, tuple):
            if item not in all_slots:
                raise NotAPartition(f"slot {item} not incident to {v}")
            out.add(item)
        else:
            hits = [s for s in all_slots if s[0] == item]
            if not hits:
                raise NotAPartition(f"wire {item} not incident to {v}")
            out.update(hits)
    return out


def _fresh_vertex(base, taken):
    if base not in taken:
        return base
    j = 1
    while f"{base}·{j}" in taken:
        j += 1
    return f"{base}·{j}"


def _fresh_wire(taken):
    k = 1
    while f"_split{k}" in taken:
        k += 1
    return f"_split{k}"


def _split(d, v, part1, part2):
    """Core splitting; parts are slot sets.  Returns (d', wire id, v1, v2)."""
    if v not in d.vertices:
        raise UnknownVertexRef(v)
    all_slots = _slots_at(d, v)
    s1 = _normalize_part(d, v, part1, all_slots)
    s2 = _normalize_part(d, v, part2, all_slots)
    if s1 & s2 or s1 | s2 != set(all_slots):
        raise NotAPartition(f"parts do not partition the slots at {v}")
    taken = set(d.vertices)
    taken.discard(v)
    v1 = _fresh_vertex(f"{v}·1", taken)
    taken.add(v1)
    v2 = _fresh_vertex(f"{v}·2", taken)
    taken.add(v2)

    def carrier(slot):
        return v1 if slot in s1 else v2

    wires = []
    for w in d.wires:
        tail, head = w.tail, w.head
        if tail == v:
            tail = carrier((w.id, "tail"))
        if head == v:
            head = carrier((w.id, "head"))
        wires.append(Wire(w.id, tail, head))
    fresh = _fresh_wire({w.id for w in d.wires})
    wires.append(Wire(fresh, v1, v2))
    vertices = tuple(sorted(taken))
    return TensorDiagram(vertices, tuple(sorted(wires))), fresh, v1, v2


def split_vertex(d, v, part1, part2):
    """Split v into v·1 (part1 slots) and v·2 (part2); adds a v·1→v·2 wire.

    Parts may list wire ids (meaning every slot of that wire at v) or
    explicit (wire id, "tail"/"head") slots, so the two ends of a loop can
    land on different sides.
    """
    d2, fresh, _, _ = _split(d, v, part1, part2)
    return d2, fresh


def subdiagram_ref(d, vertices, wires=None):
    """Reference to a subdiagram of d; wires=None takes the induced wire set."""
    vset = set(vertices)
    for v in vset:
        if v not in d.vertices:
            raise NotASubdiagram(f"unknown vertex {v}")
    induced_wires = set()
    for w in d.wires:
        ends = [e for e in (w.tail, w.head) if e is not None]
        if ends and all(e in vset for e in ends):
            induced_wires.add(w.id)
    if wires is None:
        wset = induced_wires
    else:
        wset = set(wires)
        known = {w.id for w in d.wires}
        for wid in wset:
            if wid not in known:
                raise NotASubdiagram(f"unknown wire {wid}")
    induced = induced_wires <= wset
    return SubdiagramRef(tuple(sorted(vset)), tuple(sorted(wset)), induced)


def _check_subdiagram(d, s):
    """s must live inside d with every named endpoint among its vertices."""
    vset = set(s.vertices)
    for v in vset:
        if v not in d.vertices:
            raise NotASubdiagram(f"unknown vertex {v}")
    known = {w.id: w for w in d.wires}
    for wid in s.wires:
        w = known.get(wid)
        if w is None:
            raise NotASubdiagram(f"unknown wire {wid}")
        for end in (w.tail, w.head):
            if end is not None and end not in vset:
                raise NotASubdiagram(
                    f"wire {wid} leaves the vertex set at {end}")
    return vset, set(s.wires)


def isolate_subdiagram(d, s):
    """Split d so a pinned copy of s sits inside; see the flows module.

    Returns (new diagram, wires to pin to dimension 1, the copy of s).  Two
    passes per vertex of s: first separate the wires staying among s's
    vertices from the rest, then separate s's own wires (plus the first
    fresh wire) from the remainder.  Degenerate splits that would only add
    a pendant vertex are skipped, so isolating the whole diagram is a no-op.
    """
    u_set, f_set = _check_subdiagram(d, s)
    cur = d
    restricted = []
    carrier1 = {}    # original vertex -> (pass-1 carrier, its fresh wire or None)
    inside = set(u_set)
    for v in sorted(u_set):
        slots = _slots_at(cur, v)
        wires = {w.id: w for w in cur.wires}
        w1 = set()
        for wid, side in slots:
            w = wires[wid]
            other = w.head if side == "tail" else w.tail
            if other is not None and other in inside:
                w1.add((wid, side))
            elif other is None and wid in f_set:
                w1.add((wid, side))
        w2 = set(slots) - w1
        if w2:
            cur, fresh, v1, _ = _split(cur, v, w1, w2)
            restricted.append(fresh)
            inside.discard(v)
            inside.add(v1)
            carrier1[v] = (v1, fresh)
        else:
            carrier1[v] = (v, None)
    copy_vertices = []
    for v in sorted(u_set):
        c1, fresh1 = carrier1[v]
        slots = _slots_at(cur, c1)
        w1 = {(wid, side) for wid, side in slots
              if wid in f_set or wid == fresh1}
        w2 = set(slots) - w1
        if fresh1 is not None or w2:
            cur, fresh, v11, _ = _split(cur, c1, w1, w2)
            restricted.append(fresh)
            copy_vertices.append(v11)
        else:
            copy_vertices.append(c1)
    copy = subdiagram_ref(cur, copy_vertices)
    return cur, restricted, copy


def connected_components(d):
    """Maximal connected pieces as refs; endpointless wires are singletons."""
    parent = {v: v for v in d.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for w in d.wires:
        if w.tail is not None and w.head is not None:
            ra, rb = find(w.tail), find(w.head)
            if ra != rb:
                parent[ra] = rb
    groups = {}
    for v in d.vertices:
        groups.setdefault(find(v), []).append(v)
    comps = []
    for members in groups.values():
        vset = set(members)
        wset = [w.id for w in d.wires
                if (w.tail in vset) or (w.head in vset)]
        comps.append(SubdiagramRef(
            tuple(sorted(vset)), tuple(sorted(wset)), True))
    for w in d.wires:
        if w.is_endpointless():
            comps.append(SubdiagramRef((), (w.id,), True))
    comps.sort(key=lambda c: (c.vertices + c.wires))
    return comps
