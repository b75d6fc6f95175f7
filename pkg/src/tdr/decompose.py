"""Decomposition of path- and cycle-shaped representations.

Shapes are re-oriented internally (reverse_wire_rep) along a deterministic
traversal keyed to lexicographic ids, so the output never depends on wire
orientations.  Positions are wires along the traversal; arcs are the
vertex matrices between consecutive positions.

Open paths (one or two dangling ends) decompose into Interval blocks by
the rank inclusion-exclusion over composites; the closed end of a
one-dangling path behaves as an extra pinned position of dimension 1.
Cycles split at each position into the monodromy's eventual image and
eventual kernel: the invertible part yields Band blocks named by
elementary divisors, the nilpotent part yields String blocks from graded
Jordan chains.  Closed paths are decomposed through their associated
cycle, whose last position is the pinned scalar slot.
"""

from dataclasses import dataclass

from .classify import classify_diagram
from .errors import (
    DiagramMismatch,
    InvalidDescriptor,
    NotConnected,
    NotDecidableWild,
    NotDecomposable,
)
from .exactalg import (
    Matrix,
    Poly,
    column_space,
    companion,
    coords_in_basis,
    factor_poly,
    graded_jordan_chains,
    _kernel_filtration,
    rank,
    rational_canonical,
)
from .rational import ONE, ZERO
from .representation import Representation, reverse_wire_rep
from .semigraph import TensorDiagram, Wire, connected_components


@dataclass(frozen=True)
class Interval:
    a: int
    b: int

    def _key(self):
        return (0, self.a, self.b)


@dataclass(frozen=True)
class Band:
    poly: Poly    # monic irreducible, nonzero constant term
    power: int

    def _key(self):
        return (1, self.poly.degree(), self.poly.coeffs, self.power)


@dataclass(frozen=True)
class StringBlock:
    start: int
    length: int

    def _key(self):
        return (2, self.start, self.length)


@dataclass(frozen=True)
class Decomposition:
    blocks: tuple   # ((descriptor, multiplicity), ...) canonically sorted

    def as_multiset(self):
        return dict(self.blocks)


def _collect(descs):
    counts = {}
    for desc in descs:
        counts[desc] = counts.get(desc, 0) + 1
    return Decomposition(tuple(
        sorted(counts.items(), key=lambda dm: dm[0]._key())))


# ---------------------------------------------------------------------------
# shape traversal

def _incident(d, v):
    out = []
    for w in d.wires:
        if w.tail == v:
            out.append(w)
        if w.head == v:
            out.append(w)
    return out


def _other_end(w, v):
    return w.head if w.tail == v else w.tail


def _normalize(r, wanted):
    """Reverse wires until each (wire, tail, head) in wanted holds."""
    for wid, tail, head in wanted:
        w = r.diagram.wire(wid)
        if (w.tail, w.head) != (tail, head):
            r = reverse_wire_rep(r, wid)
    return r


def _walk_path(d, first_wire, start_vertex):
    """Wires and vertices of a path, from a wire end towards the rest."""
    wires = [first_wire]
    verts = []
    v = start_vertex
    prev = first_wire
    while v is not None:
        verts.append(v)
        nxt = [w for w in _incident(d, v) if w.id != prev.id]
        if not nxt:
            break
        prev = nxt[0]
        wires.append(prev)
        v = _other_end(prev, v)
    return wires, verts


def _traverse(d, family):
    """Deterministic traversal of a path or cycle shape.

    Returns (wires, verts, wanted): wires in position order, the arc
    vertices in arc order (for P the closed start comes first, for J the
    start vertex comes last), and the (wire, tail, head) orientations a
    co-oriented traversal wants.
    """
    if family == "A0":
        first = sorted(w for w in d.wires if w.is_dangling())[0]
        v0 = first.tail if first.tail is not None else first.head
        wires, verts = _walk_path(d, first, v0)
        wanted = []
        for i, w in enumerate(wires):
            tail = verts[i - 1] if i > 0 else None
            head = verts[i] if i < len(verts) else None
            wanted.append((w.id, tail, head))
        return wires, verts, wanted
    if family == "A1":
        first = next(w for w in d.wires if w.is_dangling())
        v0 = first.tail if first.tail is not None else first.head
        wires, verts = _walk_path(d, first, v0)
        wanted = [(w.id, verts[i - 1] if i > 0 else None, verts[i])
                  for i, w in enumerate(wires)]
        return wires, verts, wanted
    if family == "P":
        if len(d.vertices) == 1:
            return [], [d.vertices[0]], []
        ends = sorted(v for v in d.vertices if len(_incident(d, v)) == 1)
        start = ends[0]
        first = _incident(d, start)[0]
        wires, verts = _walk_path(d, first, _other_end(first, start))
        verts = [start] + verts
        wanted = [(w.id, verts[i], verts[i + 1]) for i, w in enumerate(wires)]
        return wires, verts, wanted
    # J: cycle; start at the smallest vertex, leave along its smaller wire
    start = d.vertices[0]
    first = sorted(_incident(d, start), key=lambda w: w.id)[0]
    wires = [first]
    verts = []
    v = _other_end(first, start)
    prev = first
    while v != start:
        verts.append(v)
        nxt = [w for w in _incident(d, v) if w.id != prev.id][0]
        wires.append(nxt)
        prev = nxt
        v = _other_end(nxt, v)
    verts.append(start)
    wanted = []
    for i, w in enumerate(wires):
        tail = verts[i - 1] if i > 0 else start
        wanted.append((w.id, tail, verts[i]))
    return wires, verts, wanted


def _oriented_arcs(r, family):
    """Traversal + reorientation; returns (positions dims, arcs, n_positions).

    Positions are 1-based; arcs[i] maps position i+1 to position i+2
    (cyclically for J/P, where the last position of P is the scalar slot).
    """
    d = r.diagram
    wires, verts, wanted = _traverse(d, family)
    r = _normalize(r, wanted)
    if family == "A0":
        dims = [r.dims[w.id] for w in wires]
        arcs = [r.tensors[v] for v in verts]
        return dims, arcs, len(wires)
    if family == "A1":
        dims = [r.dims[w.id] for w in wires] + [1]
        arcs = [r.tensors[v] for v in verts]
        return dims, arcs, len(wires) + 1
    if family == "P":
        n = len(d.vertices)
        dims = [r.dims[w.id] for w in wires] + [1]
        # arcs: interior vertices, then the covector end, then the vector end
        arcs = [r.tensors[v] for v in verts[1:]] + [r.tensors[verts[0]]]
        return dims, arcs, n
    dims = [r.dims[w.id] for w in wires]
    arcs = [r.tensors[v] for v in verts]
    return dims, arcs, len(wires)


# ---------------------------------------------------------------------------
# interval multiplicities (open paths)

def _interval_blocks(dims, arcs, m):
    ranks = {}
    for a in range(1, m + 1):
        x = Matrix.identity(dims[a - 1])
        ranks[(a, a)] = dims[a - 1]
        for b in range(a + 1, m + 1):
            x = arcs[b - 2] @ x
            ranks[(a, b)] = rank(x)

    def r(a, b):
        if a < 1 or b > m:
            return 0
        return ranks[(a, b)]

    out = []
    for a in range(1, m + 1):
        for b in range(a, m + 1):
            mult = r(a, b) - r(a - 1, b) - r(a, b + 1) + r(a - 1, b + 1)
            out.extend([Interval(a, b)] * mult)
    return out


# ---------------------------------------------------------------------------
# cycle decomposition

def _fitting_cores(arcs, dims):
    n = len(arcs)
    cores = [Matrix.identity(dims[i]) for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            nxt = column_space(arcs[i - 1] @ cores[i - 1])
            if nxt.cols != cores[i].cols:
                changed = True
            cores[i] = nxt
    return cores


def _cycle_blocks(dims, arcs):
    n = len(arcs)
    cores = _fitting_cores(arcs, dims)
    _, kers = _kernel_filtration(arcs, dims)
    out = []
    if cores[0].cols:
        x = cores[0]
        for i in range(n):
            x = arcs[i] @ x
        lbar = coords_in_basis(cores[0], x)
        for p, s in rational_canonical(lbar):
            out.append(Band(p, s))
    nil_arcs = [coords_in_basis(kers[(i + 1) % n], arcs[i] @ kers[i])
                for i in range(n)]
    for chain in graded_jordan_chains(nil_arcs):
        out.append(StringBlock(chain.start, chain.length))
    return out


def _classified(r):
    comps = classify_diagram(r.diagram)
    if len(comps) != 1:
        raise NotConnected(f"{len(comps)} components")
    _, cls = comps[0]
    if cls.kind == "wild":
        raise NotDecomposable(f"wild component ({cls.witness.kind})")
    return cls


def decompose(r):
    """Indecomposable block multiset of a connected finite/tame shape."""
    cls = _classified(r)
    dims, arcs, m = _oriented_arcs(r, cls.family)
    if cls.family in ("A0", "A1"):
        blocks = _interval_blocks(dims, arcs, m)
        if cls.family == "A1":
            blocks = [blk for blk in blocks if blk != Interval(m, m)]
        return _collect(blocks)
    blocks = _cycle_blocks(dims, arcs)
    if cls.family == "P":
        blocks = [blk for blk in blocks if blk != StringBlock(m, 1)]
    return _collect(blocks)


def block_alias(family, n, desc):
    """Classical short name for a closed-path block, when one applies.

    Closed paths have three named families: V(lambda) for scalar bands,
    V0(i) for simples off the pinned position, W(i) for strings wrapping
    the pin exactly once.  Everything else (higher band powers, other
    strings) has no alias and keeps its descriptor.
    """
    if family != "P":
        return None
    if isinstance(desc, Band) and desc.poly.degree() == 1 and desc.power == 1:
        lam = -desc.poly.coeffs[0]
        return f"V({lam})"
    if isinstance(desc, StringBlock):
        if desc.length == 1 and desc.start <= n - 1:
            return f"V0({desc.start})"
        if desc.start == 1 and n < desc.length <= 2 * n - 1:
            return f"W({desc.length - n})"
    return None


def isomorphic(r1, r2):
    """Orbit equality through decomposition, componentwise."""
    if r1.diagram != r2.diagram:
        raise DiagramMismatch("isomorphism test needs a common diagram")
    for comp, cls in classify_diagram(r1.diagram):
        if cls.kind == "wild":
            raise NotDecidableWild(f"wild component ({cls.witness.kind})")
    for comp in connected_components(r1.diagram):
        s1 = _restrict(r1, comp)
        s2 = _restrict(r2, comp)
        if s1.dims != s2.dims or decompose(s1) != decompose(s2):
            return False
    return True


def _restrict(r, comp):
    wires = tuple(sorted(w for w in r.diagram.wires if w.id in set(comp.wires)))
    d = TensorDiagram(tuple(comp.vertices), wires)
    dims = {w.id: r.dims[w.id] for w in wires}
    tensors = {v: r.tensors[v] for v in comp.vertices}
    return Representation(d, dims, tensors)


# ---------------------------------------------------------------------------
# canonical realizations

def _vertex_names(n):
    width = len(str(max(n, 1)))
    return [f"v{i:0{width}d}" if n > 9 else f"v{i}" for i in range(1, n + 1)]


def _wire_names(m):
    width = len(str(max(m, 1)))
    return [f"e{i:0{width}d}" if m > 9 else f"e{i}" for i in range(1, m + 1)]


def canonical_diagram(family, n):
    """The lex-traversal-friendly diagram for each shape family."""
    if n < 1:
        raise InvalidDescriptor(f"shape size {n} out of range")
    vs = _vertex_names(n)
    if family == "A0":
        es = _wire_names(n + 1)
        wires = [Wire(es[0], None, vs[0])]
        wires += [Wire(es[i], vs[i - 1], vs[i]) for i in range(1, n)]
        wires.append(Wire(es[n], vs[n - 1], None))
    elif family == "A1":
        es = _wire_names(n)
        wires = [Wire(es[0], None, vs[0])]
        wires += [Wire(es[i], vs[i - 1], vs[i]) for i in range(1, n)]
    elif family == "P":
        es = _wire_names(max(n - 1, 0))
        wires = [Wire(es[i], vs[i], vs[i + 1]) for i in range(n - 1)]
    elif family == "J":
        es = _wire_names(n)
        if n == 1:
            wires = [Wire(es[0], vs[0], vs[0])]
        else:
            wires = [Wire(es[i], vs[i], vs[i + 1]) for i in range(n - 1)]
            wires.append(Wire(es[n - 1], vs[n - 1], vs[0]))
    else:
        raise InvalidDescriptor(f"unknown family {family!r}")
    return TensorDiagram(tuple(vs), tuple(sorted(wires)))


def _check_band(desc):
    p = desc.poly
    if p.degree() < 1 or p.leading() != 1:
        raise InvalidDescriptor("band polynomial must be monic, degree >= 1")
    if not p.coeffs[0]:
        raise InvalidDescriptor("band polynomial needs a nonzero constant term")
    if desc.power < 1:
        raise InvalidDescriptor("band power must be >= 1")
    if factor_poly(p) != [(p, 1)]:
        raise InvalidDescriptor("band polynomial must be irreducible")


def _string_grade_dims(desc, n):
    dims = [0] * n
    for j in range(desc.length):
        dims[(desc.start - 1 + j) % n] += 1
    return dims


def _cycle_block_data(desc, n):
    """(per-grade dims, arcs) of one cycle block, grades 0-based."""
    if isinstance(desc, Band):
        _check_band(desc)
        base = companion(desc.poly ** desc.power)
        m = base.rows
        dims = [m] * n
        arcs = [Matrix.identity(m) for _ in range(n - 1)] + [base]
        return dims, arcs
    if isinstance(desc, StringBlock):
        if not (1 <= desc.start <= n) or desc.length < 1:
            raise InvalidDescriptor(f"string out of range for n={n}")
        dims = _string_grade_dims(desc, n)
        # basis at each grade: chain indices ascending
        index_of = {}
        seen = [0] * n
        for j in range(desc.length):
            g = (desc.start - 1 + j) % n
            index_of[j] = seen[g]
            seen[g] += 1
        arcs = []
        for g in range(n):
            h = (g + 1) % n
            rows = [[ZERO] * dims[g] for _ in range(dims[h])]
            for j in range(desc.length - 1):
                if (desc.start - 1 + j) % n == g:
                    rows[index_of[j + 1]][index_of[j]] = ONE
            arcs.append(Matrix(dims[h], dims[g],
                               tuple(tuple(row) for row in rows)))
        return dims, arcs
    raise InvalidDescriptor(f"descriptor {desc!r} not valid for a cycle")


def realize(family, n, desc):
    """Canonical representation of one indecomposable block."""
    d = canonical_diagram(family, n)
    vs = _vertex_names(n)
    if family in ("A0", "A1"):
        m = n + 1
        if not isinstance(desc, Interval):
            raise InvalidDescriptor(f"{family} blocks are intervals")
        if not (1 <= desc.a <= desc.b <= m):
            raise InvalidDescriptor(f"interval out of range for {family}({n})")
        if family == "A1" and desc.a == m:
            raise InvalidDescriptor("interval covers only the pinned position")
        pos = [1 if desc.a <= i <= desc.b else 0 for i in range(1, m + 1)]
        wire_dims = pos[:-1] if family == "A1" else pos
        es = _wire_names(len(wire_dims))
        dims = dict(zip(es, wire_dims))
        tensors = {}
        for i, v in enumerate(vs):
            rows = pos[i + 1] if (family == "A0" or i + 1 < n) else 1
            cols = pos[i]
            if pos[i] and pos[i + 1]:
                tensors[v] = Matrix.from_rows([[1]])
            else:
                tensors[v] = Matrix.zeros(rows, cols)
        return Representation(d, dims, tensors)
    if family == "P":
        gdims, arcs = _cycle_block_data(desc, n)
        if gdims[n - 1] > 1:
            raise InvalidDescriptor(
                "block needs more than one copy of the pinned position")
        if isinstance(desc, StringBlock) and desc == StringBlock(n, 1):
            raise InvalidDescriptor("pinned simple is the zero block")
        if n == 1:
            return Representation(d, {}, {vs[0]: arcs[0]})
        es = _wire_names(n - 1)
        dims = {es[i]: gdims[i] for i in range(n - 1)}
        tensors = {}
        for i in range(1, n - 1):
            tensors[vs[i]] = arcs[i - 1]
        last = arcs[n - 2]   # grade n-1 -> pinned grade
        tensors[vs[n - 1]] = (last if gdims[n - 1] == 1
                              else Matrix.zeros(1, gdims[n - 2]))
        firstm = arcs[n - 1]  # pinned grade -> grade 1
        tensors[vs[0]] = (firstm if gdims[n - 1] == 1
                          else Matrix.zeros(gdims[0], 1))
        return Representation(d, dims, tensors)
    if family == "J":
        gdims, arcs = _cycle_block_data(desc, n)
        es = _wire_names(n)
        dims = {es[i]: gdims[i] for i in range(n)}
        tensors = {vs[0]: arcs[n - 1]}
        for i in range(1, n):
            tensors[vs[i]] = arcs[i - 1]
        return Representation(d, dims, tensors)
    raise InvalidDescriptor(f"unknown family {family!r}")
