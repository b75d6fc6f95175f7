"""Representations of tensor diagrams and their structure maps.

A representation assigns a dimension to every wire and one exact rational
matrix to every vertex.  Rows are indexed by the multi-index over outgoing
wires in canonical (lexicographic) wire order with the first wire varying
slowest; columns likewise over incoming wires; an empty side indexes a
single scalar slot.  A loop contributes its dimension to both sides.

Everything downstream (direct sums, contraction, the splitting functor)
manipulates tensors purely through this indexing, so the encode/decode
helpers here are the single source of truth for it.
"""

from dataclasses import dataclass
from functools import reduce

from .errors import (
    DiagramMismatch,
    NotALoop,
    NotAMorphism,
    NotClosed,
    NotMonic,
    NotQuiverLike,
    RestrictedDimViolation,
    ShapeMismatch,
    SizeMismatch,
    UnknownWire,
)
from .exactalg import Matrix, column_space, extend_basis, inverse, rank
from .rational import ONE, Q, ZERO
from .semigraph import (
    TensorDiagram,
    Wire,
    connected_components,
    neighborhood,
    validate_diagram,
)


class Representation:
    __slots__ = ("diagram", "dims", "tensors")

    def __init__(self, diagram, dims, tensors):
        self.diagram = diagram
        self.dims = dims
        self.tensors = tensors

    def __eq__(self, other):
        return (isinstance(other, Representation)
                and self.diagram == other.diagram
                and self.dims == other.dims
                and self.tensors == other.tensors)

    def __repr__(self):
        return f"Representation({self.diagram!r}, dims={self.dims!r})"


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def _enc(idx, ds):
    code = 0
    for i, d in zip(idx, ds):
        code = code * d + i
    return code


def _dec(code, ds):
    out = [0] * len(ds)
    for k in range(len(ds) - 1, -1, -1):
        out[k] = code % ds[k]
        code //= ds[k]
    return tuple(out)


def vertex_shape(diagram, dims, v):
    nb = neighborhood(diagram, v)
    rows = _prod(dims[w] for w in nb.outgoing)
    cols = _prod(dims[w] for w in nb.incoming)
    return rows, cols


def validate_representation(diagram, dims, tensors):
    d = validate_diagram(diagram)
    wire_ids = [w.id for w in d.wires]
    dv = {}
    for wid in wire_ids:
        if wid not in dims:
            raise ShapeMismatch(f"missing dimension for wire {wid}")
        val = dims[wid]
        if not isinstance(val, int) or isinstance(val, bool) or val < 0:
            raise ShapeMismatch(f"bad dimension for wire {wid}: {val!r}")
        dv[wid] = val
    for wid in dims:
        if wid not in dv:
            raise ShapeMismatch(f"dimension for unknown wire {wid}")
    out = {}
    for v in d.vertices:
        if v not in tensors:
            raise ShapeMismatch(f"missing tensor for vertex {v}")
        m = tensors[v]
        if not isinstance(m, Matrix):
            m = Matrix.from_rows(m)
        rows, cols = vertex_shape(d, dv, v)
        if (m.rows, m.cols) != (rows, cols):
            raise ShapeMismatch(
                f"vertex {v}: expected {rows}x{cols}, got {m.rows}x{m.cols}")
        out[v] = m
    for v in tensors:
        if v not in out:
            raise ShapeMismatch(f"tensor for unknown vertex {v}")
    return Representation(d, dv, out)


def _kron_all(mats):
    return reduce(lambda a, b: a.kron(b), mats, Matrix.identity(1))


def apply_group_element(g, r):
    """Change of basis: each tensor becomes (kron g_out) M (kron inv g_in)."""
    for wid, dim in r.dims.items():
        if wid not in g:
            raise SizeMismatch(f"missing group entry for wire {wid}")
        m = g[wid]
        if m.rows != dim or m.cols != dim:
            raise SizeMismatch(
                f"wire {wid}: group entry {m.rows}x{m.cols}, dim {dim}")
    inv = {wid: inverse(g[wid]) for wid in r.dims}
    tensors = {}
    for v in r.diagram.vertices:
        nb = neighborhood(r.diagram, v)
        left = _kron_all([g[w] for w in nb.outgoing])
        right = _kron_all([inv[w] for w in nb.incoming])
        tensors[v] = left @ r.tensors[v] @ right
    return Representation(r.diagram, dict(r.dims), tensors)


def direct_sum(r1, r2):
    """Tensor direct sum: pure blocks carry the summands, mixed blocks zero.

    A vertex with no slots at all holds a bare scalar, and there the sum
    adds the scalars (that is what makes contraction additive).
    """
    if r1.diagram != r2.diagram:
        raise DiagramMismatch("direct_sum needs a common diagram")
    d = r1.diagram
    dims = {w: r1.dims[w] + r2.dims[w] for w in r1.dims}
    tensors = {}
    for v in d.vertices:
        nb = neighborhood(d, v)
        if not nb.outgoing and not nb.incoming:
            tensors[v] = Matrix.from_rows(
                [[r1.tensors[v].data[0][0] + r2.tensors[v].data[0][0]]])
            continue
        rds = [dims[w] for w in nb.outgoing]
        cds = [dims[w] for w in nb.incoming]
        rd1 = [r1.dims[w] for w in nb.outgoing]
        cd1 = [r1.dims[w] for w in nb.incoming]
        rows, cols = _prod(rds), _prod(cds)
        m1, m2 = r1.tensors[v], r2.tensors[v]
        data = []
        for row in range(rows):
            ridx = _dec(row, rds)
            rparts = {0 if i < d1 else 1 for i, d1 in zip(ridx, rd1)}
            out_row = []
            for col in range(cols):
                cidx = _dec(col, cds)
                parts = rparts | {0 if i < d1 else 1
                                  for i, d1 in zip(cidx, cd1)}
                if parts == {0}:
                    out_row.append(m1.data[
                        _enc(ridx, rd1)][_enc(cidx, cd1)])
                elif parts == {1}:
                    r2i = [i - d1 for i, d1 in zip(ridx, rd1)]
                    c2i = [i - d1 for i, d1 in zip(cidx, cd1)]
                    rd2 = [dims[w] - d1 for w, d1 in zip(nb.outgoing, rd1)]
                    cd2 = [dims[w] - d1 for w, d1 in zip(nb.incoming, cd1)]
                    out_row.append(m2.data[_enc(r2i, rd2)][_enc(c2i, cd2)])
                else:
                    out_row.append(ZERO)
            data.append(tuple(out_row))
        tensors[v] = Matrix(rows, cols, tuple(data))
    return Representation(d, dims, tensors)


def tensor_product(r1, r2):
    """Monoidal product: dims multiply, per-wire indices nest r1-major."""
    if r1.diagram != r2.diagram:
        raise DiagramMismatch("tensor_product needs a common diagram")
    d = r1.diagram
    dims = {w: r1.dims[w] * r2.dims[w] for w in r1.dims}
    tensors = {}
    for v in d.vertices:
        nb = neighborhood(d, v)
        rds = [dims[w] for w in nb.outgoing]
        cds = [dims[w] for w in nb.incoming]
        rd1 = [r1.dims[w] for w in nb.outgoing]
        rd2 = [r2.dims[w] for w in nb.outgoing]
        cd1 = [r1.dims[w] for w in nb.incoming]
        cd2 = [r2.dims[w] for w in nb.incoming]
        rows, cols = _prod(rds), _prod(cds)
        m1, m2 = r1.tensors[v], r2.tensors[v]
        data = []
        for row in range(rows):
            ridx = _dec(row, rds)
            ri1 = [i // b for i, b in zip(ridx, rd2)]
            ri2 = [i % b for i, b in zip(ridx, rd2)]
            out_row = []
            for col in range(cols):
                cidx = _dec(col, cds)
                ci1 = [i // b for i, b in zip(cidx, cd2)]
                ci2 = [i % b for i, b in zip(cidx, cd2)]
                out_row.append(
                    m1.data[_enc(ri1, rd1)][_enc(ci1, cd1)]
                    * m2.data[_enc(ri2, rd2)][_enc(ci2, cd2)])
            data.append(tuple(out_row))
        tensors[v] = Matrix(rows, cols, tuple(data))
    return Representation(d, dims, tensors)


def unit(diagram):
    d = validate_diagram(diagram)
    dims = {w.id: 1 for w in d.wires}
    tensors = {v: Matrix.from_rows([[1]]) for v in d.vertices}
    return Representation(d, dims, tensors)


def dual_rep(r):
    """Reverse every wire and transpose every tensor; an exact involution."""
    d = r.diagram
    wires = tuple(sorted(Wire(w.id, w.head, w.tail) for w in d.wires))
    dd = TensorDiagram(d.vertices, wires)
    tensors = {v: m.transpose() for v, m in r.tensors.items()}
    return Representation(dd, dict(r.dims), tensors)


def _phi_checked(phi, r1, r2):
    if r1.diagram != r2.diagram:
        raise DiagramMismatch("morphism endpoints live on different diagrams")
    for wid in r1.dims:
        if wid not in phi:
            raise ShapeMismatch(f"missing morphism component for wire {wid}")
        m = phi[wid]
        if (m.rows, m.cols) != (r2.dims[wid], r1.dims[wid]):
            raise ShapeMismatch(
                f"wire {wid}: component {m.rows}x{m.cols}, "
                f"want {r2.dims[wid]}x{r1.dims[wid]}")
    return r1.diagram


def is_morphism(phi, r1, r2):
    d = _phi_checked(phi, r1, r2)
    for v in d.vertices:
        nb = neighborhood(d, v)
        left = _kron_all([phi[w] for w in nb.outgoing])
        right = _kron_all([phi[w] for w in nb.incoming])
        if left @ r1.tensors[v] != r2.tensors[v] @ right:
            return False
    return True


def _quiver_slots(d):
    """Per-vertex (in wire, out wire); every vertex must have exactly one of
    each so hom conditions stay linear and homogeneous."""
    slots = {}
    for v in d.vertices:
        nb = neighborhood(d, v)
        if len(nb.incoming) != 1 or len(nb.outgoing) != 1:
            raise NotQuiverLike(
                f"vertex {v} has {len(nb.incoming)} incoming and "
                f"{len(nb.outgoing)} outgoing slots")
        slots[v] = (nb.incoming[0], nb.outgoing[0])
    return slots


def hom_dim(r1, r2):
    """Dimension of the space of morphisms r1 -> r2."""
    if r1.diagram != r2.diagram:
        raise DiagramMismatch("hom_dim needs a common diagram")
    d = r1.diagram
    slots = _quiver_slots(d)
    wires = [w.id for w in d.wires]
    offs = {}
    total = 0
    for wid in wires:
        offs[wid] = total
        total += r2.dims[wid] * r1.dims[wid]
    if total == 0:
        return 0
    rows = []
    for v in d.vertices:
        a, b = slots[v]
        m1, m2 = r1.tensors[v], r2.tensors[v]
        # phi_b m1 - m2 phi_a = 0, unknowns vec'd row-major
        for i in range(r2.dims[b]):
            for j in range(r1.dims[a]):
                row = [ZERO] * total
                for k in range(r1.dims[b]):
                    row[offs[b] + i * r1.dims[b] + k] += m1.data[k][j]
                for k in range(r2.dims[a]):
                    row[offs[a] + k * r1.dims[a] + j] -= m2.data[i][k]
                rows.append(tuple(row))
    if not rows:
        return total
    sys = Matrix(len(rows), total, tuple(rows))
    return total - rank(sys)


def _coker_data(phi, r1, r2):
    """Per-wire cokernel pieces for an arbitrary morphism.

    For each wire: projection psi_e onto a complement of im(phi_e), and a
    section s_e embedding that complement back, with psi_e s_e = I and
    psi_e phi_e = 0 exactly.
    """
    d = r1.diagram
    slots = _quiver_slots(d)
    if not is_morphism(phi, r1, r2):
        raise NotAMorphism("the commuting squares fail")
    psi = {}
    sec = {}
    dims = {}
    for wid in r1.dims:
        im = column_space(phi[wid])
        full, _ = extend_basis(im, Matrix.identity(r2.dims[wid]))
        k = r2.dims[wid] - im.cols
        dims[wid] = k
        if r2.dims[wid] == 0:
            psi[wid] = Matrix(0, 0, ())
            sec[wid] = Matrix(0, 0, ())
            continue
        uinv = inverse(full)
        psi[wid] = uinv.submatrix(range(im.cols, r2.dims[wid]),
                                  range(r2.dims[wid]))
        sec[wid] = full.submatrix(range(r2.dims[wid]),
                                  range(im.cols, r2.dims[wid]))
    tensors = {}
    for v in d.vertices:
        a, b = slots[v]
        tensors[v] = psi[b] @ r2.tensors[v] @ sec[a]
    r3 = Representation(d, dims, tensors)
    return r3, psi


def cokernel(phi, r1, r2):
    """Cokernel of a monic morphism with its projection."""
    _phi_checked(phi, r1, r2)
    for wid in r1.dims:
        if rank(phi[wid]) < r1.dims[wid]:
            raise NotMonic(f"component at wire {wid} is not injective")
    return _coker_data(phi, r1, r2)


def kernel(phi, r1, r2):
    """Kernel of a morphism, via the cokernel of the transposed morphism."""
    _phi_checked(phi, r1, r2)
    d1, d2 = dual_rep(r1), dual_rep(r2)
    phit = {wid: phi[wid].transpose() for wid in phi}
    c, psi = _coker_data(phit, d2, d1)
    ker = dual_rep(c)
    incl = {wid: psi[wid].transpose() for wid in psi}
    return ker, incl


# ---------------------------------------------------------------------------
# contraction

@dataclass
class _Node:
    entries: list   # flat values, slots first-slowest
    slots: list     # (wire id, "out" | "in")
    dims: list


def _node_of_vertex(r, v):
    nb = neighborhood(r.diagram, v)
    slots = [(w, "out") for w in nb.outgoing] + [(w, "in") for w in nb.incoming]
    dims = [r.dims[w] for w, _ in slots]
    m = r.tensors[v]
    entries = [x for row in m.data for x in row]
    return _Node(entries, slots, dims)


def _contract_same(node, p, q):
    keep = [i for i in range(len(node.slots)) if i not in (p, q)]
    dims = [node.dims[i] for i in keep]
    k = node.dims[p]
    size = _prod(dims)
    entries = []
    for code in range(size):
        idx = _dec(code, dims)
        full = [0] * len(node.slots)
        for pos, i in zip(keep, idx):
            full[pos] = i
        acc = ZERO
        for t in range(k):
            full[p] = t
            full[q] = t
            acc += node.entries[_enc(full, node.dims)]
        entries.append(acc)
    return _Node(entries, [node.slots[i] for i in keep], dims)


def _contract_pair(na, p, nb, q):
    keep_a = [i for i in range(len(na.slots)) if i != p]
    keep_b = [i for i in range(len(nb.slots)) if i != q]
    slots = [na.slots[i] for i in keep_a] + [nb.slots[i] for i in keep_b]
    dims = [na.dims[i] for i in keep_a] + [nb.dims[i] for i in keep_b]
    k = na.dims[p]
    size = _prod(dims)
    entries = []
    for code in range(size):
        idx = _dec(code, dims)
        fa = [0] * len(na.slots)
        fb = [0] * len(nb.slots)
        for pos, i in zip(keep_a, idx[:len(keep_a)]):
            fa[pos] = i
        for pos, i in zip(keep_b, idx[len(keep_a):]):
            fb[pos] = i
        acc = ZERO
        for t in range(k):
            fa[p] = t
            fb[q] = t
            acc += na.entries[_enc(fa, na.dims)] * nb.entries[_enc(fb, nb.dims)]
        entries.append(acc)
    return _Node(entries, slots, dims)


def _find_slot(nodes, wid, side):
    for key, node in nodes.items():
        for pos, slot in enumerate(node.slots):
            if slot == (wid, side):
                return key, pos
    raise UnknownWire(wid)


def contract(r, _order=None):
    """Contract a closed diagram to its exact scalar value.

    Greedy pairwise order: always the wire whose contraction leaves the
    smallest node, ties broken by wire id.  _order forces an explicit wire
    order (any order yields the same scalar; tests exercise that).
    """
    if not r.diagram.is_closed():
        raise NotClosed("diagram has dangling or endpointless wires")
    nodes = {v: _node_of_vertex(r, v) for v in r.diagram.vertices}
    remaining = [w.id for w in r.diagram.wires]
    if _order is not None:
        order = list(_order)
        if sorted(order) != sorted(remaining):
            raise UnknownWire("order must list every wire exactly once")
    while remaining:
        if _order is not None:
            wid = order[len(order) - len(remaining)]
        else:
            best = None
            for cand in remaining:
                ka, pa = _find_slot(nodes, cand, "out")
                kb, pb = _find_slot(nodes, cand, "in")
                if ka == kb:
                    sz = _prod(nodes[ka].dims) // max(1, nodes[ka].dims[pa]) \
                        // max(1, nodes[ka].dims[pb])
                else:
                    sz = (_prod(nodes[ka].dims) // max(1, nodes[ka].dims[pa])
                          * (_prod(nodes[kb].dims) // max(1, nodes[kb].dims[pb])))
                if best is None or (sz, cand) < best:
                    best = (sz, cand)
            wid = best[1]
        ka, pa = _find_slot(nodes, wid, "out")
        kb, pb = _find_slot(nodes, wid, "in")
        if ka == kb:
            nodes[ka] = _contract_same(nodes[ka], pa, pb)
        else:
            merged = _contract_pair(nodes[ka], pa, nodes[kb], pb)
            del nodes[kb]
            nodes[ka] = merged
        remaining.remove(wid)
    total = ONE
    for node in nodes.values():
        total *= node.entries[0]
    return total


def monodromy(r, base):
    """Product of the vertex matrices once around a co-oriented cycle.

    The first factor is the matrix at the base wire's head; factors then
    accumulate along the orientation, so the result maps the base wire's
    space to itself.
    """
    d = r.diagram
    known = {w.id: w for w in d.wires}
    if base not in known:
        raise UnknownWire(base)
    if not d.vertices or len(d.wires) != len(d.vertices):
        raise NotALoop("shape is not a single co-oriented cycle")
    if not d.is_closed():
        raise NotALoop("cycle must be closed")
    out_of = {}
    for v in d.vertices:
        nb = neighborhood(d, v)
        if len(nb.incoming) != 1 or len(nb.outgoing) != 1:
            raise NotALoop(f"vertex {v} is not on a co-oriented cycle")
        out_of[v] = nb.outgoing[0]
    if len(connected_components(d)) != 1:
        raise NotALoop("cycle must be connected")
    v = known[base].head
    acc = r.tensors[v]
    wid = out_of[v]
    while wid != base:
        v = known[wid].head
        acc = r.tensors[v] @ acc
        wid = out_of[v]
    return acc


# ---------------------------------------------------------------------------
# reindexing functors

def _retensor(m, dims, old_out, old_in, new_out, new_in, keymap):
    """Rebuild a vertex tensor for new slot lists.

    keymap sends a new slot key (wire, side) to the old key holding its
    index; unlisted keys map to themselves.
    """
    old_keys = [(w, "out") for w in old_out] + [(w, "in") for w in old_in]
    old_pos = {k: i for i, k in enumerate(old_keys)}
    old_dims = [dims[w] for w, _ in old_keys]
    n_out = len(old_out)
    new_keys = [(w, "out") for w in new_out] + [(w, "in") for w in new_in]
    rds = [dims[w] for w in new_out]
    cds = [dims[w] for w in new_in]
    rows, cols = _prod(rds), _prod(cds)
    data = []
    for row in range(rows):
        ridx = _dec(row, rds)
        out_row = []
        for col in range(cols):
            cidx = _dec(col, cds)
            old_idx = [0] * len(old_keys)
            for key, val in zip(new_keys, list(ridx) + list(cidx)):
                old_idx[old_pos[keymap.get(key, key)]] = val
            r_i = _enc(old_idx[:n_out], old_dims[:n_out])
            c_i = _enc(old_idx[n_out:], old_dims[n_out:])
            out_row.append(m.data[r_i][c_i])
        data.append(tuple(out_row))
    return Matrix(rows, cols, tuple(data))


def reverse_wire_rep(r, wid):
    """Reverse one wire, reindexing its endpoint tensors; an involution.

    The wire's space is identified with its dual in the standard basis, so
    entries move but never change.  Reversing a loop swaps that wire's row
    and column indices at its vertex (a partial transpose).
    """
    d = r.diagram
    w = d.wire(wid)
    wires = tuple(sorted(
        Wire(x.id, x.head, x.tail) if x.id == wid else x for x in d.wires))
    dd = TensorDiagram(d.vertices, wires)
    tensors = dict(r.tensors)
    touched = {v for v in (w.tail, w.head) if v is not None}
    for v in touched:
        old_nb = neighborhood(d, v)
        new_nb = neighborhood(dd, v)
        if w.is_loop():
            keymap = {(wid, "out"): (wid, "in"), (wid, "in"): (wid, "out")}
        else:
            # the single slot of wid at v changes side, index carried over
            if wid in old_nb.outgoing:
                keymap = {(wid, "in"): (wid, "out")}
            else:
                keymap = {(wid, "out"): (wid, "in")}
        tensors[v] = _retensor(
            r.tensors[v], r.dims, old_nb.outgoing, old_nb.incoming,
            new_nb.outgoing, new_nb.incoming, keymap)
    return Representation(dd, dict(r.dims), tensors)


def _merged_name(v1, v2, taken):
    sep = "·"
    if v1.endswith(sep + "1") and v2 == v1[:-2] + sep + "2":
        base = v1[:-2]
        if base not in taken:
            return base
    base = f"{v1}+{v2}"
    name = base
    j = 1
    while name in taken:
        name = f"{base}{sep}{j}"
        j += 1
    return name


def split_functor(r, fresh_wire, merged_id=None):
    """Undo a vertex splitting on representations.

    The fresh wire must carry dimension 1; its two endpoint tensors merge
    into the tensor product with the unit index collapsed, all other data
    untouched.  Inverse (up to scale) of splitting a representation.
    """
    d = r.diagram
    w = d.wire(fresh_wire)
    if r.dims[fresh_wire] != 1:
        raise RestrictedDimViolation(
            f"wire {fresh_wire} has dimension {r.dims[fresh_wire]}, need 1")
    v1, v2 = w.tail, w.head
    if v1 is None or v2 is None or v1 == v2:
        raise RestrictedDimViolation(
            f"wire {fresh_wire} must join two distinct vertices")
    taken = set(d.vertices) - {v1, v2}
    merged = merged_id if merged_id is not None else _merged_name(v1, v2, taken)
    if merged in taken:
        raise RestrictedDimViolation(f"merged vertex id {merged} taken")
    wires = []
    for x in d.wires:
        if x.id == fresh_wire:
            continue
        tail = merged if x.tail in (v1, v2) else x.tail
        head = merged if x.head in (v1, v2) else x.head
        wires.append(Wire(x.id, tail, head))
    dd = TensorDiagram(tuple(sorted(taken | {merged})), tuple(sorted(wires)))
    dims = {x.id: r.dims[x.id] for x in wires}

    nb1 = neighborhood(d, v1)
    nb2 = neighborhood(d, v2)
    m1, m2 = r.tensors[v1], r.tensors[v2]
    side1 = {(x, "out") for x in nb1.outgoing} | {(x, "in") for x in nb1.incoming}
    nbm = neighborhood(dd, merged)
    rds = [dims[x] for x in nbm.outgoing]
    cds = [dims[x] for x in nbm.incoming]
    new_keys = ([(x, "out") for x in nbm.outgoing]
                + [(x, "in") for x in nbm.incoming])
    d1r = [r.dims[x] for x in nb1.outgoing]
    d1c = [r.dims[x] for x in nb1.incoming]
    d2r = [r.dims[x] for x in nb2.outgoing]
    d2c = [r.dims[x] for x in nb2.incoming]
    pos1r = {x: i for i, x in enumerate(nb1.outgoing)}
    pos1c = {x: i for i, x in enumerate(nb1.incoming)}
    pos2r = {x: i for i, x in enumerate(nb2.outgoing)}
    pos2c = {x: i for i, x in enumerate(nb2.incoming)}
    rows, cols = _prod(rds), _prod(cds)
    data = []
    for row in range(rows):
        ridx = _dec(row, rds)
        out_row = []
        for col in range(cols):
            cidx = _dec(col, cds)
            i1r = [0] * len(d1r)
            i1c = [0] * len(d1c)
            i2r = [0] * len(d2r)
            i2c = [0] * len(d2c)
            for key, val in zip(new_keys, list(ridx) + list(cidx)):
                x, side = key
                if key in side1:
                    if side == "out":
                        i1r[pos1r[x]] = val
                    else:
                        i1c[pos1c[x]] = val
                elif side == "out":
                    i2r[pos2r[x]] = val
                else:
                    i2c[pos2c[x]] = val
            # the fresh-wire index is pinned to 0 on both halves
            a = m1.data[_enc(i1r, d1r)][_enc(i1c, d1c)]
            b = m2.data[_enc(i2r, d2r)][_enc(i2c, d2c)]
            out_row.append(a * b)
        data.append(tuple(out_row))
    tensors = {merged: Matrix(rows, cols, tuple(data))}
    for v in dd.vertices:
        if v != merged:
            tensors[v] = r.tensors[v]
    return Representation(dd, dims, tensors)
