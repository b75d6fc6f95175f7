"""Seeded random representations with reproducible answer keys.

The stream is the standard splitmix64 step, fixed so that fixtures and
answer keys reproduce bit-for-bit across runs and implementations.
Rational entries have numerators in [-9, 9] and denominators in [1, 9].

Generic mode fills every vertex tensor entry from the stream, row-major
over vertices in canonical order.  Sum mode treats the requested dims as
per-wire caps: it draws indecomposable descriptors while they fit under
the caps (at most one block may cover the pinned position of a closed or
half-open path), realizes their direct sum on the given diagram, and
conjugates by a random exact-invertible group element per wire.  The
drawn multiset is returned as the answer key, so decompose(rep) == key.
"""

from typing import NamedTuple

from .classify import classify_diagram
from .decompose import (
    Band,
    Interval,
    StringBlock,
    _collect,
    _string_grade_dims,
    _traverse,
    canonical_diagram,
    realize,
)
from .errors import InvalidDims, NotConnected, NotDecomposable
from .exactalg import Matrix, Poly, det, factor_poly
from .rational import ONE, Q
from .representation import (
    Representation,
    apply_group_element,
    direct_sum,
    reverse_wire_rep,
    vertex_shape,
)
from .semigraph import TensorDiagram, Wire, validate_diagram


class SplitMix64:
    """splitmix64: state += golden gamma; output = mixed state."""

    MASK = (1 << 64) - 1

    def __init__(self, seed):
        self.state = seed & self.MASK

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def below(self, n):
        return self.next_u64() % n


def _rand_rational(rng):
    num = rng.below(19) - 9
    den = 1 + rng.below(9)
    return Q(num, den)


def _nonzero_rational(rng):
    num = rng.below(18) - 9
    if num >= 0:
        num += 1
    den = 1 + rng.below(9)
    return Q(num, den)


def _rand_matrix(rng, rows, cols):
    return Matrix(rows, cols, tuple(
        tuple(_rand_rational(rng) for _ in range(cols)) for _ in range(rows)))


def _rand_invertible(rng, d):
    for _ in range(20):
        m = _rand_matrix(rng, d, d)
        if det(m) != 0:
            return m
    # unit upper-triangular fallback, invertible by construction
    rows = []
    for i in range(d):
        rows.append([ONE if i == j else
                     (_rand_rational(rng) if j > i else Q(0))
                     for j in range(d)])
    return Matrix(d, d, tuple(tuple(r) for r in rows))


def _rand_irreducible(rng, deg):
    for _ in range(8):
        coeffs = ([_nonzero_rational(rng)]
                  + [_rand_rational(rng) for _ in range(deg - 1)] + [ONE])
        p = Poly(tuple(coeffs))
        if factor_poly(p) == [(p, 1)]:
            return p
    return Poly((_nonzero_rational(rng), ONE))


class GenResult(NamedTuple):
    rep: Representation
    key: object   # Decomposition in sum mode, None in generic mode


def _check_dims(d, dims):
    ids = {w.id for w in d.wires}
    for wid in ids:
        if wid not in dims:
            raise InvalidDims(f"missing dim for wire {wid}")
        v = dims[wid]
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise InvalidDims(f"bad dim for wire {wid}: {v!r}")
    for wid in dims:
        if wid not in ids:
            raise InvalidDims(f"dim for unknown wire {wid}")


def _generic(d, dims, rng):
    tensors = {}
    for v in d.vertices:
        rows, cols = vertex_shape(d, dims, v)
        tensors[v] = _rand_matrix(rng, rows, cols)
    return Representation(d, dict(dims), tensors)


def _desc_dims(desc, m):
    if isinstance(desc, Interval):
        return [1 if desc.a <= p <= desc.b else 0 for p in range(1, m + 1)]
    if isinstance(desc, Band):
        k = desc.poly.degree() * desc.power
        return [k] * m
    return _string_grade_dims(desc, m)


def _draw_desc(family, n, m, rng):
    if family in ("A0", "A1"):
        a = 1 + rng.below(m)
        b = a + rng.below(m - a + 1)
        if family == "A1" and (a, b) == (m, m):
            return None
        return Interval(a, b)
    if family == "P":
        if rng.below(2):
            return Band(Poly((-_nonzero_rational(rng), ONE)), 1)
        desc = StringBlock(1 + rng.below(n), 1 + rng.below(max(2 * n - 1, 1)))
        if desc == StringBlock(n, 1):
            return None
        if _string_grade_dims(desc, n)[n - 1] > 1:
            return None
        return desc
    if rng.below(2):
        deg = 1 + rng.below(3)
        power = 1 + rng.below(3)
        return Band(_rand_irreducible(rng, deg), power)
    return StringBlock(1 + rng.below(n), 1 + rng.below(2 * n))


def _zero_block_rep(family, n):
    d = canonical_diagram(family, n)
    dims = {w.id: 0 for w in d.wires}
    tensors = {}
    for v in d.vertices:
        rows, cols = vertex_shape(d, dims, v)
        tensors[v] = Matrix.zeros(rows, cols)
    return Representation(d, dims, tensors)


def _sum_mode(d, dims, rng):
    comps = classify_diagram(d)
    if len(comps) != 1:
        raise NotConnected(f"{len(comps)} components")
    _, cls = comps[0]
    if cls.kind == "wild":
        raise NotDecomposable(f"wild component ({cls.witness.kind})")
    family, n = cls.family, cls.n
    wires, verts, wanted = _traverse(d, family)
    caps = [dims[w.id] for w in wires]
    if family in ("A1", "P"):
        caps.append(1)
    m = len(caps)

    remaining = caps[:]
    blocks = []
    misses = 0
    while misses < 24:
        desc = _draw_desc(family, n, m, rng)
        need = _desc_dims(desc, m) if desc is not None else None
        if desc is not None and all(x <= r for x, r in zip(need, remaining)):
            blocks.append(desc)
            remaining = [r - x for r, x in zip(remaining, need)]
            misses = 0
        else:
            misses += 1

    rep = None
    for desc in blocks:
        block = realize(family, n, desc)
        rep = block if rep is None else direct_sum(rep, block)
    if rep is None:
        rep = _zero_block_rep(family, n)

    # carry the canonical rep onto the input diagram (traversal order)
    cd = canonical_diagram(family, n)
    cwires, cverts, _ = _traverse(cd, family)
    wire_map = {cw.id: w.id for cw, w in zip(cwires, wires)}
    vert_map = dict(zip(cverts, verts))
    norm_wires = tuple(sorted(Wire(wid, tail, head)
                              for wid, tail, head in wanted))
    d_norm = TensorDiagram(d.vertices, norm_wires)
    rep = Representation(
        d_norm,
        {wire_map[wid]: dim for wid, dim in rep.dims.items()},
        {vert_map[v]: mat for v, mat in rep.tensors.items()})

    gs = {wid: _rand_invertible(rng, rep.dims[wid])
          for wid in sorted(rep.dims)}
    rep = apply_group_element(gs, rep)

    for w in sorted(d.wires):
        norm = d_norm.wire(w.id)
        if (norm.tail, norm.head) != (w.tail, w.head):
            rep = reverse_wire_rep(rep, w.id)
    return rep, _collect(blocks)


def gen_random(diagram, dims, seed, mode="generic"):
    """Deterministic random representation; (rep, key) with key in sum mode."""
    d = validate_diagram(diagram)
    _check_dims(d, dims)
    rng = SplitMix64(seed)
    if mode == "generic":
        return GenResult(_generic(d, dims, rng), None)
    if mode in ("sum", "sum-of-indecomposables"):
        rep, key = _sum_mode(d, dims, rng)
        return GenResult(rep, key)
    raise InvalidDims(f"unknown mode {mode!r}")
