"""Explicit wildness embeddings.

A pair of n x n matrices is packed into a pair of 6n x 6n matrices
(Y1, Y2) whose simultaneous similarity is equivalent to simultaneous
similarity of the original pair, but whose rank profile (rank Y1 = 4n,
rank of nonzero pencil combinations 5n) forces any isomorphism of the
derived loop representations to respect the packing.  The pair is then
carried onto the needle (loop + dangling wire of dimension 2) or the
figure eight (two loops) as a single vertex tensor.

Similarity witnesses translate to exact representation isomorphisms:
the loop factor acts by I_6 (x) P, the dimension-2 wire by the identity.
"""

import random
from typing import NamedTuple

from .errors import NotASimilarity, ShapeMismatch
from .exactalg import Matrix, det, inverse, nullspace
from .rational import ONE, Q, ZERO
from .representation import Representation
from .semigraph import TensorDiagram, Wire


class MatrixPair(NamedTuple):
    a: Matrix
    b: Matrix


def _check_pair(p):
    if p.a.rows != p.a.cols or p.b.rows != p.b.cols or p.a.rows != p.b.rows:
        raise ShapeMismatch("pair must be two square matrices of equal size")
    return p.a.rows


def _place(grid, r0, c0, m):
    for i in range(m.rows):
        for j in range(m.cols):
            grid[r0 + i][c0 + j] = m.data[i][j]


def build_Y_pair(p):
    """(Y1, Y2) = (X1 + C1, X2 + C2(A, B)) as 6n x 6n direct sums.

    X1 = diag(I_n, 0), X2 = diag(0, I_n); C1 carries identity blocks on
    the first block subdiagonal; C2 carries A at block (3,1) and B at
    block (4,2).  rank(Y1) = 4n always.
    """
    n = _check_pair(p)
    size = 6 * n
    y1 = [[ZERO] * size for _ in range(size)]
    y2 = [[ZERO] * size for _ in range(size)]
    eye = Matrix.identity(n)
    _place(y1, 0, 0, eye)                  # X1
    _place(y2, n, n, eye)                  # X2
    for k in range(3):                     # C1 subdiagonal, blocks (k+2, k+1)
        _place(y1, 2 * n + (k + 1) * n, 2 * n + k * n, eye)
    _place(y2, 2 * n + 2 * n, 2 * n, p.a)  # C2 block (3,1)
    _place(y2, 2 * n + 3 * n, 2 * n + n, p.b)   # C2 block (4,2)
    to_m = lambda g: Matrix(size, size, tuple(tuple(r) for r in g))
    return to_m(y1), to_m(y2)


def needle_diagram():
    return TensorDiagram(("v1",), (Wire("e1", "v1", "v1"),
                                   Wire("e2", "v1", None)))


def eight_diagram():
    return TensorDiagram(("v1",), (Wire("e1", "v1", "v1"),
                                   Wire("e2", "v1", "v1")))


def needle_rep_from_pair(p):
    """Needle representation Y1 (x) u1 + Y2 (x) u2, dims (6n, 2)."""
    y1, y2 = build_Y_pair(p)
    u1 = Matrix.column([ONE, ZERO])
    u2 = Matrix.column([ZERO, ONE])
    tensor = y1.kron(u1) + y2.kron(u2)
    d = needle_diagram()
    return Representation(d, {"e1": y1.rows, "e2": 2}, {"v1": tensor})


def eight_rep_from_pair(p):
    """Figure-eight representation Y1 (x) E11 + Y2 (x) E12, dims (6n, 2)."""
    y1, y2 = build_Y_pair(p)
    e11 = Matrix.from_rows([[1, 0], [0, 0]])
    e12 = Matrix.from_rows([[0, 1], [0, 0]])
    tensor = y1.kron(e11) + y2.kron(e12)
    d = eight_diagram()
    return Representation(d, {"e1": y1.rows, "e2": 2}, {"v1": tensor})


def eight_tuple(rep):
    """Unpack a figure-eight vertex into (M_11, M_12, M_21, M_22).

    The vertex tensor is sum_k M_k (x) E_k over the four elementary
    matrices of the dimension-2 loop, enumerated row-major.
    """
    m = rep.tensors["v1"]
    d1 = rep.dims["e1"]
    out = []
    for i in range(2):
        for j in range(2):
            rows = tuple(tuple(m.data[a * 2 + i][b * 2 + j]
                               for b in range(d1)) for a in range(d1))
            out.append(Matrix(d1, d1, rows))
    return tuple(out)


def mix_tuple(mats, g):
    """Mixing action of GL(2) on a packed 4-tuple: M'_k = sum_j h[k,j] M_j.

    h = g (x) (g^{-1})^T is exactly the change the dimension-2 loop factor
    induces on the elementary-matrix coordinates under conjugation by g.
    """
    h = g.kron(inverse(g).transpose())
    out = []
    for k in range(4):
        acc = Matrix.zeros(mats[0].rows, mats[0].cols)
        for j in range(4):
            acc = acc + mats[j].scale(h.data[k][j])
        out.append(acc)
    return tuple(out)


def iso_from_similarity(p, pair1, pair2):
    """Group element sending the needle rep of pair1 to that of pair2.

    Requires the exact intertwining P A1 = A2 P and P B1 = B2 P with P
    invertible; the loop factor is the block-diagonal I_6 (x) P.
    """
    n = _check_pair(pair1)
    if _check_pair(pair2) != n or p.rows != n or p.cols != n:
        raise NotASimilarity("witness size does not match the pairs")
    if p.rows and det(p) == ZERO:
        raise NotASimilarity("witness is singular")
    if p @ pair1.a != pair2.a @ p or p @ pair1.b != pair2.b @ p:
        raise NotASimilarity("witness does not intertwine the pairs")
    return {"e1": Matrix.identity(6).kron(p), "e2": Matrix.identity(2)}


def sim_similarity_solve(pair1, pair2, tries=40):
    """Search for invertible P with P A1 = A2 P and P B1 = B2 P.

    Solves the linear intertwining system exactly, then looks for an
    invertible point: each basis element first, then seeded random
    small-integer combinations.  Returns None when the space holds no
    invertible element after the bounded search.
    """
    n = _check_pair(pair1)
    if _check_pair(pair2) != n:
        raise ShapeMismatch("pairs must have equal sizes")
    rows = []
    for lhs, rhs in ((pair1.a, pair2.a), (pair1.b, pair2.b)):
        for i in range(n):
            for j in range(n):
                row = [ZERO] * (n * n)
                for k in range(n):
                    row[i * n + k] += lhs.data[k][j]
                    row[k * n + j] -= rhs.data[i][k]
                rows.append(row)
    system = Matrix(len(rows), n * n, tuple(tuple(r) for r in rows))
    basis = nullspace(system)

    def unvec(col):
        return Matrix(n, n, tuple(tuple(col[i * n + j] for j in range(n))
                                  for i in range(n)))

    cands = [unvec([basis.data[i][j] for i in range(n * n)])
             for j in range(basis.cols)]
    for p in cands:
        if det(p) != ZERO:
            return p
    rng = random.Random(0x5EED)
    for _ in range(tries):
        coeffs = [Q(rng.randrange(-4, 5)) for _ in cands]
        p = Matrix.zeros(n, n)
        for c, m in zip(coeffs, cands):
            p = p + m.scale(c)
        if det(p) != ZERO:
            return p
    return None
