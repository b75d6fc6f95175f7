import random

import pytest

from tdr.classify import classify_diagram
from tdr.errors import NotASimilarity, ShapeMismatch
from tdr.exactalg import Matrix, det, inverse, rank
from tdr.rational import Q
from tdr.representation import apply_group_element
from tdr.wildness import (
    MatrixPair,
    build_Y_pair,
    eight_diagram,
    eight_rep_from_pair,
    eight_tuple,
    iso_from_similarity,
    mix_tuple,
    needle_diagram,
    needle_rep_from_pair,
    sim_similarity_solve,
)


def rand_matrix(rng, n):
    return Matrix.from_rows(
        [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])


def rand_invertible(rng, n):
    while True:
        m = rand_matrix(rng, n)
        if det(m) != 0:
            return m


def test_pair_validation():
    with pytest.raises(ShapeMismatch):
        build_Y_pair(MatrixPair(Matrix.identity(2), Matrix.identity(3)))
    with pytest.raises(ShapeMismatch):
        build_Y_pair(MatrixPair(Matrix.zeros(2, 3), Matrix.zeros(2, 3)))


def test_y_pair_layout_n1():
    a, b = Q(5), Q(7)
    y1, y2 = build_Y_pair(MatrixPair(Matrix.from_rows([[a]]),
                                     Matrix.from_rows([[b]])))
    assert y1.rows == y1.cols == 6
    ones = {(i, j) for i in range(6) for j in range(6) if y1.data[i][j] != 0}
    assert ones == {(0, 0), (3, 2), (4, 3), (5, 4)}
    assert all(y1.data[i][j] == 1 for i, j in ones)
    nz2 = {(i, j): y2.data[i][j]
           for i in range(6) for j in range(6) if y2.data[i][j] != 0}
    assert nz2 == {(1, 1): Q(1), (4, 2): a, (5, 3): b}


def test_y_pair_ranks():
    rng = random.Random(61)
    for n in (1, 2, 3):
        a = rand_matrix(rng, n)
        b = rand_matrix(rng, n)
        y1, y2 = build_Y_pair(MatrixPair(a, b))
        assert y1.rows == 6 * n
        assert rank(y1) == 4 * n
        assert rank(y2) == n + rank(a) + rank(b)


def test_pencil_rank_generic():
    rng = random.Random(67)
    for n in (1, 2):
        p = MatrixPair(rand_invertible(rng, n), rand_invertible(rng, n))
        y1, y2 = build_Y_pair(p)
        for aa, bb in ((1, 1), (2, 3), (-1, 5)):
            assert rank(y1.scale(Q(aa)) + y2.scale(Q(bb))) == 5 * n


def test_diagram_shapes_are_wild():
    nd = needle_diagram()
    cls = classify_diagram(nd)[0][1]
    assert cls.kind == "wild" and cls.witness.kind == "needle"
    ed = eight_diagram()
    cls = classify_diagram(ed)[0][1]
    assert cls.kind == "wild" and cls.witness.kind == "figure-eight"


def test_needle_rep_shape():
    p = MatrixPair(Matrix.from_rows([[2]]), Matrix.from_rows([[3]]))
    r = needle_rep_from_pair(p)
    assert r.dims == {"e1": 6, "e2": 2}
    assert r.tensors["v1"].rows == 12 and r.tensors["v1"].cols == 6
    y1, y2 = build_Y_pair(p)
    # loop slot slowest: row block i of the stacking is Y1 row i with Y2 row i
    t = r.tensors["v1"]
    for i in range(6):
        for j in range(6):
            assert t.data[2 * i][j] == y1.data[i][j]
            assert t.data[2 * i + 1][j] == y2.data[i][j]


def test_iso_from_similarity_intertwines():
    rng = random.Random(71)
    for n in (1, 2):
        a, b = rand_matrix(rng, n), rand_matrix(rng, n)
        g0 = rand_invertible(rng, n)
        pair1 = MatrixPair(a, b)
        pair2 = MatrixPair(g0 @ a @ inverse(g0), g0 @ b @ inverse(g0))
        g = iso_from_similarity(g0, pair1, pair2)
        r1 = needle_rep_from_pair(pair1)
        r2 = needle_rep_from_pair(pair2)
        assert apply_group_element(g, r1) == r2


def test_iso_from_similarity_rejects_junk():
    p = MatrixPair(Matrix.from_rows([[2]]), Matrix.from_rows([[3]]))
    q = MatrixPair(Matrix.from_rows([[2]]), Matrix.from_rows([[4]]))
    with pytest.raises(NotASimilarity):
        iso_from_similarity(Matrix.from_rows([[1]]), p, q)
    with pytest.raises(NotASimilarity):
        iso_from_similarity(Matrix.zeros(1, 1), p, p)
    with pytest.raises(NotASimilarity):
        iso_from_similarity(Matrix.identity(2), p, p)


def test_sim_similarity_solve():
    rng = random.Random(73)
    # self similarity always solvable
    p = MatrixPair(rand_matrix(rng, 2), rand_matrix(rng, 2))
    sol = sim_similarity_solve(p, p)
    assert sol is not None and det(sol) != 0
    assert sol @ p.a == p.a @ sol and sol @ p.b == p.b @ sol
    # conjugated pairs are recovered
    g0 = rand_invertible(rng, 2)
    q = MatrixPair(g0 @ p.a @ inverse(g0), g0 @ p.b @ inverse(g0))
    sol = sim_similarity_solve(p, q)
    assert sol is not None
    assert sol @ p.a == q.a @ sol and sol @ p.b == q.b @ sol
    # trace obstruction
    none = sim_similarity_solve(
        MatrixPair(Matrix.from_rows([[0]]), Matrix.from_rows([[0]])),
        MatrixPair(Matrix.from_rows([[1]]), Matrix.from_rows([[0]])))
    assert none is None


def test_eight_tuple_unpacks_row_major():
    d = eight_diagram()
    from tdr.representation import validate_representation
    r = validate_representation(
        d, {"e1": 1, "e2": 2},
        {"v1": Matrix.from_rows([[1, 2], [3, 4]])})
    assert [m.data[0][0] for m in eight_tuple(r)] == [1, 2, 3, 4]


def test_mix_tuple_matches_conjugation():
    rng = random.Random(79)
    p = MatrixPair(rand_matrix(rng, 1), rand_matrix(rng, 1))
    r = eight_rep_from_pair(p)
    mats = eight_tuple(r)
    for _ in range(5):
        g = rand_invertible(rng, 2)
        mixed = mix_tuple(mats, g)
        conj = apply_group_element({"e1": Matrix.identity(6), "e2": g}, r)
        assert list(mixed) == list(eight_tuple(conj))
