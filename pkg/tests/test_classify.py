import pytest

from tdr.classify import classify_diagram, find_forbidden_witness
from tdr.errors import NotNormalized
from tdr.semigraph import validate_diagram


def diag(vertices, wires):
    return validate_diagram({
        "vertices": vertices,
        "wires": [{"id": i, "tail": t, "head": h} for i, t, h in wires]})


def the_class(d):
    comps = classify_diagram(d)
    assert len(comps) == 1
    return comps[0][1]


def test_finite_families():
    a0 = diag(["v1"], [("e1", None, "v1"), ("e2", "v1", None)])
    c = the_class(a0)
    assert (c.kind, c.family, c.n) == ("finite", "A0", 1)
    a03 = diag(["v1", "v2", "v3"],
               [("e1", None, "v1"), ("e2", "v1", "v2"),
                ("e3", "v2", "v3"), ("e4", "v3", None)])
    c = the_class(a03)
    assert (c.kind, c.family, c.n) == ("finite", "A0", 3)
    a1 = diag(["v1", "v2"], [("e1", None, "v1"), ("e2", "v1", "v2")])
    c = the_class(a1)
    assert (c.kind, c.family, c.n) == ("finite", "A1", 2)
    assert c.witness is None


def test_tame_families():
    p1 = diag(["v1"], [])
    c = the_class(p1)
    assert (c.kind, c.family, c.n) == ("tame", "P", 1)
    p3 = diag(["v1", "v2", "v3"],
              [("e1", "v1", "v2"), ("e2", "v2", "v3")])
    c = the_class(p3)
    assert (c.kind, c.family, c.n) == ("tame", "P", 3)
    j1 = diag(["v1"], [("e1", "v1", "v1")])
    c = the_class(j1)
    assert (c.kind, c.family, c.n) == ("tame", "J", 1)
    j3 = diag(["v1", "v2", "v3"],
              [("e1", "v1", "v2"), ("e2", "v2", "v3"), ("e3", "v3", "v1")])
    c = the_class(j3)
    assert (c.kind, c.family, c.n) == ("tame", "J", 3)


def test_orientation_does_not_matter():
    # reversing wires never changes the class
    j3a = diag(["v1", "v2", "v3"],
               [("e1", "v1", "v2"), ("e2", "v3", "v2"), ("e3", "v3", "v1")])
    c = the_class(j3a)
    assert (c.kind, c.family, c.n) == ("tame", "J", 3)
    a1r = diag(["v1", "v2"], [("e1", "v1", None), ("e2", "v2", "v1")])
    c = the_class(a1r)
    assert (c.kind, c.family, c.n) == ("finite", "A1", 2)


def test_wild_witnesses():
    claw = diag(["v1"], [("e1", None, "v1"), ("e2", None, "v1"),
                         ("e3", "v1", None)])
    c = the_class(claw)
    assert c.kind == "wild" and c.family is None
    assert c.witness.kind == "open-claw"
    assert c.witness.vertex == "v1"
    assert len(c.witness.wires) == 3

    needle = diag(["v1"], [("e1", "v1", "v1"), ("e2", "v1", None)])
    c = the_class(needle)
    assert c.witness.kind == "needle"
    assert set(c.witness.wires) == {"e1", "e2"}

    eight = diag(["v1"], [("e1", "v1", "v1"), ("e2", "v1", "v1")])
    c = the_class(eight)
    assert c.witness.kind == "figure-eight"

    # loop counts twice: loop + one incident wire is already wild
    needle2 = diag(["v1", "v2"], [("e1", "v1", "v1"), ("e2", "v1", "v2")])
    c = the_class(needle2)
    assert c.kind == "wild" and c.witness.kind == "needle"


def test_branch_vertex_is_wild():
    star = diag(["v1", "v2", "v3", "v4"],
                [("e1", "v1", "v2"), ("e2", "v1", "v3"), ("e3", "v1", "v4")])
    c = the_class(star)
    assert c.kind == "wild"
    assert c.witness.kind == "open-claw"
    assert find_forbidden_witness(star) is not None


def test_witness_absent_on_non_wild():
    p2 = diag(["v1", "v2"], [("e1", "v1", "v2")])
    assert find_forbidden_witness(p2) is None


def test_multi_component():
    d = diag(["v1", "v2", "v3"],
             [("e1", "v1", "v1"), ("e2", "v2", "v3")])
    comps = classify_diagram(d)
    assert len(comps) == 2
    kinds = {tuple(ref.vertices): cls.kind for ref, cls in comps}
    assert kinds == {("v1",): "tame", ("v2", "v3"): "tame"}


def test_rejects_endpointless_wires():
    d = validate_diagram({"vertices": ["v1"], "wires": [
        {"id": "e1", "tail": None, "head": None}]})
    with pytest.raises(NotNormalized):
        classify_diagram(d)
