import json

import pytest

from tdr.cli import run

DIAGRAM = {
    "vertices": ["v1", "v2"],
    "wires": [
        {"id": "e1", "tail": None, "head": "v1"},
        {"id": "e2", "tail": "v1", "head": "v2"},
        {"id": "e3", "tail": "v2", "head": None},
    ],
}
REP = {
    "diagram": DIAGRAM,
    "dims": {"e1": 1, "e2": 1, "e3": 0},
    "vertices": {
        "v1": {"rows": 1, "cols": 1, "entries": [["1"]]},
        "v2": {"rows": 0, "cols": 1, "entries": []},
    },
}
WILD = {
    "vertices": ["v1"],
    "wires": [
        {"id": "e1", "tail": "v1", "head": "v1"},
        {"id": "e2", "tail": "v1", "head": None},
    ],
}
J1_REP = {
    "diagram": {"vertices": ["v1"],
                "wires": [{"id": "e1", "tail": "v1", "head": "v1"}]},
    "dims": {"e1": 2},
    "vertices": {"v1": {"rows": 2, "cols": 2,
                        "entries": [["1", "2"], ["3", "4"]]}},
}


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_classify_command(tmp_path, capsys):
    path = write(tmp_path, "d.json", DIAGRAM)
    report = run(["classify", path])
    assert report.exit_code == 0
    assert report.command == "classify"
    assert path in report.input_digests
    out = json.loads(capsys.readouterr().out)
    assert out["components"][0]["class"] == "finite"
    assert out["components"][0]["family"] == "A0"
    assert out["components"][0]["n"] == 2


def test_classify_reports_witness(tmp_path, capsys):
    path = write(tmp_path, "w.json", WILD)
    assert run(["classify", path]).exit_code == 0
    out = json.loads(capsys.readouterr().out)
    comp = out["components"][0]
    assert comp["class"] == "wild"
    assert comp["witness"]["kind"] == "needle"


def test_decompose_command(tmp_path, capsys):
    path = write(tmp_path, "r.json", REP)
    assert run(["decompose", path]).exit_code == 0
    out = json.loads(capsys.readouterr().out)
    assert out == [{"type": "interval", "a": 1, "b": 2, "mult": 1}]


def test_decompose_reports_band_fields(tmp_path, capsys):
    path = write(tmp_path, "j1.json", J1_REP)
    assert run(["decompose", path]).exit_code == 0
    out = json.loads(capsys.readouterr().out)
    kinds = {e["type"] for e in out}
    assert kinds <= {"band", "string"}
    for e in out:
        if e["type"] == "band":
            assert e["field"] == "Q"
            assert isinstance(e["poly"], list) and e["power"] >= 1


def test_decompose_alias_on_closed_path(tmp_path, capsys):
    rep = {
        "diagram": {"vertices": ["v1", "v2"],
                    "wires": [{"id": "e1", "tail": "v1", "head": "v2"}]},
        "dims": {"e1": 1},
        "vertices": {"v1": {"rows": 1, "cols": 1, "entries": [["2"]]},
                     "v2": {"rows": 1, "cols": 1, "entries": [["1"]]}},
    }
    path = write(tmp_path, "p2.json", rep)
    assert run(["decompose", path]).exit_code == 0
    out = json.loads(capsys.readouterr().out)
    assert out[0]["alias"] == "V(2)"


def test_wild_exit_code_2(tmp_path, capsys):
    rep = {
        "diagram": WILD,
        "dims": {"e1": 1, "e2": 1},
        "vertices": {"v1": {"rows": 1, "cols": 1, "entries": [["1"]]}},
    }
    path = write(tmp_path, "wr.json", rep)
    assert run(["decompose", path]).exit_code == 2
    assert json.loads(capsys.readouterr().out) == {"error": "wild"}
    assert run(["isotest", path, path]).exit_code == 2
    assert json.loads(capsys.readouterr().out) == {"error": "wild"}


def test_isotest_command(tmp_path, capsys):
    p1 = write(tmp_path, "r1.json", J1_REP)
    conj = {
        "diagram": J1_REP["diagram"],
        "dims": {"e1": 2},
        # same matrix conjugated by [[1,1],[0,1]]
        "vertices": {"v1": {"rows": 2, "cols": 2,
                            "entries": [["4", "2"], ["3", "1"]]}},
    }
    p2 = write(tmp_path, "r2.json", conj)
    assert run(["isotest", p1, p2]).exit_code == 0
    assert json.loads(capsys.readouterr().out) == {"isomorphic": True}
    other = dict(conj, vertices={"v1": {"rows": 2, "cols": 2,
                                        "entries": [["1", "0"], ["0", "1"]]}})
    p3 = write(tmp_path, "r3.json", other)
    assert run(["isotest", p1, p3]).exit_code == 0
    assert json.loads(capsys.readouterr().out) == {"isomorphic": False}


def test_contract_command(tmp_path, capsys):
    path = write(tmp_path, "j1.json", J1_REP)
    assert run(["contract", path]).exit_code == 0
    assert json.loads(capsys.readouterr().out) == {"value": "5"}


def test_flow_extend_command(tmp_path, capsys):
    d = {"vertices": ["v1", "v2", "v3"],
         "wires": [{"id": "e1", "tail": "v1", "head": "v2"},
                   {"id": "e2", "tail": "v2", "head": "v3"},
                   {"id": "e3", "tail": "v3", "head": "v1"}]}
    dp = write(tmp_path, "d.json", d)
    fp = write(tmp_path, "f.json",
               {"wires": {"e2": [5.0, 0.0], "e3": [5.0, 0.0]},
                "u": ["v1", "v2"]})
    assert run(["flow-extend", dp, fp]).exit_code == 0
    out = json.loads(capsys.readouterr().out)
    assert abs(out["wires"]["e1"][0] - 5.0) < 1e-9
    assert out["wires"]["e2"] == [5.0, 0.0]


def test_gen_random_command(tmp_path, capsys):
    dp = write(tmp_path, "d.json", DIAGRAM)
    args = ["gen-random", dp, "--dims",
            '{"e1": 2, "e2": 2, "e3": 1}', "--seed", "9"]
    assert run(args).exit_code == 0
    first = capsys.readouterr().out
    assert run(args).exit_code == 0
    assert capsys.readouterr().out == first  # byte reproducible
    rep = json.loads(first)
    assert rep["dims"] == {"e1": 2, "e2": 2, "e3": 1}


def test_gen_random_sum_with_key(tmp_path, capsys):
    dp = write(tmp_path, "d.json", DIAGRAM)
    key_path = tmp_path / "key.json"
    out_path = tmp_path / "rep.json"
    args = ["gen-random", dp, "--dims", '{"e1": 3, "e2": 3, "e3": 3}',
            "--seed", "4", "--mode", "sum",
            "--key-out", str(key_path), "--out", str(out_path)]
    assert run(args).exit_code == 0
    assert capsys.readouterr().out == ""
    key = json.loads(key_path.read_text())
    assert all(e["type"] == "interval" for e in key)
    # the produced rep decomposes to the emitted key
    assert run(["decompose", str(out_path)]).exit_code == 0
    assert json.loads(capsys.readouterr().out) == key


def test_fmt_idempotent(tmp_path, capsys):
    rp = write(tmp_path, "r.json", REP)
    assert run(["fmt", rp]).exit_code == 0
    once = capsys.readouterr().out
    rp2 = tmp_path / "canon.json"
    rp2.write_text(once)
    assert run(["fmt", str(rp2)]).exit_code == 0
    assert capsys.readouterr().out == once
    dp = write(tmp_path, "d.json", DIAGRAM)
    assert run(["fmt", dp]).exit_code == 0
    canon = capsys.readouterr().out
    assert json.loads(canon)["vertices"] == ["v1", "v2"]


def test_fmt_rejects_zero_denominator(tmp_path, capsys):
    bad = {
        "diagram": DIAGRAM,
        "dims": {"e1": 1, "e2": 1, "e3": 0},
        "vertices": {"v1": {"rows": 1, "cols": 1, "entries": [["1/0"]]},
                     "v2": {"rows": 0, "cols": 1, "entries": []}},
    }
    path = write(tmp_path, "bad.json", bad)
    report = run(["fmt", path])
    assert report.exit_code == 1
    assert capsys.readouterr().err.startswith("error:")


def test_rep_diagram_by_path(tmp_path, capsys):
    dp = write(tmp_path, "d.json", DIAGRAM)
    rep = dict(REP, diagram="d.json")
    rp = write(tmp_path, "r.json", rep)
    assert run(["decompose", rp]).exit_code == 0
    out = json.loads(capsys.readouterr().out)
    assert out[0]["type"] == "interval"


def test_wild_embed_command(tmp_path, capsys):
    pairs = {"A1": [["2"]], "B1": [["3"]], "A2": [["2"]], "B2": [["3"]]}
    pp = write(tmp_path, "pairs.json", pairs)
    outdir = tmp_path / "embedded"  # does not exist yet; command creates it
    report = run(["wild-embed", pp, "--out", str(outdir)])
    assert report.exit_code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["witness"]["verified"] is True
    needle = json.loads((outdir / "needle1.json").read_text())
    assert needle["dims"] == {"e1": 6, "e2": 2}
    # the emitted reps are wild: decompose must refuse them
    assert run(["decompose", str(outdir / "needle1.json")]).exit_code == 2
    capsys.readouterr()


def test_wild_embed_no_witness(tmp_path, capsys):
    pairs = {"A1": [["0"]], "B1": [["0"]], "A2": [["1"]], "B2": [["0"]]}
    pp = write(tmp_path, "pairs.json", pairs)
    assert run(["wild-embed", pp, "--out", str(tmp_path)]).exit_code == 0
    assert json.loads(capsys.readouterr().out)["witness"] is None


def test_error_paths(tmp_path, capsys):
    assert run(["no-such-command"]).exit_code == 1
    capsys.readouterr()
    assert run([]).exit_code == 1
    capsys.readouterr()
    missing = str(tmp_path / "nope.json")
    assert run(["classify", missing]).exit_code == 1
    assert "error:" in capsys.readouterr().err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["classify", str(bad)]).exit_code == 1
    capsys.readouterr()
    dp = write(tmp_path, "d.json", DIAGRAM)
    assert run(["gen-random", dp, "--dims", "[1,2]"]).exit_code == 1
    capsys.readouterr()
    assert run(["gen-random", dp, "--dims", '{"e1": 1}']).exit_code == 1
    capsys.readouterr()
