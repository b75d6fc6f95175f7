"""Command line interface.

JSON is the single interchange format; rationals are strings ("p/q" or
"p") so no value ever passes through floats.  Output is canonical JSON
(sorted keys, two-space indent, trailing newline), so identical inputs
and seeds produce byte-identical output.

Exit codes: 0 ok; 1 invalid input (message on stderr); 2 for operations
that are undecidable or unsupported on wild diagrams, with
{"error": "wild"} on stdout.
"""

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass

from .classify import classify_diagram
from .decompose import Band, Interval, StringBlock, block_alias, decompose, isomorphic
from .errors import (
    NotDecidableWild,
    NotDecomposable,
    ParseError,
    TdrError,
    UnknownCommand,
)
from .exactalg import Matrix
from .flows import extend_flow
from .generate import gen_random
from .rational import format_rational, parse_rational
from .representation import apply_group_element, contract, validate_representation
from .semigraph import diagram_to_record, validate_diagram
from .wildness import (
    MatrixPair,
    iso_from_similarity,
    needle_rep_from_pair,
    sim_similarity_solve,
)


@dataclass(frozen=True)
class CommandReport:
    command: str
    input_digests: dict
    result: object
    exit_code: int


def canonical_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _digest(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from None


def _load_diagram(path):
    obj = _load_json(path)
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: diagram must be a JSON object")
    return validate_diagram(obj)


def _matrix_from_grid(grid, what):
    if not isinstance(grid, list) or any(not isinstance(r, list) for r in grid):
        raise ParseError(f"{what}: expected a list of rows")
    rows = len(grid)
    cols = len(grid[0]) if rows else 0
    if any(len(r) != cols for r in grid):
        raise ParseError(f"{what}: ragged rows")
    data = tuple(tuple(parse_rational(x) for x in row) for row in grid)
    return Matrix(rows, cols, data)


def _load_rep(path):
    obj = _load_json(path)
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: representation must be a JSON object")
    return _rep_from_record(obj, os.path.dirname(os.path.abspath(path)))


def _rep_from_record(obj, base_dir):
    for key in ("diagram", "dims", "vertices"):
        if key not in obj:
            raise ParseError(f"representation is missing {key!r}")
    diag = obj["diagram"]
    if isinstance(diag, str):
        path = diag if os.path.isabs(diag) else os.path.join(base_dir, diag)
        diag = _load_json(path)
    if not isinstance(diag, dict):
        raise ParseError("diagram must be an object or a file path")
    if not isinstance(obj["dims"], dict) or not isinstance(obj["vertices"], dict):
        raise ParseError("dims and vertices must be objects")
    tensors = {}
    for v, cell in obj["vertices"].items():
        if not isinstance(cell, dict) or not {"rows", "cols", "entries"} <= set(cell):
            raise ParseError(f"vertex {v}: need rows, cols, entries")
        rows, cols, entries = cell["rows"], cell["cols"], cell["entries"]
        m = _matrix_from_grid(entries, f"vertex {v}")
        if (m.rows, m.cols) != (rows, cols):
            # an empty grid [] carries no column count; trust the declared
            # cols as long as the declared rows really are zero
            if not (m.rows == 0 and rows == 0):
                raise ParseError(
                    f"vertex {v}: entries are {m.rows}x{m.cols}, "
                    f"declared {rows}x{cols}")
            m = Matrix.zeros(0, cols)
        tensors[v] = m
    return validate_representation(diag, obj["dims"], tensors)


def _rep_record(r):
    return {
        "diagram": diagram_to_record(r.diagram),
        "dims": dict(r.dims),
        "vertices": {
            v: {"rows": m.rows, "cols": m.cols,
                "entries": [[format_rational(x) for x in row]
                            for row in m.data]}
            for v, m in r.tensors.items()
        },
    }


def _decomposition_record(dec, family, n):
    out = []
    for desc, mult in dec.blocks:
        if isinstance(desc, Interval):
            entry = {"type": "interval", "a": desc.a, "b": desc.b, "mult": mult}
        elif isinstance(desc, Band):
            entry = {"type": "band",
                     "poly": [format_rational(c) for c in desc.poly.coeffs],
                     "power": desc.power, "mult": mult, "field": "Q"}
        else:
            entry = {"type": "string", "start": desc.start,
                     "len": desc.length, "mult": mult}
        alias = block_alias(family, n, desc)
        if alias is not None:
            entry["alias"] = alias
        out.append(entry)
    return out


def _shape_of(d):
    comps = classify_diagram(d)
    cls = comps[0][1]
    return cls.family, cls.n


# ---------------------------------------------------------------------------
# command handlers

def _cmd_classify(ns):
    d = _load_diagram(ns.diagram)
    entries = []
    for ref, cls in classify_diagram(d):
        entry = {"component": list(ref.vertices) + list(ref.wires),
                 "class": cls.kind}
        if cls.family is not None:
            entry["family"] = cls.family
            entry["n"] = cls.n
        if cls.witness is not None:
            entry["witness"] = {"kind": cls.witness.kind,
                                "vertex": cls.witness.vertex,
                                "wires": list(cls.witness.wires)}
        entries.append(entry)
    return {"components": entries}


def _cmd_decompose(ns):
    r = _load_rep(ns.rep)
    dec = decompose(r)
    family, n = _shape_of(r.diagram)
    return _decomposition_record(dec, family, n)


def _cmd_isotest(ns):
    r1 = _load_rep(ns.rep1)
    r2 = _load_rep(ns.rep2)
    return {"isomorphic": isomorphic(r1, r2)}


def _cmd_contract(ns):
    r = _load_rep(ns.rep)
    return {"value": format_rational(contract(r))}


def _cmd_flow_extend(ns):
    d = _load_diagram(ns.diagram)
    obj = _load_json(ns.flow)
    if not isinstance(obj, dict) or not isinstance(obj.get("wires"), dict):
        raise ParseError("flow file needs a \"wires\" object")
    f = {}
    for wid, pair in obj["wires"].items():
        if (not isinstance(pair, list) or len(pair) != 2
                or any(isinstance(x, bool) or not isinstance(x, (int, float))
                       for x in pair)):
            raise ParseError(f"wire {wid}: flow value must be [re, im]")
        f[wid] = complex(pair[0], pair[1])
    u = obj.get("u", [])
    if not isinstance(u, list):
        raise ParseError("\"u\" must be a list of vertex ids")
    total = extend_flow(d, f, u, tol=ns.tol)
    return {"wires": {wid: [z.real, z.imag] for wid, z in total.items()}}


def _cmd_wild_embed(ns):
    obj = _load_json(ns.pairs)
    if not isinstance(obj, dict):
        raise ParseError("pairs file must be a JSON object")
    mats = {}
    for key in ("A1", "B1", "A2", "B2"):
        if key not in obj:
            raise ParseError(f"pairs file is missing {key!r}")
        mats[key] = _matrix_from_grid(obj[key], key)
    pair1 = MatrixPair(mats["A1"], mats["B1"])
    pair2 = MatrixPair(mats["A2"], mats["B2"])
    r1 = needle_rep_from_pair(pair1)
    r2 = needle_rep_from_pair(pair2)
    outdir = ns.out or "."
    os.makedirs(outdir, exist_ok=True)
    paths = {}
    for name, rep in (("needle1", r1), ("needle2", r2)):
        path = os.path.join(outdir, f"{name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(_rep_record(rep)))
        paths[name] = path
    p = sim_similarity_solve(pair1, pair2)
    witness = None
    if p is not None:
        g = iso_from_similarity(p, pair1, pair2)
        verified = apply_group_element(g, r1) == r2
        witness = {"P": [[format_rational(x) for x in row] for row in p.data],
                   "verified": verified}
    return {"needle1": paths["needle1"], "needle2": paths["needle2"],
            "witness": witness}


def _cmd_gen_random(ns):
    d = _load_diagram(ns.diagram)
    try:
        dims = json.loads(ns.dims)
    except json.JSONDecodeError as exc:
        raise ParseError(f"--dims: invalid JSON: {exc}") from None
    if not isinstance(dims, dict):
        raise ParseError("--dims must be a JSON object")
    res = gen_random(d, dims, ns.seed, ns.mode)
    if ns.key_out and res.key is not None:
        family, n = _shape_of(d)
        with open(ns.key_out, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(_decomposition_record(res.key, family, n)))
    return _rep_record(res.rep)


def _cmd_fmt(ns):
    obj = _load_json(ns.file)
    if not isinstance(obj, dict):
        raise ParseError(f"{ns.file}: expected a JSON object")
    if "dims" in obj:
        rep = _rep_from_record(obj, os.path.dirname(os.path.abspath(ns.file)))
        return _rep_record(rep)
    return diagram_to_record(validate_diagram(obj))


# ---------------------------------------------------------------------------
# dispatch

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UnknownCommand(message)


def _build_parser():
    parser = _Parser(prog="tdr", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    def add(name, handler, *file_args):
        p = sub.add_parser(name)
        for arg in file_args:
            p.add_argument(arg)
        p.add_argument("--out", default=None)
        p.set_defaults(handler=handler, file_args=file_args)
        return p

    add("classify", _cmd_classify, "diagram")
    add("decompose", _cmd_decompose, "rep")
    add("isotest", _cmd_isotest, "rep1", "rep2")
    add("contract", _cmd_contract, "rep")
    p = add("flow-extend", _cmd_flow_extend, "diagram", "flow")
    p.add_argument("--tol", type=float, default=1e-9)
    add("wild-embed", _cmd_wild_embed, "pairs")
    p = add("gen-random", _cmd_gen_random, "diagram")
    p.add_argument("--dims", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", default="generic")
    p.add_argument("--key-out", dest="key_out", default=None)
    add("fmt", _cmd_fmt, "file")
    return parser


def run(argv):
    """Parse argv, dispatch, write canonical JSON, return a CommandReport."""
    try:
        ns = _build_parser().parse_args(argv)
        if ns.command is None:
            raise UnknownCommand("no command given")
    except UnknownCommand as exc:
        sys.stderr.write(f"error: {exc}\n")
        return CommandReport("?", {}, {"error": str(exc)}, 1)

    digests = {}
    try:
        for arg in ns.file_args:
            path = getattr(ns, arg)
            if os.path.exists(path):
                digests[path] = _digest(path)
        result = ns.handler(ns)
    except (NotDecomposable, NotDecidableWild):
        result = {"error": "wild"}
        sys.stdout.write(canonical_json(result))
        return CommandReport(ns.command, digests, result, 2)
    except TdrError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return CommandReport(ns.command, digests, {"error": str(exc)}, 1)
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return CommandReport(ns.command, digests, {"error": str(exc)}, 1)

    text = canonical_json(result)
    if ns.command != "wild-embed" and ns.out:
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return CommandReport(ns.command, digests, result, 0)


def main():
    sys.exit(run(sys.argv[1:]).exit_code)


if __name__ == "__main__":
    main()
