"""Multiplicative flows on tensor diagrams.

A flow assigns a nonzero complex number to each wire so that at every
vertex the product of outgoing values times the product of inverse
incoming values is 1 (a loop cancels itself).  A partial flow fixes the
values outside an induced subdiagram T[u] and imposes the condition only
at vertices outside u; extend_flow completes it to a total flow.

Values are double-precision complex: the extension takes k-th roots, so
exactness is out of reach and unnecessary (flows are witnesses, not
classification inputs).  Default tolerance 1e-9.
"""

import cmath
from collections import deque

from .errors import DomainMismatch, InvalidPartialFlow, NotClosed
from .semigraph import neighborhood

_MIN_ABS = 1e-12


def _induced_wires(d, u_set):
    out = set()
    for w in d.wires:
        ends = [e for e in (w.tail, w.head) if e is not None]
        if ends and all(e in u_set for e in ends):
            out.add(w.id)
    return out


def _check_domain(d, f, u):
    u_set = set(u)
    for v in u_set:
        if v not in d.vertices:
            raise DomainMismatch(f"unknown vertex {v}")
    inner = _induced_wires(d, u_set)
    expected = {w.id for w in d.wires} - inner
    got = set(f)
    if got != expected:
        missing = sorted(expected - got)
        extra = sorted(got - expected)
        raise DomainMismatch(
            f"flow domain mismatch (missing {missing}, extra {extra})")
    return u_set, inner


def _condition(d, f, v):
    """Signed product of the defined values at v; None when undefined ones
    remain (loops with a defined value cancel exactly)."""
    nb = neighborhood(d, v)
    prod = 1 + 0j
    for wid in nb.outgoing:
        if wid in f:
            prod *= f[wid]
    for wid in nb.incoming:
        if wid in f:
            prod /= f[wid]
    return prod


def verify_partial_flow(d, f, u, tol=1e-9):
    """Check the flow condition at every vertex outside u."""
    u_set, _ = _check_domain(d, f, u)
    if any(abs(val) <= _MIN_ABS for val in f.values()):
        return False
    for v in d.vertices:
        if v in u_set:
            continue
        if abs(_condition(d, f, v) - 1) > tol:
            return False
    return True


def extend_flow(d, f, u, tol=1e-9):
    """Extend a valid partial flow over T[u] to a total flow.

    Per connected component of T[u]: the boundary values must multiply to
    1 (signed toward the component) or no extension exists; loops and the
    wires of non-tree parallel classes get value 1; the remaining classes
    are filled by peeling a breadth-first spanning tree of the merged
    simple graph from the deepest vertices inward, giving each class of k
    parallel wires the principal k-th root forced by its vertex condition.
    """
    if not d.is_closed():
        raise NotClosed("flow extension needs a closed diagram")
    u_set, inner = _check_domain(d, f, u)
    if not verify_partial_flow(d, f, u, tol):
        raise InvalidPartialFlow("input violates the partial flow condition")
    total = dict(f)
    wires = {w.id: w for w in d.wires}

    # connected components of T[u] via its non-loop wires
    parent = {v: v for v in u_set}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for wid in inner:
        w = wires[wid]
        if not w.is_loop():
            ra, rb = find(w.tail), find(w.head)
            if ra != rb:
                parent[ra] = rb
    comps = {}
    for v in sorted(u_set):
        comps.setdefault(find(v), []).append(v)

    for members in comps.values():
        mset = set(members)
        # closure: boundary values, signed toward the component, multiply to 1
        closure = 1 + 0j
        for w in wires.values():
            if w.id in total:
                if w.head in mset and w.tail not in mset:
                    closure *= total[w.id]
                elif w.tail in mset and w.head not in mset:
                    closure /= total[w.id]
        if abs(closure - 1) > tol:
            raise InvalidPartialFlow(
                f"boundary product {closure} at component of {members[0]}")

        classes = {}   # frozenset{x,y} -> [wire ids]
        for wid in inner:
            w = wires[wid]
            if w.tail in mset:
                if w.is_loop():
                    total[wid] = 1 + 0j
                else:
                    classes.setdefault(
                        frozenset((w.tail, w.head)), []).append(wid)

        root = members[0]   # lex-smallest
        depth = {root: 0}
        tree = {}           # vertex -> (parent, its parallel class key)
        queue = deque([root])
        adj = {v: set() for v in mset}
        for key in classes:
            x, y = sorted(key)
            adj[x].add(y)
            adj[y].add(x)
        while queue:
            x = queue.popleft()
            for y in sorted(adj[x]):
                if y not in depth:
                    depth[y] = depth[x] + 1
                    tree[y] = (x, frozenset((x, y)))
                    queue.append(y)
        tree_keys = {key for _, key in tree.values()}
        for key, wids in classes.items():
            if key not in tree_keys:
                for wid in wids:
                    total[wid] = 1 + 0j

        for v in sorted(mset, key=lambda x: (-depth[x], x)):
            if v == root:
                continue
            _, key = tree[v]
            group = classes[key]
            prod = _condition(d, total, v)
            k = len(group)
            z = cmath.exp(cmath.log(1 / prod) / k)
            for wid in group:
                w = wires[wid]
                total[wid] = z if w.tail == v else 1 / z
    return total
