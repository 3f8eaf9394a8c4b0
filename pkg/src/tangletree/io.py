"""Persistence of every artifact type plus DOT export.

All structured files are JSON with sorted keys and two-space indent, so a
fixed value always serializes to identical bytes.  All quantities are
integers or strings; an optional seed is recorded in the header of any file
produced by a seeded run.
"""

import json

from .errors import ParseError
from .graphs import Graph
from .seps import OrientedSeparation, SeparationSystem, canonical
from .tangles import Orientation, StarFamily, TangleSet
from .trees import NestedSet, TreeDecomposition


def _dump(obj, path):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    with open(path, "w") as f:
        f.write(text)
    return text


def _load(path, expect):
    with open(path) as f:
        text = f.read()
    try:
        obj = json.loads(text)
    except ValueError as e:
        raise ParseError("not valid JSON: %s" % (e,))
    if not isinstance(obj, dict) or obj.get("format") != expect:
        raise ParseError("expected a %r file" % (expect,))
    return obj


def _header(fmt, seed=None):
    out = {"format": fmt}
    if seed is not None:
        out["seed"] = int(seed)
    return out


def _vs(X):
    return sorted(int(v) for v in X)


def _sep_out(s):
    return [_vs(s.A), _vs(s.B)]


def _sep_in(G, pair):
    A, B = pair
    return OrientedSeparation(G, frozenset(A), frozenset(B))


# ------------------------------------------------------------------- graphs


def save_graph(G, path, seed=None):
    obj = _header("graph", seed)
    obj["n"] = G.n
    obj["edges"] = G.edge_tuples()
    return _dump(obj, path)


def load_graph(path):
    """Structured {n, edges} JSON, or an edge-list with one "u v" per line."""
    with open(path) as f:
        text = f.read()
    if text.lstrip().startswith("{"):
        obj = _load(path, "graph")
        return Graph(int(obj["n"]), [tuple(e) for e in obj["edges"]])
    edges = []
    for line in text.splitlines():
        line = line.split("#")[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("edge line needs two vertices: %r" % (line,))
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("vertices must be integers: %r" % (line,))
        edges.append((u, v))
    if not edges:
        raise ParseError("empty edge list")
    return Graph(max(v for e in edges for v in e) + 1, edges)


# ------------------------------------------------------------------ systems


def save_system(S, path, seed=None):
    obj = _header("separation-system", seed)
    obj["n"] = S.ground.n
    obj["k"] = S.k
    obj["members"] = [_sep_out(s) for s in S.unoriented()]
    return _dump(obj, path)


def load_system(path, G=None):
    obj = _load(path, "separation-system")
    if G is None:
        G = Graph(int(obj["n"]), [])
    oriented = set()
    for pair in obj["members"]:
        s = _sep_in(G, pair)
        oriented.add(s)
        oriented.add(s.inv)
    k = obj.get("k")
    return SeparationSystem(G, oriented, k=None if k is None else int(k))


# ------------------------------------------------------------------ tangles


def save_tangles(ts, path, seed=None):
    """Canonical separations plus, per tangle, the chosen side of each (0 = A)."""
    ts = list(ts)
    if not ts:
        raise ParseError("cannot persist an empty tangle set")
    S = ts[0].system
    reps = S.unoriented()
    obj = _header("tangle-set", seed)
    obj["n"] = S.ground.n
    obj["k"] = S.k
    obj["separations"] = [_sep_out(s) for s in reps]
    obj["tangles"] = [[0 if s in O else 1 for s in reps] for O in ts]
    return _dump(obj, path)


def load_tangles(path, G=None):
    obj = _load(path, "tangle-set")
    if G is None:
        G = Graph(int(obj["n"]), [])
    reps = [_sep_in(G, p) for p in obj["separations"]]
    oriented = set()
    for s in reps:
        oriented.add(s)
        oriented.add(s.inv)
    k = obj.get("k")
    S = SeparationSystem(G, oriented, k=None if k is None else int(k))
    out = []
    for sides in obj["tangles"]:
        if len(sides) != len(reps):
            raise ParseError("tangle row length mismatch")
        chosen = {s if b == 0 else s.inv for s, b in zip(reps, sides)}
        out.append(Orientation(S, chosen))
    return TangleSet(out)


# --------------------------------------------------------------- star families


def save_star_family(F, path, seed=None):
    obj = _header("star-family", seed)
    obj["tag"] = F.tag
    obj["stars"] = sorted(
        (sorted((_sep_out(s) for s in el)) for el in F.elements))
    return _dump(obj, path)


def load_star_family(path, G):
    obj = _load(path, "star-family")
    els = [frozenset(_sep_in(G, p) for p in el) for el in obj["stars"]]
    return StarFamily(els, tag=obj.get("tag", "user"))


# ---------------------------------------------------------------- nested sets


def save_nested_set(N, path, seed=None, annotations=None):
    """annotations maps a member to the tangle pair it efficiently distinguishes."""
    obj = _header("nested-set", seed)
    obj["n"] = N.system.ground.n
    obj["k"] = N.system.k
    obj["members"] = [_sep_out(s) for s in N]
    if annotations:
        obj["distinguishes"] = [list(annotations.get(s, [])) for s in N]
    return _dump(obj, path)


def load_nested_set(path, S):
    obj = _load(path, "nested-set")
    G = S.ground
    return NestedSet(S, [_sep_in(G, p) for p in obj["members"]])


# ------------------------------------------------------- tree-decompositions


def save_tree_decomposition(TD, path, seed=None):
    obj = _header("tree-decomposition", seed)
    obj["n"] = TD.graph.n
    obj["graph_edges"] = TD.graph.edge_tuples()
    obj["nodes"] = [{"id": i, "bag": _vs(b)} for i, b in enumerate(TD.bags)]
    obj["edges"] = [list(e) for e in TD.edges]
    return _dump(obj, path)


def load_tree_decomposition(path):
    obj = _load(path, "tree-decomposition")
    G = Graph(int(obj["n"]), [tuple(e) for e in obj["graph_edges"]])
    nodes = sorted(obj["nodes"], key=lambda d: int(d["id"]))
    if [int(d["id"]) for d in nodes] != list(range(len(nodes))):
        raise ParseError("node ids must be 0..n-1")
    bags = [frozenset(d["bag"]) for d in nodes]
    return TreeDecomposition(G, bags, [tuple(e) for e in obj["edges"]])


# ---------------------------------------------------------------- universes


def save_universe(U, path, seed=None):
    """Table form; graph-backed universes are persisted via their tables too."""
    elems = sorted(U, key=lambda x: x.sort_key)
    names = {x: _uname(x) for x in elems}
    obj = _header("universe", seed)
    obj["backend"] = U.backend
    obj["elements"] = [names[x] for x in elems]
    obj["leq"] = sorted([names[a], names[b]]
                        for a in elems for b in elems if a.leq(b) and a != b)
    obj["inv"] = {names[x]: names[x.inv] for x in elems}
    obj["meet"] = sorted([names[a], names[b], names[a.meet(b)]]
                         for a in elems for b in elems)
    obj["join"] = sorted([names[a], names[b], names[a.join(b)]]
                         for a in elems for b in elems)
    if any(x.order for x in elems):
        obj["order"] = {names[x]: x.order for x in elems}
    return _dump(obj, path)


def _uname(x):
    name = getattr(x, "name", None)
    if name is not None:
        return str(name)
    return repr(x)


def load_universe(path):
    from .universe import Universe
    obj = _load(path, "universe")
    leq = [tuple(p) for p in obj["leq"]]
    meet = {(a, b): c for a, b, c in obj["meet"]}
    join = {(a, b): c for a, b, c in obj["join"]}
    return Universe.from_tables(obj["elements"], leq, obj["inv"],
                                meet, join, order=obj.get("order"))


def save_abstract_system(S, path, seed=None):
    obj = _header("abstract-system", seed)
    obj["members"] = sorted(_uname(x) for x in S)
    return _dump(obj, path)


def load_abstract_system(path, U):
    obj = _load(path, "abstract-system")
    return U.system([U.element(name) for name in obj["members"]])


def save_abstract_star_family(F, path, seed=None):
    obj = _header("abstract-star-family", seed)
    obj["tag"] = F.tag
    obj["stars"] = sorted(sorted(_uname(s) for s in el) for el in F.elements)
    return _dump(obj, path)


def load_abstract_star_family(path, U):
    obj = _load(path, "abstract-star-family")
    els = [frozenset(U.element(name) for name in el) for el in obj["stars"]]
    return StarFamily(els, tag=obj.get("tag", "user"))


def save_abstract_nested_set(N, path, seed=None):
    obj = _header("abstract-nested-set", seed)
    obj["members"] = sorted(_uname(s) for s in N)
    return _dump(obj, path)


def load_abstract_nested_set(path, S):
    obj = _load(path, "abstract-nested-set")
    U = S.ground
    return NestedSet(S, [U.element(name) for name in obj["members"]])


# ------------------------------------------------------------------- reports


def save_report(report, path, seed=None):
    obj = _header("report", seed)
    obj["report"] = _plain(report)
    return _dump(obj, path)


def _plain(x):
    """Reduce report values to JSON-safe, deterministic primitives."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((_plain(v) for v in x), key=str)
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return repr(x)


# ----------------------------------------------------------------------- DOT


def _dot_label(text):
    return text.replace('"', r'\"')


def export_dot(obj):
    """Deterministic DOT text for an S-tree or a tree-decomposition.

    Nodes are labeled with bags (interiors for S-trees), edges with the
    order of the induced separation.
    """
    from .tangles import interior
    from .trees import STree
    lines = ["graph tangletree {"]
    if isinstance(obj, STree):
        ground = None
        for x in obj.alpha.values():
            ground = getattr(x, "graph", None)
            break
        for i, st in enumerate(obj.stars):
            if ground is not None:
                label = "{%s}" % ",".join(map(str, _vs(interior(st, ground))))
            else:
                label = "{%s}" % ",".join(sorted(_uname(s) for s in st))
            lines.append('  n%d [label="%s"];' % (i, _dot_label(label)))
        for (i, j) in obj.edges:
            lines.append('  n%d -- n%d [label="%d"];'
                         % (i, j, obj.alpha[(i, j)].order))
    elif isinstance(obj, TreeDecomposition):
        for i, bag in enumerate(obj.bags):
            label = "{%s}" % ",".join(map(str, _vs(bag)))
            lines.append('  n%d [label="%s"];' % (i, _dot_label(label)))
        induced = obj.induced_separations()
        for (i, j) in obj.edges:
            lines.append('  n%d -- n%d [label="%d"];'
                         % (i, j, induced[(i, j)].order))
    else:
        raise ParseError("export_dot takes an STree or a TreeDecomposition")
    lines.append("}")
    return "\n".join(lines) + "\n"
