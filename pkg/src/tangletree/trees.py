"""Nested sets, splitting stars, S-trees and tree-decompositions."""

from itertools import combinations

from .errors import Irregular, NotNested
from .seps import canonical, compare, nested, separation
from .tangles import _backtrack_orientations, _pair_inconsistent, interior, same_separation


class NestedSet:
    """Pairwise nested unoriented separations, canonical members."""

    __slots__ = ("system", "members", "_hash")

    def __init__(self, system, members):
        members = frozenset(canonical(s) for s in members)
        lst = sorted(members, key=lambda s: s.sort_key)
        for a, b in combinations(lst, 2):
            if not nested(a, b):
                raise NotNested("%r crosses %r" % (a, b))
        self.system = system
        self.members = members
        self._hash = hash((system, members))

    def oriented(self):
        out = set()
        for s in self.members:
            out.add(s)
            out.add(s.inv)
        return out

    def __iter__(self):
        return iter(sorted(self.members, key=lambda s: s.sort_key))

    def __len__(self):
        return len(self.members)

    def __contains__(self, s):
        return canonical(s) in self.members

    def __eq__(self, other):
        return (isinstance(other, NestedSet)
                and self.system == other.system and self.members == other.members)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "NestedSet(%d members)" % len(self.members)


def check_regular(N):
    """Reject degenerate, small-oriented and trivial-within-N members."""
    oriented = N.oriented()
    for s in N:
        if s.is_degenerate:
            raise Irregular("degenerate member %r" % (s,))
        if s.is_small or s.is_cosmall:
            raise Irregular("small member %r" % (s,))
    for s in oriented:
        for t in oriented:
            if same_separation(s, t):
                continue
            if s.leq(t) and s != t and s.leq(t.inv) and s != t.inv:
                raise Irregular("member %r trivial within the set" % (s,))


def _nodes_by_orientation(N):
    oriented = sorted(N.oriented(), key=lambda s: s.sort_key)

    def prune(chosen, y):
        return any(_pair_inconsistent(x, y) for x in chosen)

    from .seps import SeparationSystem
    sub = SeparationSystem(N.system.ground, frozenset(oriented))
    stars = set()
    for chosen in _backtrack_orientations(sub, prune):
        maximal = frozenset(
            s for s in chosen
            if not any(not same_separation(s, t) and s.leq(t) and s != t for t in chosen))
        stars.add(maximal)
    return stars


def _nodes_structural(N):
    oriented = sorted(N.oriented(), key=lambda s: s.sort_key)
    if not oriented:
        return {frozenset()}
    stars = set()
    for s in oriented:
        above = [t for t in oriented
                 if not same_separation(s, t) and s.leq(t) and s != t]
        minimal = [t for t in above
                   if not any(u != t and u.leq(t) for u in above)]
        stars.add(frozenset([s] + [t.inv for t in minimal]))
    return stars


def nodes(N, force_method=None):
    """Splitting stars of a regular nested set.

    Orientation enumeration for |N| <= 25, structural beyond; both paths are
    cross-checked on small inputs by the test suite.
    """
    check_regular(N)
    if not N.members:
        return [frozenset()]
    method = force_method or ("orientation" if len(N) <= 25 else "structural")
    stars = _nodes_by_orientation(N) if method == "orientation" else _nodes_structural(N)
    return sorted(stars, key=lambda st: sorted(s.sort_key for s in st))


class STree:
    """Tree plus edge map alpha; alpha of a reversed edge is the inverse."""

    __slots__ = ("stars", "edges", "alpha")

    def __init__(self, stars, edges, alpha):
        self.stars = list(stars)          # star per tree vertex
        self.edges = sorted(edges)        # (i, j) with i < j
        self.alpha = dict(alpha)          # (i, j) -> oriented sep pointing to j
        for (i, j) in self.edges:
            s = self.alpha[(i, j)]
            assert self.alpha[(j, i)] == s.inv

    def leaf_separations(self):
        """Oriented separations on leaf edges, pointing away from the leaf."""
        deg = {}
        for (i, j) in self.edges:
            deg[i] = deg.get(i, 0) + 1
            deg[j] = deg.get(j, 0) + 1
        out = []
        for (i, j) in self.edges:
            if deg.get(i, 0) == 1:
                out.append(self.alpha[(i, j)])
            if deg.get(j, 0) == 1:
                out.append(self.alpha[(j, i)])
        return sorted(out, key=lambda s: s.sort_key)

    def separations(self):
        return sorted({canonical(self.alpha[e]) for e in self.alpha},
                      key=lambda s: s.sort_key)

    def __len__(self):
        return len(self.stars)


def to_stree(N):
    """Unique S-tree of a regular tree set: vertices are the nodes."""
    stars = nodes(N)
    index = {st: i for i, st in enumerate(stars)}
    edges = set()
    alpha = {}
    for s in N.oriented():
        home = [st for st in stars if s in st]
        assert len(home) == 1, "member %r lies in %d nodes" % (s, len(home))
    for s in N:
        j = index[next(st for st in stars if s in st)]
        i = index[next(st for st in stars if s.inv in st)]
        a, b = min(i, j), max(i, j)
        edges.add((a, b))
        alpha[(i, j)] = s
        alpha[(j, i)] = s.inv
    tree = STree(stars, edges, alpha)
    assert len(tree.stars) == len(N) + 1, "nested set does not form a tree"
    return tree


class TreeDecomposition:
    __slots__ = ("graph", "bags", "edges", "_induced")

    def __init__(self, graph, bags, edges):
        self.graph = graph
        self.bags = [frozenset(b) for b in bags]
        self.edges = sorted(tuple(sorted(e)) for e in edges)
        self._induced = None

    def adhesion(self):
        if not self.edges:
            return 0
        return max(len(self._side(i, j)[0] & self._side(i, j)[1])
                   for (i, j) in self.edges)

    def _neighbors(self, i):
        out = []
        for (a, b) in self.edges:
            if a == i:
                out.append(b)
            if b == i:
                out.append(a)
        return out

    def _side_nodes(self, i, j):
        """Tree vertices on the i side of edge (i,j)."""
        seen = {i, j}
        stack = [i]
        side = {i}
        while stack:
            v = stack.pop()
            for w in self._neighbors(v):
                if w not in seen:
                    seen.add(w)
                    side.add(w)
                    stack.append(w)
        return side

    def _side(self, i, j):
        si = self._side_nodes(i, j)
        A = frozenset().union(*(self.bags[t] for t in si))
        rest = set(range(len(self.bags))) - si
        B = frozenset().union(*(self.bags[t] for t in rest)) if rest else frozenset()
        return A, B

    def induced_separations(self):
        """Per tree edge (i,j): the separation oriented toward j."""
        if self._induced is None:
            out = {}
            for (i, j) in self.edges:
                A, B = self._side(i, j)
                out[(i, j)] = separation(self.graph, A, B)
            self._induced = out
        return self._induced

    def node_star(self, t):
        """Induced separations of incident edges, oriented toward t."""
        out = set()
        for (i, j) in self.edges:
            sep = self.induced_separations()[(i, j)]
            if j == t:
                out.add(sep)
            elif i == t:
                out.add(sep.inv)
        return frozenset(out)

    def is_valid(self):
        """(ok, witness): vertex+edge cover and connected vertex traces."""
        union = frozenset().union(*self.bags) if self.bags else frozenset()
        if union != self.graph.vertices:
            return False, ("uncovered-vertex", sorted(self.graph.vertices - union))
        for e in self.graph.edges:
            if not any(e <= b for b in self.bags):
                return False, ("uncovered-edge", sorted(e))
        for v in self.graph.vertices:
            hosts = {i for i, b in enumerate(self.bags) if v in b}
            if not hosts:
                return False, ("uncovered-vertex", v)
            # connectivity of the host set in the tree
            start = min(hosts)
            seen = {start}
            stack = [start]
            while stack:
                a = stack.pop()
                for b in self._neighbors(a):
                    if b in hosts and b not in seen:
                        seen.add(b)
                        stack.append(b)
            if seen != hosts:
                return False, ("disconnected-trace", v)
        return True, None

    def __eq__(self, other):
        return (isinstance(other, TreeDecomposition) and self.graph == other.graph
                and self.bags == other.bags and self.edges == other.edges)

    def __repr__(self):
        return "TreeDecomposition(%d bags)" % len(self.bags)


def to_tree_decomposition(N, G):
    """Bags are the node interiors; the induced separations must equal N."""
    tree = to_stree(N)
    bags = [interior(st, G) for st in tree.stars]
    td = TreeDecomposition(G, bags, [(i, j) for (i, j) in tree.edges])
    ok, w = td.is_valid()
    assert ok, "interior bags do not form a tree-decomposition: %r" % (w,)
    induced = td.induced_separations()
    got = {canonical(s) for s in induced.values()}
    assert got == set(N.members), "round trip failed: induced separations differ"
    return td


def validate_td(G, k, TD, tangles):
    """Report on validity, adhesion, essential parts, distinguishing edges."""
    ok, witness = TD.is_valid()
    report = {"valid": ok, "witness": witness, "adhesion": None,
              "parts": [], "edges": {}, "distinguishes_all": None}
    if not ok:
        return report
    induced = TD.induced_separations()
    report["adhesion"] = max((s.order for s in induced.values()), default=0)
    ts = list(tangles)
    from .tangles import distinguishers
    pair_min = {}
    for i in range(len(ts)):
        for j in range(i + 1, len(ts)):
            _, eff = distinguishers(ts[i], ts[j])
            pair_min[(i, j)] = eff[0].order if eff else None
    for t in range(len(TD.bags)):
        star = TD.node_star(t)
        owners = [i for i, P in enumerate(ts)
                  if all(s in P.system and s in P for s in star)]
        report["parts"].append({"bag": sorted(TD.bags[t]), "owners": owners,
                                "essential": bool(owners)})
    distinguished = set()
    for (i, j), sep in sorted(induced.items()):
        eff_for = []
        for (a, b), m in pair_min.items():
            from .tangles import distinguishes
            if sep in ts[a].system and distinguishes(sep, ts[a], ts[b]):
                distinguished.add((a, b))
                if m is not None and sep.order == m:
                    eff_for.append((a, b))
        report["edges"][(i, j)] = {"order": sep.order, "efficient_for": eff_for}
    report["distinguishes_all"] = distinguished == set(pair_min)
    return report


def refines(N, N_tilde):
    """N refines N_tilde when N_tilde is a subset of N."""
    return N_tilde.members <= N.members
