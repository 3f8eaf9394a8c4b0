"""k-blocks, separability, tangle correspondence and the decomposition audit."""

from itertools import combinations

from .graphs import min_vertex_cut_size
from .seps import OrientedSeparation, canonical, separation
from .tangles import is_profile, is_regular, Orientation, check_star, interior


class Block:
    """A maximal set of at least k pairwise k-inseparable vertices."""

    __slots__ = ("vertices", "k", "separable", "star")

    def __init__(self, vertices, k, separable, star):
        self.vertices = frozenset(vertices)
        self.k = k
        self.separable = separable
        self.star = star

    def __eq__(self, other):
        return (isinstance(other, Block)
                and self.vertices == other.vertices and self.k == other.k)

    def __hash__(self):
        return hash((self.vertices, self.k))

    def __repr__(self):
        return "Block(%r, k=%d)" % (sorted(self.vertices), self.k)


def inseparable(G, a, b, k):
    """No set of fewer than k vertices separates a from b."""
    if a == b:
        return True
    if frozenset((a, b)) in G.edges:
        return True
    return min_vertex_cut_size(G, a, b) >= k


def _maximal_cliques(verts, compatible):
    """Bron-Kerbosch over an abstract symmetric relation."""
    out = []

    def neigh(u, S):
        return {v for v in S if v != u and compatible(u, v)}

    def rec(R, P, X):
        if not P and not X:
            out.append(frozenset(R))
            return
        pivot = max(P | X, key=lambda u: len(neigh(u, P)))
        for v in sorted(P - neigh(pivot, P)):
            rec(R | {v}, neigh(v, P), neigh(v, X))
            P = P - {v}
            X = X | {v}

    rec(set(), set(verts), set())
    return sorted(out, key=sorted)


def k_blocks(G, k):
    """All k-blocks: maximal pairwise k-inseparable sets of >= k vertices."""
    assert k >= 1
    pairs = {}
    for a, b in combinations(sorted(G.vertices), 2):
        pairs[(a, b)] = inseparable(G, a, b, k)

    def compatible(a, b):
        return a == b or pairs[(min(a, b), max(a, b))]

    out = []
    for U in _maximal_cliques(G.vertices, compatible):
        if len(U) < k:
            continue
        star = separable_star(U, G, k)
        out.append(Block(U, k, star is not None, star))
    return out


def separable_star(b, G, k):
    """The component star around b when it certifies separability, else None.

    One member (V(C) u N(C), V - C) per component C of G - b; returned only
    if every member has order < k and the interior recovers b exactly.
    """
    b = frozenset(b)
    members = set()
    for C in G.components(b):
        N = frozenset(v for c in C for v in G.neighbors(c)) - C
        members.add(OrientedSeparation(G, C | N, G.vertices - C))
    for s in members:
        if s.order >= k:
            return None
    star = check_star(members)
    if interior(star, G) != b:
        return None
    return star


def block_orientation(b, S):
    """Orient every member of S toward b; defined when b is never split."""
    chosen = set()
    for s in S.unoriented():
        if s.is_degenerate:
            chosen.add(s)
        elif b <= s.B:
            chosen.add(s)
        elif b <= s.A:
            chosen.add(s.inv)
        else:
            return None
    return Orientation(S, chosen)


def tangle_correspondence(U, tau, k):
    """How the vertex set U relates to the tangle: induces/witnesses/bound."""
    U = frozenset(U)
    G = next(iter(tau)).graph if len(tau) else None
    report = {"induces": True, "witnesses": True, "small_side_bound": True,
              "witnesses_detail": {}}
    for s in tau:
        if s.is_degenerate:
            continue
        if len(s.A & U) >= len(s.B & U):
            report["induces"] = False
            report["witnesses_detail"].setdefault("induces", s)
        if len(s.A & U) >= k:
            report["small_side_bound"] = False
            report["witnesses_detail"].setdefault("small_side_bound", s)
    H_edges = G.induced_edges(U) if G is not None else set()
    members = sorted((s for s in tau if not s.is_degenerate), key=lambda s: s.sort_key)
    for r in range(1, 4):
        done = False
        for sub in combinations(members, r):
            cover_v = frozenset().union(*(s.A for s in sub)) & U
            if cover_v != U:
                continue
            covered = set()
            for s in sub:
                covered |= {e for e in H_edges if e <= s.A}
            if covered == H_edges:
                report["witnesses"] = False
                report["witnesses_detail"].setdefault("witnesses", frozenset(sub))
                done = True
                break
        if done:
            break
    return report


def verify_theorem_4_8(G, k, TD, tangles):
    """Audit the three claims of the decomposition theorem.

    (i) the decomposition efficiently distinguishes all the given regular
    k-profiles, (ii) every part larger than 3k-3 is home to a k-tangle that
    the part induces and witnesses within the small-side bound, and (iii)
    every separable k-block appears as a part.  Parts of size exactly 3k-3
    carry no claim and are not flagged.
    """
    from .tangles import distinguishers, distinguishes
    ts = list(tangles)
    report = {"efficient": True, "big_parts": True, "blocks_are_parts": True,
              "witnesses": {}, "parts": []}
    induced = TD.induced_separations()
    seps = {canonical(s) for s in induced.values()}
    for i in range(len(ts)):
        for j in range(i + 1, len(ts)):
            _, eff = distinguishers(ts[i], ts[j])
            if not eff:
                report["efficient"] = False
                report["witnesses"].setdefault("indistinguishable", (i, j))
                continue
            m = eff[0].order
            if not any(s.order == m and distinguishes(s, ts[i], ts[j]) for s in seps):
                report["efficient"] = False
                report["witnesses"].setdefault("inefficient_pair", (i, j))
    for t, bag in enumerate(TD.bags):
        entry = {"bag": sorted(bag), "size": len(bag), "claimed": len(bag) > 3 * k - 3,
                 "home": None}
        if len(bag) > 3 * k - 3:
            star = TD.node_star(t)
            homes = [i for i, P in enumerate(ts) if all(s in P for s in star)]
            entry["home"] = homes
            ok = False
            for i in homes:
                corr = tangle_correspondence(bag, ts[i], k)
                if corr["induces"] and corr["witnesses"] and corr["small_side_bound"]:
                    ok = True
                    break
            if not ok:
                report["big_parts"] = False
                report["witnesses"].setdefault("homeless_part", sorted(bag))
        report["parts"].append(entry)
    bags = set(TD.bags)
    for blk in k_blocks(G, k):
        if blk.separable and blk.vertices not in bags:
            report["blocks_are_parts"] = False
            report["witnesses"].setdefault("missing_block", sorted(blk.vertices))
    return report
