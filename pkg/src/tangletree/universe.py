"""Finite universes of separations and the abstract refinement pipeline:
table-driven and graph-backed lattices, narrow and near-maximal stars,
unscrambling, and essential-node refinement by maximal stars."""

import random
import warnings
from itertools import combinations

from .errors import (HypothesisFailure, NonDistributive, NotInSystem,
                     ParseError, StepBudgetExceeded, TooLarge,
                     VerificationFailed)
from .seps import SeparationSystem, canonical, enumerate_separations, nested
from .tangles import (StarFamily, check_star, check_star_family,
                      closely_related, distinguishes, f_tangles, is_good,
                      is_star, regular_profiles, star_leq)


class UniverseElement:
    """Element of a table-driven universe; implements the separation protocol."""

    __slots__ = ("universe", "i", "_hash")

    def __init__(self, universe, i):
        self.universe = universe
        self.i = i
        self._hash = hash((id(universe), i))

    @property
    def name(self):
        return self.universe.ids[self.i]

    @property
    def inv(self):
        return UniverseElement(self.universe, self.universe._inv[self.i])

    @property
    def order(self):
        o = self.universe._order
        return o[self.i] if o is not None else 0

    def _check(self, other):
        if not isinstance(other, UniverseElement) or other.universe is not self.universe:
            raise NotInSystem("elements of different universes")

    def leq(self, other):
        self._check(other)
        return (self.i, other.i) in self.universe._leq

    def join(self, other):
        self._check(other)
        return UniverseElement(self.universe, self.universe._join[(self.i, other.i)])

    def meet(self, other):
        self._check(other)
        return UniverseElement(self.universe, self.universe._meet[(self.i, other.i)])

    @property
    def is_small(self):
        return self.leq(self.inv)

    @property
    def is_cosmall(self):
        return self.inv.leq(self)

    @property
    def is_degenerate(self):
        return self.universe._inv[self.i] == self.i

    @property
    def sort_key(self):
        return (self.order, self.name)

    def __eq__(self, other):
        return (isinstance(other, UniverseElement)
                and other.universe is self.universe and other.i == self.i)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __repr__(self):
        return str(self.name)


class Universe:
    """A finite set of elements closed under involution, meet and join."""

    def __init__(self, elements, backend):
        self.backend = backend
        self._elements = sorted(elements, key=lambda x: x.sort_key)
        self._set = frozenset(self._elements)
        self._distributive = None

    @classmethod
    def from_tables(cls, ids, leq, inv, meet, join, order=None):
        """Table-driven universe; validates totality of all tables on load."""
        self = cls.__new__(cls)
        self.backend = "table-driven"
        self.ids = list(ids)
        if len(set(self.ids)) != len(self.ids):
            raise ParseError("duplicate element ids")
        index = {}
        for i, v in enumerate(self.ids):
            index[v] = i
        n = len(self.ids)

        def look(v):
            if v not in index:
                raise ParseError("unknown element id %r" % (v,))
            return index[v]

        self._inv = [None] * n
        for a, b in inv.items():
            self._inv[look(a)] = look(b)
        if any(v is None for v in self._inv):
            raise ParseError("involution table is not total")
        self._leq = {(look(a), look(b)) for a, b in leq}
        self._leq |= {(i, i) for i in range(n)}
        self._meet = _total_table(meet, look, n, "meet")
        self._join = _total_table(join, look, n, "join")
        if order is None:
            self._order = None
        else:
            try:
                self._order = [int(order[v]) for v in self.ids]
            except KeyError as e:
                raise ParseError("order map is not total: missing %r" % (e.args[0],))
        self._elements = sorted((UniverseElement(self, i) for i in range(n)),
                                key=lambda x: x.sort_key)
        self._set = frozenset(self._elements)
        self._distributive = None
        return self

    @classmethod
    def of_graph(cls, G, max_vertices=8):
        """All oriented separations of G, of every order."""
        if G.n > max_vertices:
            raise TooLarge("|V|=%d exceeds the universe cap %d" % (G.n, max_vertices))
        S = enumerate_separations(G, G.n + 1, max_vertices=max_vertices)
        return cls(S.oriented, "graph-separations")

    @classmethod
    def bipartitions(cls, ground_size, max_size=8):
        """All pairs (A,B) with A u B the ground set, ordered by |A n B|."""
        from .graphs import Graph
        u = cls.of_graph(Graph(ground_size, []), max_vertices=max_size)
        u.backend = "set-bipartitions-with-order-function"
        return u

    def __iter__(self):
        return iter(self._elements)

    def __len__(self):
        return len(self._elements)

    def __contains__(self, x):
        return x in self._set

    def element(self, name):
        for x in self._elements:
            if getattr(x, "name", None) == name:
                return x
        raise NotInSystem("no element named %r" % (name,))

    def system(self, members=None, k=None):
        return AbstractSystem(self, self._elements if members is None else members, k=k)

    def is_distributive(self):
        if self._distributive is None:
            self._distributive = check_universe(self)["distributive"]
        return self._distributive

    def __repr__(self):
        return "Universe(%s, %d elements)" % (self.backend, len(self._elements))


def _total_table(tab, look, n, what):
    out = {}
    for (a, b), c in tab.items():
        out[(look(a), look(b))] = look(c)
    for i in range(n):
        for j in range(n):
            if (i, j) not in out:
                if (j, i) in out:
                    out[(i, j)] = out[(j, i)]
                else:
                    raise ParseError("%s table is not total" % what)
    return out


class AbstractSystem(SeparationSystem):
    """Involution-closed subset of a universe, with a verified submodularity flag."""

    __slots__ = ("universe", "submodular")

    def __init__(self, universe, members, k=None):
        members = frozenset(members)
        for s in members:
            if s not in universe:
                raise NotInSystem("%r is not an element of the universe" % (s,))
        super().__init__(universe, members, k=k)
        self.universe = universe
        lst = sorted(members, key=lambda x: x.sort_key)
        sub = True
        for i, r in enumerate(lst):
            for s in lst[i:]:
                if r.join(s) not in members and r.meet(s) not in members:
                    sub = False
                    break
            if not sub:
                break
        self.submodular = sub


# ---------------------------------------------------------------- checking


def check_universe(U):
    """Exhaustive lattice / involution / distributivity report with witnesses."""
    elems = sorted(U, key=lambda x: x.sort_key)
    report = {"lattice": True, "involution_order_reversing": True,
              "distributive": True, "witnesses": {}}

    def flag(key, witness_name, w):
        if report[key]:
            report[key] = False
            report["witnesses"][witness_name] = w

    inside = frozenset(elems)
    for r in elems:
        if not r.leq(r):
            flag("lattice", "not-reflexive", r)
        if r.inv.inv != r:
            flag("involution_order_reversing", "not-involutive", r)
    for r, s in combinations(elems, 2):
        if r.leq(s) and s.leq(r):
            flag("lattice", "not-antisymmetric", (r, s))
    for r in elems:
        for s in elems:
            j, m = r.join(s), r.meet(s)
            if j not in inside or m not in inside:
                flag("lattice", "not-closed", (r, s))
                continue
            if not (r.leq(j) and s.leq(j) and m.leq(r) and m.leq(s)):
                flag("lattice", "not-a-bound", (r, s))
            if r.leq(s) and not s.inv.leq(r.inv):
                flag("involution_order_reversing", "order-reversal", (r, s))
    for r in elems:
        for s in elems:
            for t in elems:
                if r.leq(s) and s.leq(t) and not r.leq(t):
                    flag("lattice", "not-transitive", (r, s, t))
                if r.leq(t) and s.leq(t) and not r.join(s).leq(t):
                    flag("lattice", "join-not-least", (r, s, t))
                if t.leq(r) and t.leq(s) and not t.leq(r.meet(s)):
                    flag("lattice", "meet-not-greatest", (r, s, t))
                if r.meet(s.join(t)) != r.meet(s).join(r.meet(t)):
                    flag("distributive", "meet-over-join", (r, s, t))
                if r.join(s.meet(t)) != r.join(s).meet(r.join(t)):
                    flag("distributive", "join-over-meet", (r, s, t))
    return report


def _element_distributive(x):
    """Whether x lives in a distributive universe (set lattices always do)."""
    if isinstance(x, UniverseElement):
        return x.universe.is_distributive()
    return True


# ---------------------------------------------------------------- families


def t_prime(S):
    """T': pairs {r,s} of S with r <= s.inv whose join is co-small."""
    lst = sorted(S, key=lambda s: s.sort_key)
    out = set()
    for i, r in enumerate(lst):
        for s in lst[i:]:
            if r.leq(s.inv):
                j = r.join(s)
                if j.inv.leq(j):
                    out.add(frozenset((r, s)))
    return StarFamily(out, tag="Tprime")


def t_tilde_star(S):
    """Stars of at most three members with a co-small join, plus the singleton
    inverses of small and trivial members; the abstract-tangle family."""
    from .seps import classify
    lst = sorted(S, key=lambda s: s.sort_key)
    out = set()
    for n in range(1, 4):
        for c in combinations(lst, n):
            if not is_star(c):
                continue
            j = None
            for x in c:
                j = x if j is None else j.join(x)
            if j.inv.leq(j):
                out.add(frozenset(c))
    for r in lst:
        if r.is_degenerate:
            continue
        if r.is_small or classify(r, S)["trivial"]:
            out.add(frozenset({r.inv}))
    return StarFamily(out, tag="Ttildestars")


# ---------------------------------------------------------------- narrowness


def star_profile_status(R, P):
    """Flags for R within the profile P: narrow, and near-maximal when a star."""
    R = sorted(set(R), key=lambda s: s.sort_key)
    for r in R:
        if r not in P:
            raise HypothesisFailure("%r is not a member of the profile" % (r,))
    big = None
    for r in R:
        big = r if big is None else big.join(r)
    narrow, wit = True, None
    for x in P:
        y = x.inv if big is None else x.inv.join(big)
        if not y.inv.leq(y):
            narrow, wit = False, x
            break
    report = {"narrow": narrow, "narrow_witness": wit, "is_star": is_star(R),
              "near_maximal": None, "near_maximal_witness": None}
    if report["is_star"]:
        nm, nw = narrow, wit
        if narrow:
            for x in P:
                below = [s for s in R if s.leq(x)]
                if len(below) >= 2:
                    nm, nw = False, (x, below)
                    break
        report["near_maximal"], report["near_maximal_witness"] = nm, nw
    return report


def profile_nested_part(P, sigma):
    """P_sigma: the members of P nested with every member of sigma."""
    return [x for x in P if all(nested(x, s) for s in sigma)]


def _maximal(elems):
    lst = sorted(set(elems), key=lambda x: x.sort_key)
    return [x for x in lst if not any(x.leq(y) and x != y for y in lst)]


# ------------------------------------------------------------- unscrambling


def unscramble_pair(r, s, sigma, P):
    """Unscramble the crossing pair r, s within P, staying nested with sigma.

    r' is the minimal separation of P_sigma closely related to P with
    r ^ s.inv <= r' <= r (ties broken by canonical element order); then
    s' := s ^ r'.inv.  Nested inputs are returned unchanged.
    """
    sigma = check_star(sigma)
    if nested(r, s):
        return r, s
    for x in (r, s):
        if x not in P:
            raise HypothesisFailure("%r is not in the profile" % (x,))
        if not closely_related(x, P)[0]:
            raise HypothesisFailure("%r is not closely related to the profile" % (x,))
    for t in sigma:
        if t not in P:
            raise HypothesisFailure("sigma must be a subset of the profile")
        if not nested(r, t) or not nested(s, t):
            raise HypothesisFailure("sigma must be nested with r and s")
    floor = r.meet(s.inv)
    cands = [x for x in profile_nested_part(P, sigma)
             if floor.leq(x) and x.leq(r) and closely_related(x, P)[0]]
    assert r in cands, "r itself must be a candidate for r'"
    mins = [x for x in cands if not any(y.leq(x) and y != x for y in cands)]
    r2 = min(mins, key=lambda x: x.sort_key)
    s2 = s.meet(r2.inv)
    if s2 not in P.system:
        raise VerificationFailed("s ^ r'.inv left the system")
    if s2 not in P or not closely_related(s2, P)[0]:
        raise VerificationFailed("unscrambled s' is not closely related to P")
    for t in sigma:
        if not nested(s2, t):
            raise VerificationFailed("unscrambled s' crosses sigma")
    if not nested(r2, s2):
        raise VerificationFailed("unscrambled pair is not nested")
    if _element_distributive(r):
        if r2 != r.meet(s2.inv):
            raise VerificationFailed("r' = r ^ s'.inv fails in a distributive universe")
    else:
        warnings.warn("unscrambling in a non-distributive universe; "
                      "narrowness need not be preserved")
    return r2, s2


def unscramble_set(R, sigma, P):
    """Successively unscramble crossing pairs of R; closely related, sigma-nested.

    Each index pair is unscrambled at most once; the supporting corollary
    bounds the process by |R|(|R|-1)/2 steps, so exceeding that (or touching
    a pair twice) signals an implementation bug.
    """
    sigma = check_star(sigma)
    work = sorted(set(R), key=lambda s: s.sort_key)
    for x in work:
        if x not in P:
            raise HypothesisFailure("%r is not in the profile" % (x,))
        if not closely_related(x, P)[0]:
            raise HypothesisFailure("%r is not closely related to the profile" % (x,))
        if not all(nested(x, t) for t in sigma):
            raise HypothesisFailure("%r is not nested with sigma" % (x,))
    keep = [s for s in sigma if any(s.leq(x) for x in work)]
    budget = len(work) * (len(work) - 1) // 2
    done = set()
    steps = 0
    while True:
        pair = None
        for i, j in combinations(range(len(work)), 2):
            if not nested(work[i], work[j]):
                pair = (i, j)
                break
        if pair is None:
            break
        if pair in done or steps >= budget:
            raise StepBudgetExceeded(
                "unscrambling exceeded %d steps; the corollary's bound failed" % budget)
        done.add(pair)
        steps += 1
        i, j = pair
        work[i], work[j] = unscramble_pair(work[i], work[j], sigma, P)
    out = sorted(set(work), key=lambda s: s.sort_key)
    for s in keep:
        if not any(s.leq(x) for x in out):
            raise VerificationFailed("a dominated sigma member was lost in unscrambling")
    return out


# --------------------------------------------------------- near-maximal stars


def near_max_star(sigma, P, tangles=None):
    """A star above sigma that is closely related to and near-maximal in P.

    Follows the supporting lemma's proof: unscramble the maximal separations
    of P_sigma, keep the maximal elements, then shrink the star while some
    separation of P_sigma exceeds two of its members.
    """
    sigma = check_star(sigma)
    for s in sigma:
        if s not in P:
            raise HypothesisFailure("sigma must be a subset of the profile")
    if sigma:
        if tangles is None:
            tangles = regular_profiles(P.system)
        for s in sigma:
            if not is_good(s, tangles)[0]:
                raise HypothesisFailure("sigma member %r is not good" % (s,))
    part = profile_nested_part(P, sigma)
    R = _maximal(part)
    for r in R:
        if not closely_related(r, P)[0]:
            raise VerificationFailed("a maximal separation of P_sigma is not "
                                     "closely related to P")
    if not star_profile_status(R, P)["narrow"]:
        raise VerificationFailed("the maximal separations of P_sigma are not narrow")
    Rp = unscramble_set(R, sigma, P)
    sp = _maximal(Rp)
    while True:
        viol = [x for x in part if sum(1 for s in sp if s.leq(x)) >= 2]
        if not viol:
            break
        x = min(_maximal(viol), key=lambda y: y.sort_key)
        if not closely_related(x, P)[0]:
            raise VerificationFailed("shrink pivot is not closely related to P")
        R2 = [s for s in sp if not s.leq(x)] + [x]
        if len(R2) >= len(sp):
            raise VerificationFailed("near-maximality loop failed to shrink the star")
        sp = _maximal(unscramble_set(R2, sigma, P))
    sp = check_star(sp)
    if not star_leq(sigma, sp):
        raise VerificationFailed("output star does not dominate sigma")
    for s in sp:
        if not closely_related(s, P)[0]:
            raise VerificationFailed("output star is not closely related to P")
    status = star_profile_status(sp, P)
    if not (status["narrow"] and status["near_maximal"]):
        raise VerificationFailed("output star is not near-maximal: %r" % (status,))
    return sp


def maximal_star_above(sigma, P, cap=20):
    """A star in P maximal in the star order with sigma <= it, by enumeration."""
    from .refine import enumerate_stars, proper_members
    props = proper_members(P)
    if len(props) > cap:
        raise TooLarge("%d proper members exceed the enumeration cap %d"
                       % (len(props), cap))
    cur = frozenset(s for s in sigma if not s.is_small and not s.is_degenerate)
    while True:
        nxt = None
        for st in sorted(enumerate_stars(props),
                         key=lambda st: (len(st), sorted(s.sort_key for s in st))):
            if star_leq(cur, st) and not star_leq(st, cur):
                nxt = st
                break
        if nxt is None:
            return cur
        cur = nxt


def is_maximal_star(st, P, cap=20):
    """(flag, witness): no star in P strictly greater in the star order."""
    from .refine import enumerate_stars, proper_members
    props = proper_members(P)
    if len(props) > cap:
        raise TooLarge("%d proper members exceed the enumeration cap %d"
                       % (len(props), cap))
    for tau in enumerate_stars(props):
        if star_leq(st, tau) and not star_leq(tau, st):
            return False, tau
    return True, None


def max_and_closely_related_report(P, cap=20):
    """Whether some maximal star in P is closely related to P (recorded data)."""
    from .refine import enumerate_stars, proper_members
    props = proper_members(P)
    if len(props) > cap:
        raise TooLarge("%d proper members exceed the enumeration cap %d"
                       % (len(props), cap))
    stars = [st for st in enumerate_stars(props)]
    for st in sorted(stars, key=lambda st: (-len(st), sorted(s.sort_key for s in st))):
        if any(star_leq(st, tau) and not star_leq(tau, st) for tau in stars):
            continue
        if all(closely_related(s, P)[0] for s in st):
            return {"exists": True, "witness": st}
    return {"exists": False, "witness": None}


# ------------------------------------------------------- essential refinement


def refine_essential_abstract(sigma, P, F, tangles=None, max_expansions=20000,
                              cap=20):
    """S-tree refining the essential star sigma up to a maximal star in P.

    The tree lies over F plus the maximal cap star plus the singleton
    inverses of sigma's members, each of which appears as a leaf separation.
    """
    from .refine import family_is_element, refine_inessential
    from .trees import NestedSet, nodes, to_stree
    S = P.system
    sigma = check_star(sigma)
    if tangles is None:
        tangles = f_tangles(S, F)
    ts = list(tangles)
    owners = [Q for Q in ts if all(s in Q for s in sigma)]
    if len(owners) != 1 or owners[0] != P:
        raise HypothesisFailure("sigma must be home to exactly the given tangle")
    fam = check_star_family(F, S)
    if not (fam["all_stars"] and fam["standard"]
            and fam["contains_inverse_of_smalls"]):
        raise HypothesisFailure("F is not friendly: %r" % (fam["witnesses"],))
    for el in t_prime(S):
        if any(x.is_degenerate for x in el):
            continue
        if not family_is_element(F, el):
            raise HypothesisFailure("T' is not contained in F: %r" % (sorted(el),))
    for s in sigma:
        if not is_good(s, ts)[0]:
            raise HypothesisFailure("sigma member %r is not good" % (s,))

    sp = near_max_star(sigma, P, tangles=ts)
    spp = maximal_star_above(sp, P, cap=cap)
    # near-maximality puts every node between the two stars into F directly;
    # nodes home to a tangle and the sigma leaves bounding the tree are exempt
    proper_sp = frozenset(s for s in sp if not s.is_small and not s.is_degenerate)
    leaf_allowed = {frozenset({s.inv}) for s in sigma}
    mid = NestedSet(S, {canonical(x) for x in proper_sp | set(spp)})
    for node in nodes(mid):
        if any(all(x in Q for x in node) for Q in ts):
            continue
        if node in leaf_allowed:
            continue
        if not family_is_element(F, node):
            raise VerificationFailed(
                "cap node %r escaped F despite near-maximality" % (sorted(node),))

    members = {canonical(x) for x in set(sigma) | proper_sp | set(spp)}
    for node in nodes(NestedSet(S, members)):
        if any(all(x in Q for x in node) for Q in ts):
            continue
        if node in leaf_allowed:
            continue
        if family_is_element(F, node):
            continue
        sub = refine_inessential(node, F, S, ts, max_expansions)
        members |= {canonical(x) for x in sub.separations()}

    tree = to_stree(NestedSet(S, members))
    leaf = set(tree.leaf_separations())
    for s in sigma:
        if s not in leaf:
            raise VerificationFailed("%r is not a leaf separation" % (s,))
    for st in tree.stars:
        if any(all(x in Q for x in st) for Q in ts):
            continue
        if st in leaf_allowed:
            continue
        if not family_is_element(F, st):
            raise VerificationFailed("refined node %r is not in F" % (sorted(st),))
    return tree


def theorem_1_3(S, F, N_tilde, tangles=None, certify=True, max_expansions=20000,
                cap=20):
    """Refine N_tilde so inessential nodes lie in F and essential nodes are
    maximal stars in their tangles; requires a distributive universe."""
    from .refine import family_is_element, refine_inessential
    from .trees import NestedSet, nodes
    probe = next(iter(S), None)
    if probe is not None and not _element_distributive(probe):
        raise NonDistributive("the refinement theorem needs a distributive universe")
    if tangles is None:
        tangles = f_tangles(S, F)
    ts = list(tangles)
    if len(ts) >= 2:
        for s in N_tilde:
            if not is_good(s, ts)[0]:
                raise HypothesisFailure("%r is not good for the tangles" % (s,))
    for i in range(len(ts)):
        for j in range(i + 1, len(ts)):
            if not any(distinguishes(s, ts[i], ts[j]) for s in N_tilde):
                raise HypothesisFailure(
                    "the nested set does not distinguish tangles %d and %d" % (i, j))

    members = set(N_tilde.members)
    for node in nodes(NestedSet(S, members)):
        if any(all(x in Q for x in node) for Q in ts):
            continue
        if family_is_element(F, node):
            continue
        sub = refine_inessential(node, F, S, ts, max_expansions)
        members |= {canonical(x) for x in sub.separations()}

    for P in ts:
        home = [node for node in nodes(NestedSet(S, members))
                if all(x in P for x in node)]
        if len(home) != 1:
            raise VerificationFailed("tangle is home to %d nodes" % len(home))
        tree = refine_essential_abstract(home[0], P, F, tangles=ts,
                                         max_expansions=max_expansions, cap=cap)
        members |= {canonical(x) for x in tree.separations()}

    N = NestedSet(S, members)
    if not N_tilde.members <= N.members:
        raise VerificationFailed("the refinement dropped a premise separation")
    if certify:
        for node in nodes(N):
            owners = [Q for Q in ts if all(x in Q for x in node)]
            if owners:
                try:
                    ok, w = is_maximal_star(node, owners[0], cap=cap)
                except TooLarge:
                    warnings.warn("essential-node maximality left uncertified "
                                  "(profile too large to enumerate)")
                    continue
                if not ok:
                    raise VerificationFailed(
                        "essential node %r is exceeded by %r" % (sorted(node), sorted(w)))
            elif not family_is_element(F, node):
                raise VerificationFailed(
                    "inessential node %r is not in F" % (sorted(node),))
    return N


# ---------------------------------------------------------------- generators


def random_distributive_universe(seed, ground=6, generators=3, max_elements=40):
    """Complement-closed sublattice of a powerset; distributive by construction.

    Elements are subsets of the ground set with complement as involution and
    union/intersection as join/meet; closure keeps complements by De Morgan.
    """
    rng = random.Random(seed)
    full = frozenset(range(ground))
    for attempt in range(100):
        fam = {frozenset(), full}
        for _ in range(generators):
            X = frozenset(v for v in range(ground) if rng.random() < 0.5)
            fam.add(X)
            fam.add(full - X)
        changed = True
        while changed and len(fam) <= max_elements:
            changed = False
            for X, Y in combinations(sorted(fam, key=sorted), 2):
                for Z in (X | Y, X & Y):
                    if Z not in fam:
                        fam.add(Z)
                        fam.add(full - Z)
                        changed = True
        if len(fam) <= max_elements:
            break
    else:
        raise TooLarge("no closure within %d elements" % max_elements)
    return _subset_universe(sorted(fam, key=lambda X: (len(X), sorted(X))), full)


def _subset_universe(sets, full):
    names = {X: "e%02d" % i for i, X in enumerate(sets)}
    leq = [(names[X], names[Y]) for X in sets for Y in sets if X <= Y]
    inv = {names[X]: names[full - X] for X in sets}
    meet = {(names[X], names[Y]): names[X & Y] for X in sets for Y in sets}
    join = {(names[X], names[Y]): names[X | Y] for X in sets for Y in sets}
    return Universe.from_tables([names[X] for X in sets], leq, inv, meet, join)


def m3_universe():
    """Non-distributive five-element diamond with an order-reversing involution.

    Three incomparable self-inverse midpoints between a bottom and a top that
    swap under the involution; used for recorded (not asserted) experiments.
    """
    ids = ["bot", "a", "b", "c", "top"]
    mid = ["a", "b", "c"]
    leq = [("bot", x) for x in ids] + [(x, "top") for x in ids]
    inv = {"bot": "top", "top": "bot", "a": "a", "b": "b", "c": "c"}
    meet, join = {}, {}
    for x in ids:
        for y in ids:
            if x == y:
                meet[(x, y)] = x
                join[(x, y)] = x
            elif x == "bot" or y == "bot":
                meet[(x, y)] = "bot"
                join[(x, y)] = y if x == "bot" else x
            elif x == "top" or y == "top":
                meet[(x, y)] = y if x == "top" else x
                join[(x, y)] = "top"
            else:
                assert x in mid and y in mid
                meet[(x, y)] = "bot"
                join[(x, y)] = "top"
    return Universe.from_tables(ids, leq, inv, meet, join)
