"""Orientations, consistency, profiles, F-tangles, stars, closely-related."""

import random
from itertools import combinations

from .errors import (HypothesisFailure, Indistinct, NotAStar, NotInProfile,
                     TangletreeError, TooLarge)
from .seps import canonical


def same_separation(x, y):
    return x == y or x == y.inv


def is_star(members):
    """Pairwise r <= s.inv, no degenerate members."""
    members = list(members)
    for s in members:
        if s.is_degenerate:
            return False
    for r, s in combinations(members, 2):
        if not r.leq(s.inv):
            return False
    return True


def check_star(members):
    if not is_star(members):
        raise NotAStar("%r is not a star" % (sorted(members),))
    return frozenset(members)


def interior(star, ground):
    """Intersection of the B-sides; the whole ground vertex set for the empty star."""
    out = ground.vertices
    for s in star:
        out = out & s.B
    return out


def star_leq(sigma, tau):
    """sigma <= tau for proper stars: every s in sigma lies below some r in tau."""
    return all(any(s.leq(r) for r in tau) for s in sigma)


class Orientation:
    """One orientation per unoriented member of a system."""

    __slots__ = ("system", "chosen", "_hash")

    def __init__(self, system, chosen):
        chosen = frozenset(chosen)
        reps = {canonical(s) for s in system.oriented}
        got = {canonical(s) for s in chosen}
        if got != reps:
            raise ValueError("orientation does not cover the system exactly")
        for s in chosen:
            if s.inv in chosen and not s.is_degenerate:
                raise ValueError("both orientations of %r chosen" % (s,))
        self.system = system
        self.chosen = chosen
        self._hash = hash((system, chosen))

    def __contains__(self, s):
        return s in self.chosen

    def __iter__(self):
        return iter(sorted(self.chosen, key=lambda s: s.sort_key))

    def __len__(self):
        return len(self.chosen)

    def __eq__(self, other):
        return (isinstance(other, Orientation)
                and self.system == other.system and self.chosen == other.chosen)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Orientation(%d members)" % len(self.chosen)


def _pair_inconsistent(x, y):
    # violation r<s with r.inv and s both present: x=r.inv,y=s or y=r.inv,x=s
    if same_separation(x, y):
        return False
    if x.inv.leq(y):
        return True
    if y.inv.leq(x):
        return True
    return False


def is_consistent(O):
    """(True, None) or (False, (r_inv, s)) with r < s and both in O."""
    members = sorted(O, key=lambda s: s.sort_key)
    for x, y in combinations(members, 2):
        if same_separation(x, y):
            continue
        if x.inv.leq(y):
            return False, (x, y)
        if y.inv.leq(x):
            return False, (y, x)
    return True, None


class TangleSet:
    """Orientations with verified flags."""

    __slots__ = ("tangles", "flags")

    def __init__(self, tangles):
        self.tangles = list(tangles)
        self.flags = []
        for O in self.tangles:
            prof, _ = is_profile(O)
            reg, _ = is_regular(O)
            self.flags.append({
                "consistent": is_consistent(O)[0],
                "profile": prof,
                "regular": reg,
            })

    def __iter__(self):
        return iter(self.tangles)

    def __len__(self):
        return len(self.tangles)

    def __getitem__(self, i):
        return self.tangles[i]


# ---------------------------------------------------------------- families


class StarFamily:
    """Explicit family F as a set of subsets of oriented separations."""

    def __init__(self, elements, tag="user"):
        self.elements = frozenset(frozenset(e) for e in elements)
        self.tag = tag
        self._by_member = {}
        for el in self.elements:
            for s in el:
                self._by_member.setdefault(s, []).append(el)

    def violation(self, chosen, y):
        """An element of F inside chosen | {y} that contains y, else None."""
        for el in self._by_member.get(y, ()):
            if all(s == y or s in chosen for s in el):
                return el
        return None

    def subset_in(self, O):
        for el in sorted(self.elements, key=lambda e: sorted(s.sort_key for s in e)):
            if all(s in O for s in el):
                return el
        return None

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


class CoverFamily:
    """T_k for a graph: subsets of size <= 3 whose small sides cover G.

    With stars_only=True this is the star subfamily T_k*.
    """

    def __init__(self, G, k, stars_only=False):
        self.G = G
        self.k = k
        self.stars_only = stars_only
        self.tag = "Tkstars" if stars_only else "Tk"

    def _covers(self, seps):
        V = frozenset()
        for s in seps:
            V = V | s.A
        if V != self.G.vertices:
            return False
        covered = set()
        for s in seps:
            covered |= self.G.induced_edges(s.A)
        return covered == self.G.edges

    def _is_element(self, seps):
        if len(seps) > 3 or not self._covers(seps):
            return False
        if self.stars_only and not is_star(seps):
            return False
        return True

    def violation(self, chosen, y):
        if self._is_element({y}):
            return frozenset({y})
        # A-sides must cover V; descending |A| lets the loops break early
        n = self.G.n
        lst = sorted(chosen, key=lambda s: (-len(s.A), s.sort_key))
        for a in lst:
            if len(y.A) + len(a.A) < n:
                break
            if self._is_element({y, a}):
                return frozenset({y, a})
        for i, a in enumerate(lst):
            if len(y.A) + 2 * len(a.A) < n:
                break
            for b in lst[i + 1:]:
                if len(y.A) + len(a.A) + len(b.A) < n:
                    break
                if len(y.A | a.A | b.A) < n:
                    continue
                if self._is_element({y, a, b}):
                    return frozenset({y, a, b})
        return None

    def subset_in(self, O):
        n = self.G.n
        lst = sorted(O, key=lambda s: (-len(s.A), s.sort_key))
        for a in lst:
            if self._is_element({a}):
                return frozenset({a})
        for i, a in enumerate(lst):
            if 2 * len(a.A) < n:
                break
            for b in lst[i + 1:]:
                if len(a.A) + len(b.A) < n:
                    break
                if self._is_element({a, b}):
                    return frozenset({a, b})
        for i, a in enumerate(lst):
            if 3 * len(a.A) < n:
                break
            for j in range(i + 1, len(lst)):
                b = lst[j]
                if len(a.A) + 2 * len(b.A) < n:
                    break
                for c in lst[j + 1:]:
                    if len(a.A) + len(b.A) + len(c.A) < n:
                        break
                    if len(a.A | b.A | c.A) < n:
                        continue
                    if self._is_element({a, b, c}):
                        return frozenset({a, b, c})
        return None

    def elements_over(self, S):
        """Materialize the family over a (small) system; used by checks only."""
        lst = sorted(S, key=lambda s: s.sort_key)
        out = set()
        for r in range(1, 4):
            for c in combinations(lst, r):
                if self._is_element(set(c)):
                    out.add(frozenset(c))
        return out


def p_s_family(S, stars_only=False):
    """P_S: all {r, s, (r v s)*} with r v s in S; optionally only the stars."""
    out = set()
    lst = sorted(S, key=lambda s: s.sort_key)
    for i, r in enumerate(lst):
        for s in lst[i:]:
            j = r.join(s)
            if j in S:
                el = frozenset({r, s, j.inv})
                if stars_only and not is_star(el):
                    continue
                out.add(el)
    return StarFamily(out, tag="P_S-derived")


def profile_stand_in_family(S):
    """Stand-in for a friendly family whose tangles are the regular profiles.

    P_S restricted to stars, plus {r.inv} for every small or trivial r.
    """
    fam = p_s_family(S, stars_only=True)
    extra = set(fam.elements)
    from .seps import classify
    for r in S:
        if r.is_small:
            extra.add(frozenset({r.inv}))
        else:
            flags = classify(r, S)
            if flags["trivial"]:
                extra.add(frozenset({r.inv}))
    return StarFamily(extra, tag="profiles")


# ---------------------------------------------------------------- enumeration


def _backtrack_orientations(S, prune):
    """All total choices surviving the incremental prune; generic engine.

    prune(chosen, y) -> True to reject the branch extending chosen by y.
    Members are processed by increasing order; degenerates auto-included.
    """
    import sys
    reps = S.unoriented()
    degens = [s for s in reps if s.is_degenerate]
    rest = [s for s in reps if not s.is_degenerate]
    if len(rest) + 100 > sys.getrecursionlimit():
        sys.setrecursionlimit(2 * len(rest) + 1000)
    results = []
    base = []
    ok = True
    for d in degens:
        if prune(set(base), d):
            ok = False
            break
        base.append(d)
    if not ok:
        return results

    def rec(i, chosen):
        if i == len(rest):
            results.append(frozenset(chosen))
            return
        for y in (rest[i], rest[i].inv):
            if not prune(chosen, y):
                chosen.add(y)
                rec(i + 1, chosen)
                chosen.remove(y)

    rec(0, set(base))
    return results


def f_tangles(S, F):
    """All F-tangles of S by backtracking; see brute_force_f_tangles for the oracle."""

    def prune(chosen, y):
        for x in chosen:
            if _pair_inconsistent(x, y):
                return True
        if F.violation(chosen, y) is not None:
            return True
        return False

    out = []
    for chosen in _backtrack_orientations(S, prune):
        O = Orientation(S, chosen)
        assert is_consistent(O)[0] and F.subset_in(O.chosen) is None
        out.append(O)
    out.sort(key=lambda O: tuple(s.sort_key for s in O))
    return TangleSet(out)


def brute_force_f_tangles(S, F, limit=18):
    """Oracle: filter all 2^|S| orientations; refuses beyond the limit."""
    reps = S.unoriented()
    nd = [s for s in reps if not s.is_degenerate]
    if len(nd) > limit:
        raise TooLarge("%d members > %d" % (len(nd), limit))
    base = [s for s in reps if s.is_degenerate]
    out = []
    for mask in range(2 ** len(nd)):
        chosen = set(base)
        for i, s in enumerate(nd):
            chosen.add(s if mask >> i & 1 else s.inv)
        O = Orientation(S, chosen)
        if not is_consistent(O)[0]:
            continue
        if F.subset_in(O.chosen) is not None:
            continue
        out.append(O)
    out.sort(key=lambda O: tuple(s.sort_key for s in O))
    return TangleSet(out)


def is_profile(O):
    """No (r v s)* inside O for r,s in O with r v s in the system."""
    members = sorted(O, key=lambda s: s.sort_key)
    S = O.system
    for i, r in enumerate(members):
        for s in members[i:]:
            j = r.join(s)
            if j in S and j.inv in O and not j.is_degenerate:
                return False, (r, s)
    return True, None


def is_regular(O):
    for s in sorted(O, key=lambda s: s.sort_key):
        if s.is_cosmall and not s.is_degenerate:
            return False, s
    return True, None


def regular_profiles(S):
    """All regular profiles of S.

    Small members are pre-oriented small-side-first (forced by regularity),
    then the proper members are enumerated by backtracking.
    """
    forced = set()
    for s in S.unoriented():
        if s.is_degenerate:
            forced.add(s)
        elif s.is_small:
            forced.add(s)
        elif s.is_cosmall:
            forced.add(s.inv)

    def prune(chosen, y):
        if y.is_cosmall and not y.is_degenerate:
            return True
        if not y.is_small and y.inv in forced:
            return True
        for x in chosen:
            if _pair_inconsistent(x, y):
                return True
        # profile pruning: adding y must not complete {r, s, (r v s)*}
        for x in chosen:
            j = x.join(y)
            if j in S and j.inv in chosen | {y} and not j.is_degenerate:
                return True
        return False

    out = []
    seen = set()
    for chosen in _backtrack_orientations(S, prune):
        chosen = frozenset(chosen | forced) if not forced <= chosen else frozenset(chosen)
        if chosen in seen:
            continue
        seen.add(chosen)
        O = Orientation(S, chosen)
        if is_consistent(O)[0] and is_profile(O)[0] and is_regular(O)[0]:
            out.append(O)
    out.sort(key=lambda O: tuple(s.sort_key for s in O))
    return TangleSet(out)


# ---------------------------------------------------------------- relations


def closely_related(s, P):
    """s in P and r ^ s in S for every r in P; witness is a failing r."""
    if s not in P:
        raise NotInProfile("%r not in the profile" % (s,))
    for r in P:
        if r.meet(s) not in P.system:
            return False, r
    return True, None


def distinguishers(P1, P2):
    """(all, efficient): members oriented oppositely; efficient = min order."""
    if P1 == P2:
        raise Indistinct("orientations are identical")
    out = []
    for s in P1:
        if s.is_degenerate:
            continue
        if s.inv in P2:
            out.append(canonical(s))
    out = sorted(set(out), key=lambda s: s.sort_key)
    if not out:
        return [], []
    m = min(s.order for s in out)
    return out, [s for s in out if s.order == m]


def distinguishes(s, P1, P2):
    return (s in P1 and s.inv in P2) or (s.inv in P1 and s in P2)


def is_good(s, tangles):
    """Does s distinguish some pair with both orientations closely related?

    s may be given in either orientation; the unoriented separation is meant.
    """
    ts = list(tangles)
    for i, P in enumerate(ts):
        for Q in ts[i + 1:]:
            for a in (s, s.inv):
                if a in P and a.inv in Q:
                    if closely_related(a, P)[0] and closely_related(a.inv, Q)[0]:
                        return True, (P, Q)
    return False, None


def star_status(sigma, tangles):
    sigma = check_star(sigma)
    owners = [P for P in tangles if all(s in P for s in sigma)]
    return {
        "owners": owners,
        "essential": len(owners) >= 1,
        "exclusive": len(owners) == 1,
    }


def guarded_infimum(s, M, assignments):
    """r := s ^ meet(M); in S and closely related when the hypotheses hold.

    assignments maps each m in M to a profile containing s to which m is
    closely related.
    """
    for m in M:
        P = assignments.get(m)
        if P is None or s not in P or not closely_related(m, P)[0]:
            raise HypothesisFailure("m=%r lacks a valid profile assignment" % (m,))
    r = s
    for m in sorted(M, key=lambda x: x.sort_key):
        r = r.meet(m)
    return r


def check_star_family(F, S, seed=0, samples=200):
    """Empirical friendliness report for an explicit family over S."""
    from .refine import ShiftContext
    from .seps import classify
    elements = sorted(
        (el for el in F), key=lambda e: sorted(s.sort_key for s in e))
    report = {"standard": True, "all_stars": True, "contains_inverse_of_smalls": True,
              "profile_respecting": True, "shift_closed": True, "witnesses": {}}
    for el in elements:
        if not is_star(el):
            report["all_stars"] = False
            report["witnesses"].setdefault("not_a_star", el)
            break
    fam = set(frozenset(e) for e in elements)
    for r in S:
        flags = classify(r, S)
        if flags["trivial"] and frozenset({r.inv}) not in fam:
            report["standard"] = False
            report["witnesses"].setdefault("standard", r)
            break
    for r in S:
        if r.is_small and not r.is_degenerate and frozenset({r.inv}) not in fam:
            report["contains_inverse_of_smalls"] = False
            report["witnesses"].setdefault("smalls", r)
            break
    for O in f_tangles(S, StarFamily(fam)):
        ok, w = is_profile(O)
        if not ok:
            report["profile_respecting"] = False
            report["witnesses"].setdefault("profile", w)
            break
    rng = random.Random(seed)
    elems = sorted(S, key=lambda s: s.sort_key)
    els = sorted(fam, key=lambda e: sorted(s.sort_key for s in e))
    tried = 0
    while tried < samples and els:
        tried += 1
        r = rng.choice(elems)
        s = rng.choice(elems)
        sigma = rng.choice(els)
        # only the S-tree shifting situation: r <= s, s emulates r, the star
        # has exactly one member above r and the rest below r.inv
        if r == s or s == r.inv or not r.leq(s):
            continue
        try:
            ctx = ShiftContext(S, r, s)
        except TangletreeError:
            continue
        above = [x for x in sigma if r.leq(x)]
        below = [x for x in sigma if x.leq(r.inv) and not r.leq(x)]
        if len(above) != 1 or len(above) + len(below) != len(sigma):
            continue
        if r.inv in sigma:
            continue
        shifted = frozenset(ctx.shift(x) if r.leq(x) else ctx.shift(x.inv).inv
                            for x in sigma)
        if len(shifted) != len(sigma) or not is_star(shifted):
            continue
        if shifted not in fam:
            report["shift_closed"] = False
            report["witnesses"].setdefault("shift", (r, s, sigma, shifted))
    return report
