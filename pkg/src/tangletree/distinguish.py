"""Build a nested set of efficient distinguishers for a set of tangles."""

from .errors import NoTangles, VerificationFailed
from .seps import canonical, nested
from .tangles import distinguishers, distinguishes, is_good
from .trees import NestedSet


class DistinguisherTable:
    """Per tangle pair: minimum distinguishing order and the efficient list."""

    def __init__(self, tangles):
        self.tangles = list(tangles)
        self.table = {}
        n = len(self.tangles)
        for i in range(n):
            for j in range(i + 1, n):
                alls, eff = distinguishers(self.tangles[i], self.tangles[j])
                self.table[(i, j)] = {
                    "min_order": eff[0].order if eff else None,
                    "efficient": eff,
                    "all": alls,
                }

    def pairs(self):
        return sorted(self.table)

    def __getitem__(self, pair):
        i, j = pair
        if i > j:
            i, j = j, i
        return self.table[(i, j)]


def _orient_into(t, P):
    """The orientation of t lying in P, or None."""
    if t in P:
        return t
    if t.inv in P:
        return t.inv
    return None


def build_efficient_nested_set(tangles, S):
    """Greedy uncrossing construction of a nested set N~ such that every
    tangle pair is distinguished and every member efficiently distinguishes
    some pair.  Pairs are processed by increasing minimum distinguishing
    order; crossing candidates are replaced by the corner s ^ t.inv with t
    oriented into both profiles, which keeps the order minimal and strictly
    lowers the crossing count.
    """
    ts = list(tangles)
    if not ts:
        raise NoTangles("no tangles to distinguish")
    table = DistinguisherTable(ts)
    order_pairs = sorted(
        table.pairs(),
        key=lambda p: (table[p]["min_order"] if table[p]["min_order"] is not None else -1, p))
    chosen = []
    budget = max(1, len(S)) ** 2
    for (i, j) in order_pairs:
        entry = table[(i, j)]
        if entry["min_order"] is None:
            raise VerificationFailed(
                "tangles %d and %d are not distinguishable in S" % (i, j))
        P, Q = ts[i], ts[j]
        if any(distinguishes(t, P, Q) for t in chosen):
            continue
        s = entry["efficient"][0]
        if s not in P:
            s = s.inv
        steps = 0
        while True:
            crossing = [t for t in chosen if not nested(s, t)]
            if not crossing:
                break
            steps += 1
            if steps > budget:
                raise VerificationFailed("uncrossing did not terminate")
            t = min(crossing, key=lambda t: t.sort_key)
            ti = _orient_into(t, P)
            tj = _orient_into(t, Q)
            assert ti is not None and ti == tj, "chosen member distinguishes the pair"
            before = len(crossing)
            s2 = s.meet(ti.inv)
            if s2.order > s.order or not (s2 in P and s2.inv in Q):
                raise VerificationFailed("corner replacement lost efficiency")
            s = s2
            after = sum(1 for t in chosen if not nested(s, t))
            if after >= before:
                raise VerificationFailed("corner replacement did not uncross")
        chosen.append(canonical(s))
    N = NestedSet(S, chosen)
    report = verify_premise(N, ts)
    if not all(report[f] for f in ("nested", "distinguishes_all", "each_member_efficient")):
        raise VerificationFailed("post-hoc check failed: %r" % (report,))
    return N


def verify_premise(N, tangles):
    """Premise of the refinement theorems for N and the given tangles."""
    ts = list(tangles)
    table = DistinguisherTable(ts)
    report = {"nested": True, "distinguishes_all": True,
              "each_member_efficient": True, "each_member_good": True,
              "witnesses": {}}
    for (i, j) in table.pairs():
        if not any(distinguishes(s, ts[i], ts[j]) for s in N):
            report["distinguishes_all"] = False
            report["witnesses"].setdefault("undistinguished", (i, j))
    for s in N:
        eff = False
        for (i, j) in table.pairs():
            m = table[(i, j)]["min_order"]
            if m is not None and s.order == m and distinguishes(s, ts[i], ts[j]):
                eff = True
                break
        if not eff:
            report["each_member_efficient"] = False
            report["witnesses"].setdefault("inefficient", s)
        good, _ = is_good(s, ts)
        if not good:
            report["each_member_good"] = False
            report["witnesses"].setdefault("not_good", s)
    return report
