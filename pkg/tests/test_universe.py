"""Abstract universes: lattice checks, unscrambling, near-maximal stars and
the essential-node refinement."""

import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from itertools import combinations

from tangletree.distinguish import build_efficient_nested_set
from tangletree.errors import HypothesisFailure, NonDistributive, ParseError
from tangletree.examples import bridged_cliques
from tangletree.seps import enumerate_separations, nested
from tangletree.tangles import (CoverFamily, Orientation, StarFamily,
                                closely_related, f_tangles, is_profile,
                                star_leq)
from tangletree.trees import NestedSet, nodes
from tangletree.universe import (Universe, check_universe, m3_universe,
                                 maximal_star_above, is_maximal_star,
                                 max_and_closely_related_report, near_max_star,
                                 profile_nested_part,
                                 random_distributive_universe,
                                 refine_essential_abstract, star_profile_status,
                                 t_prime, t_tilde_star, theorem_1_3,
                                 unscramble_pair, unscramble_set)


def _crossing_pairs(P):
    members = sorted(P, key=lambda s: s.sort_key)
    for r, s in combinations(members, 2):
        if not nested(r, s):
            yield r, s


# ------------------------------------------------------------------ checking


def test_check_universe_on_subset_lattices():
    for seed in range(4):
        u = random_distributive_universe(seed)
        rep = check_universe(u)
        assert rep["lattice"]
        assert rep["involution_order_reversing"]
        assert rep["distributive"]
        assert u.is_distributive()


def test_check_universe_flags_m3():
    rep = check_universe(m3_universe())
    assert rep["lattice"]
    assert rep["involution_order_reversing"]
    assert not rep["distributive"]
    assert ("meet-over-join" in rep["witnesses"]
            or "join-over-meet" in rep["witnesses"])


def test_from_tables_validation():
    with pytest.raises(ParseError):
        Universe.from_tables(["a", "a"], [], {"a": "a"}, {}, {})
    with pytest.raises(ParseError):
        Universe.from_tables(["a", "b"], [], {"a": "b"}, {}, {})
    with pytest.raises(ParseError):
        Universe.from_tables(["a"], [], {"a": "a"}, {}, {("a", "a"): "a"})


def test_bipartition_universe():
    u = Universe.bipartitions(3)
    rep = check_universe(u)
    assert rep["lattice"] and rep["distributive"]


def test_graph_universe_matches_separations():
    G = bridged_cliques(2)
    u = Universe.of_graph(G)
    S = enumerate_separations(G, G.n + 1)
    assert set(u) == set(S.oriented)


# ------------------------------------------------------------------ families


def test_t_prime_inside_t_tilde_star():
    for seed in range(4):
        S = random_distributive_universe(seed).system()
        F = t_tilde_star(S)
        for el in t_prime(S):
            if any(x.is_degenerate for x in el):
                continue
            assert el in F.elements


def test_abstract_tangles_are_profiles():
    for seed in range(6):
        S = random_distributive_universe(seed).system()
        ts = f_tangles(S, t_tilde_star(S))
        assert len(ts) >= 1
        for O in ts:
            assert is_profile(O)[0]


# --------------------------------------------------------------- narrowness


def test_star_profile_status_empty_set():
    S = random_distributive_universe(1).system()
    ts = f_tangles(S, t_tilde_star(S))
    P = ts[0]
    rep = star_profile_status([], P)
    # with an empty join, narrow means every member of P is small
    assert rep["narrow"] == all(x.is_small for x in P)


def test_star_profile_status_requires_membership():
    S = random_distributive_universe(1).system()
    ts = f_tangles(S, t_tilde_star(S))
    P = ts[0]
    outside = next(x for x in S if x not in P)
    with pytest.raises(HypothesisFailure):
        star_profile_status([outside], P)


def test_cosmall_meet_algebra():
    """u ^ w is co-small whenever u, w are co-small with u >= w.inv, w >= u.inv."""
    for seed in range(4):
        u = random_distributive_universe(seed)
        elems = sorted(u, key=lambda x: x.sort_key)
        for a in elems:
            if not a.inv.leq(a):
                continue
            for b in elems:
                if not b.inv.leq(b):
                    continue
                if b.inv.leq(a) and a.inv.leq(b):
                    m = a.meet(b)
                    assert m.inv.leq(m), (a, b)


# ------------------------------------------------------------- unscrambling


def _profiles_with_crossings(seed):
    u = random_distributive_universe(seed)
    S = u.system()
    return u, S, f_tangles(S, t_tilde_star(S))


@pytest.mark.parametrize("seed", range(6))
def test_unscramble_pair_postconditions(seed):
    u, S, ts = _profiles_with_crossings(seed)
    for P in ts:
        for r, s in _crossing_pairs(P):
            if not (closely_related(r, P)[0] and closely_related(s, P)[0]):
                continue
            r2, s2 = unscramble_pair(r, s, frozenset(), P)
            assert nested(r2, s2)
            assert r2 in P and s2 in P
            assert closely_related(r2, P)[0] and closely_related(s2, P)[0]
            assert r.meet(s.inv).leq(r2) and r2.leq(r)
            # both distributive identities hold in a subset universe
            assert s2 == s.meet(r2.inv)
            assert r2 == r.meet(s2.inv)


@pytest.mark.parametrize("seed", range(6))
def test_unscramble_set_postconditions(seed):
    u, S, ts = _profiles_with_crossings(seed)
    for P in ts:
        R = [x for x in P if closely_related(x, P)[0]
             and not x.is_degenerate]
        narrow_before = star_profile_status(
            [x for x in R], P)["narrow"] if R else True
        out = unscramble_set(R, frozenset(), P)
        for a, b in combinations(out, 2):
            assert nested(a, b)
        for x in out:
            assert x in P and closely_related(x, P)[0]
        if narrow_before:
            assert star_profile_status(out, P)["narrow"]


def test_unscramble_pair_nested_inputs_unchanged():
    u, S, ts = _profiles_with_crossings(0)
    P = ts[0]
    members = sorted(P, key=lambda s: s.sort_key)
    r = members[0]
    assert unscramble_pair(r, r, frozenset(), P) == (r, r)


def test_unscramble_warns_without_distributivity():
    u = m3_universe()
    S = u.system()
    bot = u.element("bot")
    a, b, c = u.element("a"), u.element("b"), u.element("c")
    P = Orientation(S, {bot, a, b, c})
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        r2, s2 = unscramble_pair(a, b, frozenset(), P)
        assert any("non-distributive" in str(x.message) for x in w)
    assert nested(r2, s2)


# --------------------------------------------------------- near-maximal stars


@pytest.mark.parametrize("seed", range(8))
def test_near_max_star_certificates(seed):
    u, S, ts = _profiles_with_crossings(seed)
    for P in ts:
        sp = near_max_star(frozenset(), P)
        status = star_profile_status(sp, P)
        assert status["is_star"] and status["narrow"] and status["near_maximal"]
        for s in sp:
            assert closely_related(s, P)[0]


def test_near_max_star_above_sigma():
    # graph instance: k = 2 twin cliques, sigma = a bridge separation
    G = bridged_cliques(4)
    S = enumerate_separations(G, 2)
    Tk = CoverFamily(G, 2, stars_only=True)
    F = StarFamily(set(Tk.elements_over(S)) | set(t_prime(S).elements),
                   tag="Tkstars+Tprime")
    ts = f_tangles(S, F)
    assert len(ts) == 2
    from tangletree.seps import separation
    left = separation(G, {4, 5, 6, 7}, {0, 1, 2, 3, 4})
    P = next(t for t in ts if left in t)
    sp = near_max_star(frozenset({left}), P, tangles=ts)
    assert star_leq({left}, sp)
    status = star_profile_status(sp, P)
    assert status["narrow"] and status["near_maximal"]


def test_maximal_star_enumeration_agrees():
    from tangletree.errors import TooLarge
    checked = 0
    for seed in range(6):
        u, S, ts = _profiles_with_crossings(seed)
        for P in ts:
            sp = near_max_star(frozenset(), P)
            try:
                spp = maximal_star_above(sp, P)
            except TooLarge:
                continue
            ok, wit = is_maximal_star(spp, P)
            assert ok, wit
            assert star_leq([s for s in sp if not s.is_small], spp)
            rep = max_and_closely_related_report(P)
            assert "exists" in rep and "witness" in rep
            checked += 1
    assert checked >= 3


# ------------------------------------------------------- essential refinement


def test_theorem_1_3_needs_distributivity():
    u = m3_universe()
    S = u.system()
    with pytest.raises(NonDistributive):
        theorem_1_3(S, t_tilde_star(S), NestedSet(S, []))


def _graph_instance_k2():
    G = bridged_cliques(4)
    S = enumerate_separations(G, 2)
    Tk = CoverFamily(G, 2, stars_only=True)
    F = StarFamily(set(Tk.elements_over(S)) | set(t_prime(S).elements),
                   tag="Tkstars+Tprime")
    ts = f_tangles(S, F)
    return G, S, F, ts


def test_theorem_1_3_on_twin_cliques():
    G, S, F, ts = _graph_instance_k2()
    assert len(ts) == 2
    Nt = build_efficient_nested_set(ts, S)
    N = theorem_1_3(S, F, Nt, tangles=ts)
    assert Nt.members <= N.members
    from tangletree.refine import family_is_element
    for node in nodes(N):
        owners = [P for P in ts if all(x in P for x in node)]
        if owners:
            ok, wit = is_maximal_star(node, owners[0])
            assert ok, wit
        else:
            assert family_is_element(F, node)


@pytest.mark.parametrize("seed", range(6))
def test_theorem_1_3_on_table_universes(seed):
    u = random_distributive_universe(seed)
    S = u.system()
    F = t_tilde_star(S)
    ts = f_tangles(S, F)
    Nt = (build_efficient_nested_set(ts, S)
          if len(ts) > 1 else NestedSet(S, []))
    N = theorem_1_3(S, F, Nt, tangles=ts)
    assert Nt.members <= N.members
    homes = 0
    for node in nodes(N):
        owners = [P for P in ts if all(x in P for x in node)]
        homes += len(owners)
        assert len(owners) <= 1
    assert homes == len(ts)


def test_refine_essential_abstract_leaves():
    G, S, F, ts = _graph_instance_k2()
    from tangletree.seps import separation
    left = separation(G, {4, 5, 6, 7}, {0, 1, 2, 3, 4})
    P = next(t for t in ts if left in t)
    tree = refine_essential_abstract(frozenset({left}), P, F, tangles=ts)
    assert left in set(tree.leaf_separations())


def test_profile_nested_part():
    u, S, ts = _profiles_with_crossings(0)
    P = ts[0]
    part = profile_nested_part(P, frozenset())
    assert part == list(P)


# --------------------------------------------------------------- generators


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 1000))
def test_random_universe_reproducible(seed):
    a = random_distributive_universe(seed)
    b = random_distributive_universe(seed)
    assert [x.name for x in a] == [x.name for x in b]
    assert len(a) <= 40
