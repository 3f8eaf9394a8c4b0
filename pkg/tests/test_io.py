"""Artifact persistence: JSON round trips, parse errors and DOT export."""

import json

import pytest

from tangletree.distinguish import build_efficient_nested_set
from tangletree.errors import ParseError
from tangletree.examples import bridged_cliques
from tangletree.graphs import path_graph
from tangletree.io import (export_dot, load_abstract_nested_set,
                           load_abstract_star_family, load_abstract_system,
                           load_graph, load_nested_set, load_star_family,
                           load_system, load_tangles, load_tree_decomposition,
                           load_universe, save_abstract_nested_set,
                           save_abstract_star_family, save_abstract_system,
                           save_graph, save_nested_set, save_report,
                           save_star_family, save_system, save_tangles,
                           save_tree_decomposition, save_universe)
from tangletree.seps import enumerate_separations, separation
from tangletree.tangles import CoverFamily, f_tangles
from tangletree.trees import NestedSet, to_stree, to_tree_decomposition
from tangletree.universe import random_distributive_universe, t_tilde_star


@pytest.fixture
def twin():
    G = bridged_cliques(4)
    S = enumerate_separations(G, 3)
    ts = f_tangles(S, CoverFamily(G, 3))
    return G, S, ts


def test_graph_round_trip(tmp_path, twin):
    G, S, ts = twin
    p = tmp_path / "g.json"
    text = save_graph(G, p, seed=7)
    obj = json.loads(text)
    assert obj["format"] == "graph" and obj["seed"] == 7
    H = load_graph(p)
    assert H.n == G.n and set(H.edge_tuples()) == set(G.edge_tuples())


def test_graph_edge_list_parsing(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("# a path\n0 1\n1 2   # middle\n\n2 3\n")
    G = load_graph(p)
    assert G.n == 4 and sorted(G.edge_tuples()) == [(0, 1), (1, 2), (2, 3)]
    p.write_text("0 1 2\n")
    with pytest.raises(ParseError):
        load_graph(p)
    p.write_text("a b\n")
    with pytest.raises(ParseError):
        load_graph(p)
    p.write_text("# nothing\n")
    with pytest.raises(ParseError):
        load_graph(p)


def test_format_tag_is_checked(tmp_path, twin):
    G, S, ts = twin
    p = tmp_path / "g.json"
    save_graph(G, p)
    with pytest.raises(ParseError):
        load_system(p)
    p.write_text("not json")
    with pytest.raises(ParseError):
        load_graph(p)


def test_system_round_trip(tmp_path, twin):
    G, S, ts = twin
    p = tmp_path / "s.json"
    save_system(S, p)
    S2 = load_system(p, G)
    assert S2.k == S.k
    assert set(S2.oriented) == set(S.oriented)


def test_tangles_round_trip(tmp_path, twin):
    G, S, ts = twin
    p = tmp_path / "t.json"
    save_tangles(ts, p)
    ts2 = load_tangles(p, G)
    assert len(ts2) == len(ts)
    assert [frozenset(O.chosen) for O in ts2] == [frozenset(O.chosen) for O in ts]
    with pytest.raises(ParseError):
        save_tangles([], p)


def test_star_family_round_trip(tmp_path, twin):
    G, S, ts = twin
    from tangletree.tangles import StarFamily
    Tk = CoverFamily(G, 3, stars_only=True)
    F = StarFamily(set(Tk.elements_over(S)), tag="twin")
    p = tmp_path / "f.json"
    save_star_family(F, p)
    got = load_star_family(p, G)
    assert got.tag == "twin" and got.elements == F.elements


def test_nested_set_round_trip(tmp_path, twin):
    G, S, ts = twin
    N = build_efficient_nested_set(ts, S)
    p = tmp_path / "n.json"
    ann = {s: (0, 1) for s in N}
    text = save_nested_set(N, p, annotations=ann)
    assert json.loads(text)["distinguishes"] == [[0, 1]] * len(N)
    N2 = load_nested_set(p, S)
    assert N2.members == N.members


def test_tree_decomposition_round_trip(tmp_path, twin):
    G, S, ts = twin
    N = build_efficient_nested_set(ts, S)
    TD = to_tree_decomposition(N, G)
    p = tmp_path / "td.json"
    text = save_tree_decomposition(TD, p)
    TD2 = load_tree_decomposition(p)
    assert TD2.bags == TD.bags and TD2.edges == TD.edges
    assert TD2.graph.n == G.n
    obj = json.loads(text)
    obj["nodes"][0]["id"] = 5
    p.write_text(json.dumps(obj))
    with pytest.raises(ParseError):
        load_tree_decomposition(p)


def test_universe_round_trip_is_byte_identical(tmp_path):
    u = random_distributive_universe(3)
    p1, p2 = tmp_path / "u1.json", tmp_path / "u2.json"
    text1 = save_universe(u, p1)
    u2 = load_universe(p1)
    text2 = save_universe(u2, p2)
    assert text1 == text2
    assert [x.name for x in u2] == [x.name for x in u]


def test_abstract_round_trips(tmp_path):
    u = random_distributive_universe(1)
    S = u.system()
    F = t_tilde_star(S)
    p = tmp_path / "a.json"
    save_abstract_system(S, p)
    S2 = load_abstract_system(p, u)
    assert set(S2) == set(S)
    save_abstract_star_family(F, p)
    F2 = load_abstract_star_family(p, u)
    assert F2.elements == F.elements and F2.tag == F.tag
    members = [x for x in S if not x.is_small and not x.is_cosmall
               and not x.is_degenerate][:1]
    N = NestedSet(S, members)
    save_abstract_nested_set(N, p)
    N2 = load_abstract_nested_set(p, S)
    assert N2.members == N.members


def test_report_reducer(tmp_path):
    p = tmp_path / "r.json"
    rep = {"ok": True, "count": 3, "bags": [frozenset({2, 1})],
           "pair": (0, 1), "extra": None}
    text = save_report(rep, p, seed=0)
    obj = json.loads(text)
    assert obj["report"]["bags"] == [[1, 2]]
    assert obj["report"]["pair"] == [0, 1]
    assert obj["seed"] == 0


def test_export_dot_tree_decomposition(tmp_path, twin):
    G, S, ts = twin
    N = build_efficient_nested_set(ts, S)
    TD = to_tree_decomposition(N, G)
    text = export_dot(TD)
    assert text.startswith("graph tangletree {")
    assert text.count("--") == len(TD.edges)
    assert '"{0,1,2,3}"' in text and '"{3,4,5,6,7}"' in text
    assert 'label="1"' in text  # the bridge separation has order 1
    assert export_dot(TD) == text


def test_export_dot_stree(twin):
    G, S, ts = twin
    a = separation(G, {0, 1, 2, 3}, {3, 4, 5, 6, 7})
    T = to_stree(NestedSet(S, [a]))
    text = export_dot(T)
    assert text.count(" -- ") == 1 and text.count("label=") == 3
    with pytest.raises(ParseError):
        export_dot("nope")


def test_export_dot_empty_nested_set(twin):
    G, S, ts = twin
    T = to_stree(NestedSet(S, []))
    text = export_dot(T)
    assert text.count(" -- ") == 0 and "n0" in text
