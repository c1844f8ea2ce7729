import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cvssagg.cvss import parse_vector
from cvssagg.errors import (
    DuplicateAsset,
    DuplicateVulnerability,
    NoEntryPoint,
    ScoreMismatch,
    SelfLoop,
    UnknownAsset,
    Unreachable,
    ValidationErrors,
)
from cvssagg.graph import (
    Asset,
    ExploitMaturity,
    Vulnerability,
    branch_of,
    build_graph,
    depth_map,
)

CRIT = parse_vector("AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H")


def vuln(cve="CVE-2020-0001", asset="a", score=9.8):
    return Vulnerability(cve, CRIT, score, ExploitMaturity.THEORETICAL, True, asset)


def error_types(exc):
    return [type(e) for e in exc.value.errors]


def test_openplc_depths(openplc):
    d = depth_map(openplc)
    assert d["webserver.py"] == 1
    assert d["libc"] == 3
    assert d["libgcc_s"] == 4
    assert d.max_depth == 4
    assert len(openplc.vulnerabilities) == 5


def test_entry_only():
    g = build_graph("a", ["a"], [])
    d = depth_map(g)
    assert dict(d.depths) == {"a": 1}
    assert d.max_depth == 1


def test_diamond_shortest_path():
    g = build_graph("a", "abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    # paths a-b-d and a-c-d both have 2 edges -> 3 nodes
    assert depth_map(g)["d"] == 3


def test_cycles_allowed():
    g = build_graph("a", "abc", [("a", "b"), ("b", "c"), ("c", "a")])
    assert dict(depth_map(g).depths) == {"a": 1, "b": 2, "c": 3}


def test_parallel_edges_collapse():
    g = build_graph("a", "ab", [("a", "b"), ("a", "b")])
    assert g.edges == frozenset({("a", "b")})


def test_unknown_asset_in_edge():
    with pytest.raises(ValidationErrors) as exc:
        build_graph("a", ["a"], [("a", "x")])
    assert error_types(exc) == [UnknownAsset]
    assert exc.value.errors[0].asset == "x"


def test_all_violations_reported():
    with pytest.raises(ValidationErrors) as exc:
        build_graph(
            "a",
            ["a", "b", "b", "c"],
            [("a", "a"), ("a", "zz")],
            [vuln(asset="ghost"), vuln(score=9.9)],
        )
    kinds = set(error_types(exc))
    assert kinds == {DuplicateAsset, SelfLoop, UnknownAsset, Unreachable, ScoreMismatch}


def test_no_entry_point():
    with pytest.raises(ValidationErrors) as exc:
        build_graph("a", [], [])
    assert NoEntryPoint in error_types(exc)


def test_duplicate_vulnerability_on_same_asset():
    with pytest.raises(ValidationErrors) as exc:
        build_graph("a", ["a"], [], [vuln(), vuln()])
    assert error_types(exc) == [DuplicateVulnerability]


def test_same_cve_on_two_assets_is_fine():
    g = build_graph("a", ["a", "b"], [("a", "b")], [vuln(asset="a"), vuln(asset="b")])
    assert len(g.vulnerabilities) == 2


def test_score_mismatch_lists_both_values():
    with pytest.raises(ValidationErrors) as exc:
        build_graph("a", ["a"], [], [vuln(score=9.9)])
    err = exc.value.errors[0]
    assert (err.stated, err.computed) == (9.9, 9.8)


def test_asset_display_names():
    g = build_graph("a", [Asset("a", "Alpha"), Asset("b")], [("a", "b")])
    assert g.assets["a"].label == "Alpha"
    assert g.assets["b"].label == "b"


def test_branches_follow_shortest_path_tree():
    g = build_graph(
        "e", ["e", "x", "y", "p", "q"],
        [("e", "x"), ("e", "y"), ("x", "p"), ("y", "p"), ("p", "q")],
    )
    b = branch_of(g)
    assert b["e"] is None
    assert b["x"] == "x" and b["y"] == "y"
    # p has two parents at depth 2; the smaller id wins
    assert b["p"] == "x" and b["q"] == "x"


# -- properties -------------------------------------------------------------


@st.composite
def connected_graphs(draw):
    n = draw(st.integers(1, 12))
    nodes = [f"n{i}" for i in range(n)]
    edges = set()
    # spanning arborescence from n0 guarantees reachability
    for i in range(1, n):
        edges.add((nodes[draw(st.integers(0, i - 1))], nodes[i]))
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=20))
    for a, b in extra:
        if a != b:
            edges.add((nodes[a], nodes[b]))
    return nodes, sorted(edges)


@settings(max_examples=200, deadline=None)
@given(connected_graphs())
def test_depth_matches_networkx(data):
    nodes, edges = data
    g = build_graph(nodes[0], nodes, edges)
    oracle = nx.DiGraph()
    oracle.add_nodes_from(nodes)
    oracle.add_edges_from(edges)
    lengths = nx.single_source_shortest_path_length(oracle, nodes[0])
    d = depth_map(g)
    assert dict(d.depths) == {k: v + 1 for k, v in lengths.items()}
    assert d.max_depth == max(d.depths.values())
    for src, dst in edges:
        assert d[dst] <= d[src] + 1
    assert all(1 <= x <= d.max_depth for x in d.depths.values())


@settings(max_examples=100, deadline=None)
@given(connected_graphs(), st.randoms(use_true_random=False))
def test_depth_independent_of_input_order(data, rnd):
    nodes, edges = data
    base = depth_map(build_graph(nodes[0], nodes, edges))
    shuffled_nodes, shuffled_edges = nodes[:], edges[:]
    rnd.shuffle(shuffled_nodes)
    rnd.shuffle(shuffled_edges)
    other = build_graph(nodes[0], shuffled_nodes, shuffled_edges)
    assert depth_map(other) == base
    assert branch_of(other) == branch_of(build_graph(nodes[0], nodes, edges))


@settings(max_examples=100, deadline=None)
@given(connected_graphs(), st.integers(0, 10_000))
def test_adding_an_edge_never_deepens(data, salt):
    nodes, edges = data
    before = depth_map(build_graph(nodes[0], nodes, edges))
    rnd = random.Random(salt)
    a, b = rnd.choice(nodes), rnd.choice(nodes)
    if a == b:
        return
    after = depth_map(build_graph(nodes[0], nodes, sorted(set(edges) | {(a, b)})))
    for node in nodes:
        assert after[node] <= before[node]


def test_diamond_by_path_enumeration():
    edges = [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]
    paths = []
    for k in range(1, 4):
        for mid in itertools.permutations("bc", k - 1):
            chain = ["a", *mid, "d"]
            if all(pair in edges for pair in zip(chain, chain[1:])):
                paths.append(chain)
    assert min(len(p) for p in paths) == depth_map(build_graph("a", "abcd", edges))["d"]
