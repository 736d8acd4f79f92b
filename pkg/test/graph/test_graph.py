import io
import networkx as nx
import pytest

from collections import Counter

from pavlovstab.errors import DisconnectedGraphError, GraphError, GraphFormatError
from pavlovstab.graph.generators import generate, sample_gnp
from pavlovstab.graph.graph import Graph, canonical_edge, spanning_tree, tree_walk
from pavlovstab.graph.io import parse_graph, write_graph
from pavlovstab.graph.matching import exhaustive_perfect_matching, perfect_matching
from pavlovstab.graph.structures import (
    BasicKind,
    GraphClass,
    classify_precluding_class,
    detect_structures,
    find_basic_subgraph,
    find_l7_partition,
    star_decomposition,
)


@pytest.mark.parametrize(
    ["family", "n", "expected_n", "expected_m"],
    [
        ("line", 1, 1, 0),
        ("line", 5, 5, 4),
        ("cycle", 3, 3, 3),
        ("cycle", 6, 6, 6),
        ("star", 4, 5, 4),
        ("complete", 5, 5, 10),
        ("k3", None, 3, 3),
        ("k4", None, 4, 6),
        ("k3-merge", None, 4, 5),
    ],
)
def test_generate(family: str, n: int | None, expected_n: int, expected_m: int):
    g = generate(family, n)
    assert (g.n, g.m) == (expected_n, expected_m)
    assert g.is_connected()


@pytest.mark.parametrize(["family", "n"], [("cycle", 2), ("line", 0), ("star", None)])
def test_generate_too_small(family: str, n: int | None):
    with pytest.raises(GraphError):
        generate(family, n)


def test_generate_canonical_numbering():
    assert generate("cycle", 4).edges == ((0, 1), (1, 2), (2, 3), (0, 3))
    assert generate("star", 3).edges == ((0, 1), (0, 2), (0, 3))


def test_graph_rejects_bad_edges():
    with pytest.raises(GraphError):
        Graph(3, ((1, 1),))
    with pytest.raises(GraphError):
        Graph(3, ((0, 1), (0, 1)))
    with pytest.raises(GraphError):
        Graph(3, ((0, 3),))


def test_parse_graph():
    g = parse_graph(["# L3", "", "3 2", "1 0", "1 2"], name="L3")
    assert g.n == 3
    assert g.edges == ((0, 1), (1, 2))
    assert g.label == "L3"


@pytest.mark.parametrize(
    ["lines", "expected_line"],
    [
        ([], None),
        (["3"], 1),
        (["3 2", "0 1", "1 1"], 3),
        (["# comment", "3 2", "0 1", "1 0"], 4),
        (["3 1", "0 x"], 2),
        (["3 1", "0 5"], 2),
        (["3 1", "0 1 2"], 2),
        (["3 3", "0 1", "1 2"], None),
    ],
)
def test_parse_graph_errors(lines: list[str], expected_line: int | None):
    with pytest.raises(GraphFormatError) as err:
        parse_graph(lines)
    assert err.value.line == expected_line


def test_write_graph_reparses():
    g = generate("k3-merge")
    fh = io.StringIO()
    write_graph(g, fh)
    assert fh.getvalue().startswith("# K3-merge\n4 5\n")
    assert parse_graph(fh.getvalue().splitlines()) == g


def test_sample_gnp():
    assert sample_gnp(12, 0.3, 7) == sample_gnp(12, 0.3, 7)
    assert sample_gnp(10, 0.0, 1).m == 0
    assert sample_gnp(10, 1.0, 1).m == 45
    with pytest.raises(GraphError):
        sample_gnp(5, 1.5, 0)


def test_perfect_matching_agrees_with_exhaustive():
    for nxg in nx.graph_atlas_g()[1:]:
        if nxg.number_of_nodes() > 6:
            break
        g = Graph.from_networkx(nxg)
        m = perfect_matching(g)
        oracle = exhaustive_perfect_matching(g)
        assert (m is None) == (oracle is None), g.edges
        if m is not None:
            assert m.is_perfect(g.n)
            assert all(g.has_edge(u, v) for u, v in m.pairs)


def test_perfect_matching_on_subset():
    g = generate("line", 6)
    assert perfect_matching(g, [1, 2, 3, 4]).pairs == ((1, 2), (3, 4))
    assert perfect_matching(g, [0, 2]) is None
    assert perfect_matching(g, [0, 1, 2]) is None


@pytest.mark.parametrize("g", [generate("cycle", 4), generate("k4"), generate("star", 4), generate("k3-merge")])
def test_tree_walk_covers_tree_edges_twice(g: Graph):
    t = spanning_tree(g)
    assert t.tree.is_tree()
    walk = tree_walk(t)
    assert len(walk) == 2 * (g.n - 1)
    assert walk[0].src == t.root and walk[-1].dst == t.root
    counts = Counter(canonical_edge(*s) for s in walk)
    assert counts == Counter({e: 2 for e in t.tree.edges})
    for a, b in zip(walk, walk[1:]):
        assert a.dst == b.src


def test_spanning_tree_is_dfs():
    t = spanning_tree(generate("cycle", 4))
    assert t.parent == (None, 0, 1, 2)
    with pytest.raises(DisconnectedGraphError):
        spanning_tree(Graph.from_edges(3, [(0, 1)]))


@pytest.mark.parametrize("n", range(2, 10))
def test_star_decomposition_partitions_trees(n: int):
    for nxt in nx.nonisomorphic_trees(n):
        t = spanning_tree(Graph.from_networkx(nxt))
        dec = star_decomposition(t)
        covered = [v for s in dec.stars for v in s.vertices]
        assert sorted(covered) == list(range(n))
        for s in dec.stars:
            assert s.leaves
            assert all(t.tree.has_edge(s.center, leaf) for leaf in s.leaves)


@pytest.mark.parametrize(["n", "expected_rest"], [(7, ()), (9, (7, 8))])
def test_find_l7_partition_on_lines(n: int, expected_rest: tuple[int, ...]):
    g = generate("line", n)
    part = find_l7_partition(g)
    assert part is not None
    assert part.path == tuple(range(7))
    assert part.rest == expected_rest
    assert part.matching.is_perfect(len(expected_rest))


def test_find_l7_partition_without_pendant():
    g = generate("cycle", 9)
    part = find_l7_partition(g)
    assert part is not None
    assert all(g.has_edge(a, b) for a, b in zip(part.path, part.path[1:]))
    assert part.matching.covers(part.rest)
    assert sorted(part.path + part.rest) == list(range(9))


@pytest.mark.parametrize("g", [generate("line", 8), generate("line", 5), generate("k3")])
def test_find_l7_partition_wrong_parity(g: Graph):
    assert find_l7_partition(g) is None


def test_find_l7_partition_isolated_vertex(monkeypatch: pytest.MonkeyPatch):
    def no_matching(*_):
        raise AssertionError("matching attempted")

    monkeypatch.setattr("pavlovstab.graph.structures.perfect_matching", no_matching)
    # Line on 0..7 with vertex 8 isolated.
    g = Graph(9, tuple((i, i + 1) for i in range(7)), name="L8+K1")
    assert find_l7_partition(g) is None


def test_find_l7_partition_matching_budget(monkeypatch: pytest.MonkeyPatch):
    calls = []

    def no_matching(g: Graph, vertices=None):
        calls.append(vertices)
        return None

    monkeypatch.setattr("pavlovstab.graph.structures.perfect_matching", no_matching)
    assert find_l7_partition(generate("complete", 9), matching_budget=5) is None
    assert len(calls) == 5


def test_find_l7_partition_skips_stranded_rest(monkeypatch: pytest.MonkeyPatch):
    calls = []
    original = perfect_matching

    def counting(g: Graph, vertices=None):
        calls.append(tuple(vertices))
        return original(g, vertices)

    monkeypatch.setattr("pavlovstab.graph.structures.perfect_matching", counting)
    # C7 with a triangle hung on vertex 0.
    edges = [(i, (i + 1) % 7) for i in range(7)] + [(0, 7), (7, 8), (0, 8)]
    g = Graph(9, tuple(canonical_edge(u, v) for u, v in edges), name="C7+K3")
    part = find_l7_partition(g)
    assert part is not None
    # Every matched rest is a pair of adjacent vertices.
    assert all(g.has_edge(*rest) for rest in calls)


@pytest.mark.parametrize(
    ["g", "cherry", "path5", "isolated"],
    [
        (generate("star", 2), True, False, ()),
        (generate("line", 5), False, True, ()),
        (generate("line", 4), False, False, ()),
        (Graph.from_edges(3, [(0, 1)]), False, False, (2,)),
    ],
)
def test_detect_structures(g: Graph, cherry: bool, path5: bool, isolated: tuple[int, ...]):
    res = detect_structures(g)
    assert res.has_cherry == cherry
    assert res.has_deg1_path5 == path5
    assert res.isolated_vertices == isolated


@pytest.mark.parametrize(
    ["g", "expected"],
    [
        (generate("cycle", 4), GraphClass.G1),
        (generate("k3-merge"), GraphClass.G1),
        (generate("k4"), GraphClass.G1),
        (generate("line", 3), GraphClass.G2),
        (generate("line", 5), GraphClass.G2),
        (generate("line", 4), GraphClass.G3),
        (generate("star", 3), GraphClass.G3),
        (generate("line", 6), GraphClass.Unclassified),
        (generate("k3"), GraphClass.Unclassified),
    ],
)
def test_classify_precluding_class(g: Graph, expected: GraphClass):
    assert classify_precluding_class(g) == expected


def test_classify_needs_two_edges():
    with pytest.raises(GraphError):
        classify_precluding_class(generate("line", 2))


@pytest.mark.parametrize(
    ["g", "expected_kind", "expected_size"],
    [
        (generate("k4"), BasicKind.K4, 4),
        (generate("k3-merge"), BasicKind.K3Merge, 4),
        (generate("cycle", 5), BasicKind.Cycle, 5),
    ],
)
def test_find_basic_subgraph(g: Graph, expected_kind: BasicKind, expected_size: int):
    basic = find_basic_subgraph(g)
    assert basic is not None
    assert basic.kind == expected_kind
    assert len(basic.vertices) == expected_size


@pytest.mark.parametrize("g", [generate("line", 5), generate("k3"), generate("star", 4)])
def test_find_basic_subgraph_none(g: Graph):
    assert find_basic_subgraph(g) is None
