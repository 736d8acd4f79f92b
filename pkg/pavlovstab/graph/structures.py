import networkx as nx

from collections import defaultdict, deque
from dataclasses import dataclass
from enum import StrEnum
from functools import cached_property
from typing import Iterator, NamedTuple

from loguru import logger

from ..errors import GraphError
from .constants import L7_LENGTH, L7_MATCHING_BUDGET, L7_PATH_BUDGET
from .graph import Graph, RootedTree
from .matching import Matching, perfect_matching


class Star(NamedTuple):
    center: int
    leaves: tuple[int, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.center, *self.leaves)


@dataclass(frozen=True)
class StarDecomposition:
    stars: tuple[Star, ...]

    @cached_property
    def part_of(self) -> dict[int, int]:
        return {v: i for i, s in enumerate(self.stars) for v in s.vertices}

    def vertex_sets(self) -> list[frozenset[int]]:
        return [frozenset(s.vertices) for s in self.stars]


def star_decomposition(t: RootedTree) -> StarDecomposition:
    """
    Peel a rooted tree into node-disjoint stars.

    The root and its children form a star; they are removed and every grandchild roots the next
    peel. A grandchild without children would be left isolated. It is attached to its parent `c`
    instead: if `c` is the only leaf of its star the star is re-centered at `c`, otherwise `c`
    leaves the star and centers a new one with its stranded children.

    ### Args
    `t`
        Rooted tree with at least two vertices.

    ### Returns
    `StarDecomposition` whose vertex sets partition the tree's vertices.
    """
    if t.n < 2:
        raise GraphError("A single vertex cannot be covered by a star.")

    stars: list[Star] = []
    pending = deque([t.root])
    while pending:
        r = pending.popleft()
        kids = t.children(r)
        stranded: dict[int, list[int]] = defaultdict(list)
        for c in kids:
            for gc in t.children(c):
                if t.children(gc):
                    pending.append(gc)
                else:
                    stranded[c].append(gc)

        center, leaves = r, list(kids)
        for c in kids:
            if c not in stranded:
                continue
            if len(leaves) > 1:
                leaves.remove(c)
                stars.append(Star(c, tuple(stranded[c])))
            else:
                center, leaves = c, [r, *stranded[c]]
        stars.append(Star(center, tuple(sorted(leaves))))

    return StarDecomposition(tuple(sorted(stars)))


class L7Partition(NamedTuple):
    # Path vertices x0..x6 in order; consecutive ones are adjacent.
    path: tuple[int, ...]
    rest: tuple[int, ...]
    matching: Matching


def find_l7_partition(
    g: Graph, *, budget: int = L7_PATH_BUDGET, matching_budget: int = L7_MATCHING_BUDGET
) -> L7Partition | None:
    """
    Split the vertices into a 7-path and a perfectly matchable rest.

    First follows the degree-1 construction: `x0` of degree one, `x1` its neighbor, and
    alternating matching partners / fresh neighbors in a perfect matching of `G - x0`. When no
    degree-1 vertex yields a partition, enumerates 7-vertex paths and keeps the first whose
    complement has a perfect matching.

    ### Args
    `g`
        Any graph.
    `budget`
        Maximum candidate paths examined by the fallback search.
    `matching_budget`
        Maximum perfect matchings the fallback search attempts.

    ### Returns
    `L7Partition` or `None`.
    """
    if g.n < L7_LENGTH or (g.n - L7_LENGTH) % 2 == 1:
        return None
    if any(g.degree(v) == 0 for v in range(g.n)):
        return None

    for x0 in range(g.n):
        if g.degree(x0) != 1:
            continue
        res = _l7_from_pendant(g, x0)
        if res is not None:
            return res

    logger.info(f"No pendant construction on {g.label}; searching 7-paths.")
    attempts = 0
    for i, path in enumerate(_seven_paths(g)):
        if i >= budget or attempts >= matching_budget:
            logger.warning(f"7-path search budget exhausted on {g.label} after {i} paths.")
            return None
        on_path = set(path)
        rest = [v for v in range(g.n) if v not in on_path]
        if any(all(w in on_path for w in g.adjacency[v]) for v in rest):
            continue
        attempts += 1
        m = perfect_matching(g, rest)
        if m is not None:
            return L7Partition(path, tuple(rest), m)
    return None


def _l7_from_pendant(g: Graph, x0: int) -> L7Partition | None:
    x1 = g.adjacency[x0][0]
    h = [v for v in range(g.n) if v != x0]
    m = perfect_matching(g, h)
    if m is None:
        return None

    x2 = m.mate[x1]
    for x3 in g.adjacency[x2]:
        if x3 in (x0, x1):
            continue
        x4 = m.mate[x3]
        for x5 in g.adjacency[x4]:
            if x5 in (x0, x1, x2, x3):
                continue
            x6 = m.mate[x5]
            path = (x0, x1, x2, x3, x4, x5, x6)
            rest = tuple(v for v in range(g.n) if v not in path)
            return L7Partition(path, rest, m.restricted(rest))
    return None


def _seven_paths(g: Graph) -> Iterator[tuple[int, ...]]:
    # Each undirected path is produced once: first vertex smaller than last.
    for start in range(g.n):
        stack = [(start, iter(g.adjacency[start]))]
        path = [start]
        on_path = {start}
        while stack:
            _, it = stack[-1]
            w = next(it, None)
            if w is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if w in on_path:
                continue
            if len(path) == L7_LENGTH - 1:
                if start < w:
                    yield (*path, w)
                continue
            path.append(w)
            on_path.add(w)
            stack.append((w, iter(g.adjacency[w])))


class Structures(NamedTuple):
    has_cherry: bool
    has_deg1_path5: bool
    isolated_vertices: tuple[int, ...]


def detect_structures(g: Graph) -> Structures:
    """
    Detect the obstructions of the random graph argument.

    * cherry: two degree-1 vertices at distance exactly 2.
    * degree-1 5-path: distinct `x0..x4`, consecutive ones adjacent, `deg(x0) = deg(x4) = 1`.
    """
    pendants = [v for v in range(g.n) if g.degree(v) == 1]
    isolated = tuple(v for v in range(g.n) if g.degree(v) == 0)

    has_cherry = False
    has_path5 = False
    for i, a in enumerate(pendants):
        for b in pendants[i + 1 :]:
            na, nb = g.adjacency[a][0], g.adjacency[b][0]
            if na == nb:
                has_cherry = True
                continue
            if na == b:
                continue
            middle = set(g.adjacency[na]) & set(g.adjacency[nb])
            if middle - {a, b}:
                has_path5 = True

    return Structures(has_cherry, has_path5, isolated)


class GraphClass(StrEnum):
    """
    * G1: has a cycle of length at least four.
    * G2: no such cycle and an even number of edges.
    * G3: a tree on `4k` vertices.
    """

    G1 = "G1"
    G2 = "G2"
    G3 = "G3"
    Unclassified = "none"


def has_long_cycle(g: Graph) -> bool:
    # A 2-connected block on 4+ vertices always carries a cycle of length >= 4.
    return any(len(b) >= 4 for b in nx.biconnected_components(g.to_networkx()))


def classify_precluding_class(g: Graph) -> GraphClass:
    """
    Classify a connected graph with at least two edges into G1, G2 or G3 (checked in that
    order), or `none`.
    """
    g.require_connected()
    if g.m < 2:
        raise GraphError(f"Classification needs m >= 2, got {g.m}.")

    if has_long_cycle(g):
        return GraphClass.G1
    elif g.m % 2 == 0:
        return GraphClass.G2
    elif g.is_tree() and g.n % 4 == 0:
        return GraphClass.G3
    return GraphClass.Unclassified


class BasicKind(StrEnum):
    Cycle = "cycle"
    K3Merge = "k3-merge"
    K4 = "k4"


class BasicSubgraph(NamedTuple):
    # Vertices of a cycle of length >= 4 in cycle order.
    cycle: tuple[int, ...]
    kind: BasicKind

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.cycle)


def find_basic_subgraph(g: Graph) -> BasicSubgraph | None:
    """
    Find a vertex set inducing a minimal graph with a cycle of length at least four: an induced
    cycle `C_k` (k >= 4), `K3-merge` or `K4`.

    ### Returns
    `BasicSubgraph` or `None` if `g` has no cycle of length >= 4.
    """
    # A chorded 4-cycle: an edge with two common neighbors.
    for u, v in g.edges:
        common = sorted(set(g.adjacency[u]) & set(g.adjacency[v]))
        if len(common) >= 2:
            a, b = common[:2]
            kind = BasicKind.K4 if g.has_edge(a, b) else BasicKind.K3Merge
            return BasicSubgraph((u, a, v, b), kind)

    for cycle in nx.chordless_cycles(g.to_networkx()):
        if len(cycle) >= 4:
            return BasicSubgraph(tuple(cycle), BasicKind.Cycle)
    return None
