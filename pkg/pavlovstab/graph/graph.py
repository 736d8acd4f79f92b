import networkx as nx

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

from ..errors import DisconnectedGraphError, GraphError, InvalidEdgeError

Edge = tuple[int, int]


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """
    Undirected simple graph on vertices `0..n-1`.

    The position of an edge in `edges` is its index. Edges are stored with the smaller endpoint
    first.
    """

    n: int
    edges: tuple[Edge, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"Vertex count must be non-negative, got {self.n}.")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"Self-loop at vertex {u}.")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"Edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}.")
            if u > v:
                raise GraphError(f"Edge ({u}, {v}) is not canonical.")
            if (u, v) in seen:
                raise GraphError(f"Duplicate edge ({u}, {v}).")
            seen.add((u, v))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge], *, name: str = "") -> "Graph":
        return cls(n, tuple(canonical_edge(u, v) for u, v in edges), name=name)

    @classmethod
    def from_networkx(cls, g: nx.Graph, *, name: str = "") -> "Graph":
        """
        Relabel a networkx graph to `0..n-1` in sorted node order.
        """
        nodes = sorted(g.nodes)
        idx = {node: i for i, node in enumerate(nodes)}
        edges = sorted(canonical_edge(idx[u], idx[v]) for u, v in g.edges)
        return cls(len(nodes), tuple(edges), name=name)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(vs)) for vs in nbrs)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self.edge_index

    def index_of(self, u: int, v: int) -> int:
        try:
            return self.edge_index[canonical_edge(u, v)]
        except KeyError:
            raise InvalidEdgeError(f"({u}, {v}) is not an edge of {self.label}.") from None

    def check_edges(self, edges: Iterable[Edge]) -> None:
        for u, v in edges:
            self.index_of(u, v)

    @property
    def label(self) -> str:
        return self.name or f"graph(n={self.n}, m={self.m})"

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(self.component_of(0)) == self.n

    def component_of(self, v: int) -> set[int]:
        seen = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen

    def require_connected(self) -> None:
        if not self.is_connected():
            raise DisconnectedGraphError(f"{self.label} is not connected.")

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected()

    def induced_edges(self, vertices: Iterable[int]) -> list[Edge]:
        vs = set(vertices)
        return [(u, v) for u, v in self.edges if u in vs and v in vs]


@dataclass(frozen=True)
class RootedTree:
    """
    Spanning tree of `graph` given by a parent map. `tree` holds the tree edges only, on the same
    vertex set.
    """

    tree: Graph
    root: int
    parent: tuple[int | None, ...]

    def __post_init__(self) -> None:
        if not self.tree.is_tree():
            raise GraphError("Rooted tree must be connected with n-1 edges.")
        if self.parent[self.root] is not None:
            raise GraphError(f"Root {self.root} has a parent.")
        for v, p in enumerate(self.parent):
            if v != self.root and (p is None or not self.tree.has_edge(v, p)):
                raise GraphError(f"Parent of {v} is inconsistent with the tree edges.")

    @property
    def n(self) -> int:
        return self.tree.n

    @cached_property
    def _children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parent):
            if p is not None:
                kids[p].append(v)
        return tuple(tuple(sorted(k)) for k in kids)

    def children(self, v: int) -> tuple[int, ...]:
        return self._children[v]

    def reroot(self, root: int) -> "RootedTree":
        return _rooted_by_bfs(self.tree, root)

    def preorder(self) -> Iterator[int]:
        stack = [self.root]
        while stack:
            v = stack.pop()
            yield v
            stack.extend(reversed(self.children(v)))


class TreeWalkStep(NamedTuple):
    src: int
    dst: int


def _rooted_by_bfs(tree: Graph, root: int) -> RootedTree:
    parent: list[int | None] = [None] * tree.n
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in tree.adjacency[u]:
            if w not in seen:
                seen.add(w)
                parent[w] = u
                queue.append(w)
    return RootedTree(tree, root, tuple(parent))


def spanning_tree(g: Graph, root: int = 0) -> RootedTree:
    """
    Depth-first spanning tree of `g` rooted at `root`, children visited in ascending order.

    ### Args
    `g`
        Connected graph.
    `root`
        Root vertex.

    ### Returns
    `RootedTree` whose tree edges are the DFS discovery edges.
    """
    if not 0 <= root < g.n:
        raise GraphError(f"Root {root} is not a vertex of {g.label}.")
    g.require_connected()

    parent: list[int | None] = [None] * g.n
    visited = [False] * g.n
    visited[root] = True
    # Stack of (vertex, neighbor iterator) emulates the recursive DFS.
    stack = [(root, iter(g.adjacency[root]))]
    edges = []
    while stack:
        v, it = stack[-1]
        for w in it:
            if not visited[w]:
                visited[w] = True
                parent[w] = v
                edges.append(canonical_edge(v, w))
                stack.append((w, iter(g.adjacency[w])))
                break
        else:
            stack.pop()

    tree = Graph(g.n, tuple(edges), name=f"dfs-tree({g.label})")
    return RootedTree(tree, root, tuple(parent))


def tree_walk(t: RootedTree) -> list[TreeWalkStep]:
    """
    Closed walk around `t` from the root: every tree edge once down and once up, children in
    ascending order.
    """
    walk = []
    stack = [(t.root, iter(t.children(t.root)))]
    while stack:
        v, it = stack[-1]
        c = next(it, None)
        if c is None:
            stack.pop()
            if stack:
                walk.append(TreeWalkStep(v, stack[-1][0]))
        else:
            walk.append(TreeWalkStep(v, c))
            stack.append((c, iter(t.children(c))))
    return walk


def edges_of(vertices: Sequence[int]) -> list[Edge]:
    return [canonical_edge(a, b) for a, b in zip(vertices, vertices[1:])]
