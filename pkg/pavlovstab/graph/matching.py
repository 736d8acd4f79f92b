import networkx as nx

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from ..errors import GraphError
from .constants import MAX_BRUTE_FORCE_MATCHING_N
from .graph import Edge, Graph, canonical_edge


@dataclass(frozen=True)
class Matching:
    """
    Set of vertex-disjoint edges, kept sorted.
    """

    pairs: tuple[Edge, ...]

    def __post_init__(self) -> None:
        covered = set()
        for u, v in self.pairs:
            if u in covered or v in covered:
                raise GraphError(f"Edge ({u}, {v}) shares a vertex with another matched edge.")
            covered.update((u, v))

    @classmethod
    def of(cls, pairs: Iterable[Edge]) -> "Matching":
        return cls(tuple(sorted(canonical_edge(u, v) for u, v in pairs)))

    @cached_property
    def mate(self) -> dict[int, int]:
        mates = {}
        for u, v in self.pairs:
            mates[u] = v
            mates[v] = u
        return mates

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.mate)

    def partner(self, v: int) -> int | None:
        return self.mate.get(v)

    def covers(self, vertices: Iterable[int]) -> bool:
        return all(v in self.mate for v in vertices)

    def is_perfect(self, n: int) -> bool:
        return len(self.mate) == n

    def restricted(self, vertices: Iterable[int]) -> "Matching":
        vs = set(vertices)
        return Matching(tuple(e for e in self.pairs if e[0] in vs and e[1] in vs))


def perfect_matching(g: Graph, vertices: Iterable[int] | None = None) -> Matching | None:
    """
    Perfect matching of `g` (or of the subgraph induced by `vertices`) via blossom contraction.

    ### Args
    `g`
        Any graph.
    `vertices`
        Restrict to the induced subgraph on these vertices.

    ### Returns
    `Matching` covering every vertex, or `None` if none exists.
    """
    vs = sorted(set(range(g.n) if vertices is None else vertices))
    if len(vs) % 2 == 1:
        return None
    if not vs:
        return Matching(())

    nxg = nx.Graph()
    nxg.add_nodes_from(vs)
    nxg.add_edges_from(g.induced_edges(vs))
    # Unweighted edges all count 1, so this is a maximum-cardinality matching.
    pairs = nx.max_weight_matching(nxg, maxcardinality=True)
    if 2 * len(pairs) != len(vs):
        return None
    return Matching.of(pairs)


def exhaustive_perfect_matching(g: Graph) -> Matching | None:
    """
    Brute force perfect matching search. Used as an oracle for `perfect_matching`.
    """
    if g.n > MAX_BRUTE_FORCE_MATCHING_N:
        raise GraphError(
            f"Exhaustive matching is limited to n <= {MAX_BRUTE_FORCE_MATCHING_N}."
        )
    if g.n % 2 == 1:
        return None

    def search(free: frozenset[int]) -> list[Edge] | None:
        if not free:
            return []
        v = min(free)
        for w in g.adjacency[v]:
            if w in free:
                rest = search(free - {v, w})
                if rest is not None:
                    return [(v, w), *rest]
        return None

    pairs = search(frozenset(range(g.n)))
    return None if pairs is None else Matching.of(pairs)
