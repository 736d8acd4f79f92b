from typing import NamedTuple, Sequence

from loguru import logger

from ..dynamics.configuration import Configuration, single_one_configurations
from ..dynamics.periodic import periodic_outcome
from ..errors import ConsistencyError, GraphError, SchedulerError, UnsupportedGraphError
from ..gf2.matrix import Gf2Matrix, is_nilpotent, schedule_matrix
from ..graph.graph import Edge, Graph, canonical_edge, spanning_tree, tree_walk
from ..graph.structures import (
    BasicKind,
    BasicSubgraph,
    GraphClass,
    classify_precluding_class,
    find_basic_subgraph,
)
from .constants import MIN_STAR_3FAIR_LEAVES, DaemonKind
from .permutations import require_permutation
from .scheduler import SequenceScheduler


def periodic_scheduler(
    g: Graph,
    kind: DaemonKind | str,
    perm: Sequence[int | Edge],
    *,
    seed: int = 0,
    scheduler_id: int = 0,
) -> SequenceScheduler:
    """
    1-fair scheduler repeating a permutation of the edges (edge kind) or nodes (node kind).
    Node partners are drawn uniformly at random per visit.
    """
    kind = DaemonKind(kind)
    if kind == DaemonKind.Edge:
        items: list = [canonical_edge(*e) for e in perm]  # type: ignore[misc]
        require_permutation(items, list(g.edges), "edges")
    else:
        items = list(perm)
        require_permutation(items, list(range(g.n)), "nodes")
    return SequenceScheduler(
        g, kind, items, fairness=1, label=f"periodic-{kind}", seed=seed, scheduler_id=scheduler_id
    )


def degenerate_daemon(
    g: Graph, kind: DaemonKind | str, target: int | Edge, *, seed: int = 0
) -> SequenceScheduler:
    """Scheduler repeating one node or edge forever. Not weakly fair."""
    kind = DaemonKind(kind)
    return SequenceScheduler(g, kind, [target], label=f"constant-{kind}", seed=seed)


def stabilizing_edge_daemon(g: Graph) -> SequenceScheduler:
    """
    Plays every edge twice in edge order, then repeats the last edge forever.

    Playing an edge twice zeroes its endpoints and touches nothing else, so a connected graph is
    all zero after `2m` steps from any configuration.
    """
    g.require_connected()
    if g.m < 1:
        raise SchedulerError(f"{g.label} has no edge to schedule.")
    prefix = [e for e in g.edges[:-1] for _ in range(2)]
    return SequenceScheduler(
        g, DaemonKind.Edge, [g.edges[-1]], prefix=prefix, label="stabilizing-edge"
    )


def star_3fair_schedule(n: int) -> list[int]:
    """
    Period `[0, 1, 1, 3, 4, ..., n-1, 2, 1, n, n]` of a 3-fair node scheduler on the star with
    center `0` and leaves `1..n`.

    From ones at leaves `1` and `2` (zeros elsewhere) the configuration after each period is the
    initial one, whichever partner the center gets.
    """
    if n < MIN_STAR_3FAIR_LEAVES:
        raise SchedulerError(f"The 3-fair star schedule needs n >= {MIN_STAR_3FAIR_LEAVES} leaves, got {n}.")
    return [0, 1, 1, *range(3, n), 2, 1, n, n]


def star_3fair_initial(n: int) -> Configuration:
    return Configuration.from_labels([0, 1, 1] + [0] * (n - 2))


def star_3fair_daemon(g: Graph, *, seed: int = 0) -> SequenceScheduler:
    n = g.n - 1
    if n < 1 or g.m != n or g.adjacency[0] != tuple(range(1, n + 1)):
        raise SchedulerError(f"The 3-fair star schedule needs a star centered at 0, got {g.label}.")
    return SequenceScheduler(
        g, DaemonKind.Node, star_3fair_schedule(n), fairness=3, label="star-3fair", seed=seed
    )


def _dedupe_consecutive(walk: list[Edge]) -> list[Edge]:
    out: list[Edge] = []
    for e in walk:
        if out and canonical_edge(*out[-1]) == canonical_edge(*e):
            continue
        out.append(e)
    return out


def construct_2fair_enumeration(g: Graph) -> list[Edge]:
    """
    Closed edge sequence whose periodic extension is a 2-fair edge scheduler that never lets
    a single `1` die out.

    A depth-first spanning tree is walked from the smallest vertex of tree degree at least two,
    every tree edge once down and once up. When the walk first reaches a vertex, its non-tree edges
    are inserted. Consecutive repeats of the same edge are then dropped.

    ### Args
    `g`
        Connected graph with at least two edges.

    ### Returns
    Edge list, oriented as walked, where
    * every edge occurs once or twice.
    * cyclically consecutive edges share exactly one vertex.
    """
    g.require_connected()
    if g.m < 2:
        raise GraphError(f"Need at least two edges, got {g.m}.")

    t = spanning_tree(g)
    root = min(v for v in range(g.n) if t.tree.degree(v) >= 2)
    t = t.reroot(root)
    non_tree: list[list[Edge]] = [[] for _ in range(g.n)]
    for u, v in g.edges:
        if not t.tree.has_edge(u, v):
            non_tree[u].append((u, v))
            non_tree[v].append((v, u))

    walk: list[Edge] = list(non_tree[root])
    touched = {root}
    for src, dst in tree_walk(t):
        walk.append((src, dst))
        if dst not in touched:
            touched.add(dst)
            walk.extend(non_tree[dst])

    seq = _dedupe_consecutive(walk)
    _check_enumeration(g, seq)
    logger.info(f"2-fair enumeration of {g.label}: {len(seq)} edges per period.")
    return seq


def _check_enumeration(g: Graph, seq: list[Edge]) -> None:
    counts: dict[Edge, int] = {}
    for e in seq:
        c = canonical_edge(*e)
        counts[c] = counts.get(c, 0) + 1
    if set(counts) != set(g.edges) or max(counts.values()) > 2:
        raise ConsistencyError("Enumeration must list every edge once or twice.")
    for a, b in zip(seq, [*seq[1:], seq[0]]):
        if len(set(a) & set(b)) != 1:
            raise ConsistencyError(f"Consecutive edges {a} and {b} must share one vertex.")


class PrecludingSchedule(NamedTuple):
    graph_class: GraphClass
    order: list[Edge]
    matrix: Gf2Matrix
    # Configuration whose periodic trajectory never reaches zero.
    witness: Configuration


def _basic_labeling(g: Graph, basic: BasicSubgraph, swap_last: bool) -> list[Edge]:
    cycle = basic.cycle
    k = len(cycle)
    ring = [canonical_edge(cycle[i], cycle[(i + 1) % k]) for i in range(k)]
    if swap_last:
        ring[-2], ring[-1] = ring[-1], ring[-2]

    inside = set(basic.vertices)
    chords = sorted(e for e in g.induced_edges(inside) if e not in ring)
    if basic.kind == BasicKind.Cycle and chords:
        raise ConsistencyError(f"Cycle {cycle} is not induced.")
    return [*ring, *chords]


def _extended_order(g: Graph, basic: BasicSubgraph, swap_last: bool) -> list[Edge]:
    inside = set(basic.vertices)
    first = _basic_labeling(g, basic, swap_last)
    outside = [e for e in g.edges if e[0] not in inside and e[1] not in inside]
    crossing = [e for e in g.edges if (e[0] in inside) != (e[1] in inside)]
    return [*first, *outside, *crossing]


def sum_order(g: Graph) -> list[Edge]:
    """Edges by `u + v`, ties broken by the smaller endpoint."""
    return sorted(g.edges, key=lambda e: (e[0] + e[1], min(e)))


def construct_1fair_nonnilpotent(g: Graph) -> PrecludingSchedule:
    """
    Edge permutation whose schedule matrix is not nilpotent, so that the 1-fair scheduler repeating
    it never stabilizes from some configuration.

    * G1: a minimal induced subgraph carrying a cycle of length `k >= 4` is labeled around the
      cycle `1..k` and `1..k-2, k, k-1`, chords after. Edges inside it come first, edges away from
      it next and edges leaving it last. The two traces differ in parity; one of them is odd.
    * G2: edges by `u + v`, then by smaller endpoint. The trace is `m + 1` mod 2.
    * G3: edges in graph order. The sum of order-2 principal minors is odd when `n = 4k`.

    ### Raises
    `UnsupportedGraphError` outside G1, G2, G3. `ConsistencyError` if the resulting matrix is
    nilpotent after all.
    """
    cls = classify_precluding_class(g)
    match cls:
        case GraphClass.G1:
            basic = find_basic_subgraph(g)
            if basic is None:
                raise ConsistencyError(f"{g.label} is G1 but has no basic subgraph.")
            candidates = [_extended_order(g, basic, swap) for swap in (False, True)]
        case GraphClass.G2:
            candidates = [sum_order(g)]
        case GraphClass.G3:
            candidates = [list(g.edges)]
        case _:
            raise UnsupportedGraphError(
                f"{g.label} has no cycle of length >= 4, an odd number of edges and is not a "
                f"tree on 4k vertices."
            )

    for order in candidates:
        matrix = schedule_matrix(g, order)
        if is_nilpotent(matrix):
            continue
        for x0 in single_one_configurations(g.n):
            if not periodic_outcome(g, x0, order).stabilizes:
                logger.info(f"{g.label} ({cls}): precluding order found, witness {x0}.")
                return PrecludingSchedule(cls, order, matrix, x0)
        raise ConsistencyError(f"Non-nilpotent schedule on {g.label} stabilized from every single one.")

    raise ConsistencyError(f"Every candidate order on {g.label} ({cls}) is nilpotent.")
