import itertools
import numpy as np

from ..errors import GraphError
from ..rng import Stream, make_rng
from .constants import FAMILY_MIN_N, FIXED_FAMILIES, GraphFamily
from .graph import Graph


def generate(family: GraphFamily | str, n: int | None = None) -> Graph:
    """
    Build a member of one of the named graph families with canonical vertex numbering.

    * line: path `0-1-...-(n-1)`
    * cycle: the line plus edge `(0, n-1)`
    * star: center `0`, leaves `1..n` (`n` is the leaf count)
    * complete: `K_n`, edges in lexicographic order
    * k3, k4: `K_3`, `K_4`
    * k3-merge: two triangles `{0,1,2}` and `{0,1,3}` sharing edge `(0,1)`

    ### Args
    `family`
        Family name.
    `n`
        Size parameter. Ignored by fixed-size families.

    ### Returns
    `Graph`
    """
    family = GraphFamily(family)
    if family in FIXED_FAMILIES:
        return _fixed(family)

    if n is None or n < FAMILY_MIN_N[family]:
        raise GraphError(
            f"{family} needs n >= {FAMILY_MIN_N[family]}, got {n}."
        )

    match family:
        case GraphFamily.Line:
            edges = [(i, i + 1) for i in range(n - 1)]
            return Graph.from_edges(n, edges, name=f"L{n}")
        case GraphFamily.Cycle:
            edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
            return Graph.from_edges(n, edges, name=f"C{n}")
        case GraphFamily.Star:
            edges = [(0, i) for i in range(1, n + 1)]
            return Graph.from_edges(n + 1, edges, name=f"Star{n}")
        case GraphFamily.Complete:
            return _complete(n, f"K{n}")
        case _:
            raise ValueError(f"Unknown family: {family}")


def _complete(n: int, name: str) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2), name=name)


def _fixed(family: GraphFamily) -> Graph:
    if family == GraphFamily.K3:
        return _complete(3, "K3")
    elif family == GraphFamily.K4:
        return _complete(4, "K4")
    return Graph.from_edges(
        4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)], name="K3-merge"
    )


def sample_gnp(n: int, p: float, seed: int) -> Graph:
    """
    Sample an Erdos-Renyi graph `G(n, p)`.

    Pairs `(i, j)`, `i < j`, are visited in lexicographic order and each consumes exactly one
    uniform draw from a Philox stream, so the graph only depends on `(n, p, seed)`.

    ### Args
    `n`
        Vertex count.
    `p`
        Edge probability in `[0, 1]`.
    `seed`
        Non-negative seed.

    ### Returns
    `Graph`
    """
    if n < 0:
        raise GraphError(f"Vertex count must be non-negative, got {n}.")
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"Edge probability must be in [0, 1], got {p}.")

    rng = make_rng(seed, Stream.Graph)
    rows, cols = np.triu_indices(n, k=1)
    draws = rng.random(len(rows))
    keep = draws < p
    edges = zip(rows[keep].tolist(), cols[keep].tolist())
    return Graph(n, tuple(edges), name=f"G({n},{p:.4g};{seed})")
