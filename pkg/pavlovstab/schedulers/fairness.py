import numpy as np

from typing import NamedTuple, Sequence

from ..graph.graph import Edge, Graph


class FairnessReport(NamedTuple):
    """
    * `per_vertex[v]`: the most times any other vertex was scheduled between two consecutive
      schedulings of `v`, `None` if `v` was scheduled fewer than twice.
    * `b`: worst case over vertices, `None` when some vertex was never rescheduled.
    """

    per_vertex: tuple[int | None, ...]
    b: int | None
    never_rescheduled: tuple[int, ...]
    steps: int


def fairness_monitor(trace: Sequence[int | Edge], n: int) -> FairnessReport:
    """
    Compute the fairness bound witnessed by a finite trace.

    A stage schedules a node, or both endpoints of an edge. Counts only cover intervals closed by a
    later scheduling of the same vertex.

    ### Args
    `trace`
        Scheduled nodes or edges, in order.
    `n`
        Vertex count.

    ### Returns
    `FairnessReport`
    """
    if not trace:
        raise ValueError("Trace must be nonempty.")

    # `snapshot[v]` holds the scheduling counts at the last time `v` was scheduled.
    total = np.zeros(n, dtype=np.int64)
    snapshot = np.zeros((n, n), dtype=np.int64)
    times = np.zeros(n, dtype=np.int64)
    worst = np.full(n, -1, dtype=np.int64)

    for stage in trace:
        vertices = stage if isinstance(stage, tuple) else (stage,)
        for v in vertices:
            if times[v] > 0:
                since = total - snapshot[v]
                since[v] = 0
                worst[v] = max(worst[v], int(since.max()))
        for v in vertices:
            total[v] += 1
            times[v] += 1
        for v in vertices:
            snapshot[v] = total

    per_vertex = tuple(int(w) if t >= 2 else None for w, t in zip(worst, times))
    never = tuple(v for v in range(n) if times[v] < 2)
    b = None if never else max(w for w in per_vertex if w is not None)
    return FairnessReport(per_vertex, b, never, len(trace))


def edge_fairness(g: Graph, period: Sequence[Edge], periods: int) -> FairnessReport:
    """
    Fairness of the periodic edge schedule `period`, replayed `periods` times. Edge schedulers
    choose among edges, so every edge is one agent.
    """
    return fairness_monitor([g.index_of(u, v) for u, v in period] * periods, g.m)


FairnessState = tuple[tuple[int, ...] | None, ...]


def fairness_start(n: int) -> FairnessState:
    return (None,) * n


def fairness_advance(state: FairnessState, vertices: Sequence[int], cap: int) -> tuple[FairnessState, int]:
    """
    Incremental form of `fairness_monitor` for branching searches.

    `state[v]` counts the schedulings of every vertex since `v` was last scheduled, saturating at
    `cap`. Returns the new state and the largest count closed at this stage (`-1` if none).
    """
    closed = -1
    rows = list(state)
    for v in vertices:
        if rows[v] is not None:
            closed = max(closed, max((c for w, c in enumerate(rows[v]) if w != v), default=0))
    for v, row in enumerate(rows):
        if row is None or v in vertices:
            continue
        counts = list(row)
        for w in vertices:
            counts[w] = min(cap, counts[w] + 1)
        rows[v] = tuple(counts)
    n = len(rows)
    for v in vertices:
        rows[v] = (0,) * n
    return tuple(rows), closed
