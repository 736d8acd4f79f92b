import math

from typing import Iterable, NamedTuple

from ..graph.graph import Edge, Graph, canonical_edge
from .configuration import Configuration
from .constants import DEF_MAX_STEPS_FACTOR


def step_bits(bits: int, u: int, v: int) -> int:
    """
    Play edge `(u, v)` on packed labels: both endpoints take the XOR of their labels.
    """
    mask = (1 << u) | (1 << v)
    if ((bits >> u) ^ (bits >> v)) & 1:
        return bits | mask
    return bits & ~mask


def _require_same_order(g: Graph, x: Configuration) -> None:
    if x.n != g.n:
        raise ValueError(f"Configuration has {x.n} labels but {g.label} has {g.n} vertices.")


def step(g: Graph, x: Configuration, e: Edge) -> Configuration:
    """
    Apply one Pavlov update on edge `e`.

    ### Args
    `g`
        Graph.
    `x`
        Current configuration.
    `e`
        Edge of `g`, either endpoint order.

    ### Returns
    New `Configuration`. Labels off `e` are unchanged.

    ### Raises
    `InvalidEdgeError` if `e` is not an edge of `g`.
    """
    _require_same_order(g, x)
    u, v = e
    g.index_of(u, v)
    return x.with_bits(step_bits(x.bits, u, v))


class StepRecord(NamedTuple):
    t: int
    edge: Edge
    configuration: Configuration


class RunResult(NamedTuple):
    final: Configuration
    steps: int
    reached_zero: bool
    trajectory: list[StepRecord] | None


def run(
    g: Graph,
    x0: Configuration,
    schedule: Iterable[Edge],
    max_steps: int,
    *,
    record: bool = False,
) -> RunResult:
    """
    Iterate `step` along `schedule` until the all-zero configuration, `max_steps` steps, or the
    end of the schedule, whichever comes first.

    ### Args
    `g`
        Graph.
    `x0`
        Initial configuration.
    `schedule`
        Edges to play, possibly an endless iterator.
    `max_steps`
        Step budget.
    `record`
        Keep a `StepRecord` per step.

    ### Returns
    `RunResult`. `steps` is the number of edges played.
    """
    _require_same_order(g, x0)
    if max_steps < 0:
        raise ValueError(f"Step budget must be non-negative, got {max_steps}.")

    trajectory: list[StepRecord] | None = [] if record else None
    bits = x0.bits
    t = 0
    if bits != 0:
        for u, v in schedule:
            if t >= max_steps:
                break
            g.index_of(u, v)
            bits = step_bits(bits, u, v)
            t += 1
            if trajectory is not None:
                trajectory.append(StepRecord(t, canonical_edge(u, v), x0.with_bits(bits)))
            if bits == 0:
                break

    return RunResult(x0.with_bits(bits), t, bits == 0, trajectory)


def is_fixed_point(g: Graph, x: Configuration) -> bool:
    """
    Whether no edge changes `x`, i.e. every edge has both endpoints labeled `0`.
    """
    _require_same_order(g, x)
    return all(x[u] == 0 and x[v] == 0 for u, v in g.edges)


def predecessors(g: Graph, x: Configuration) -> set[tuple[Configuration, Edge]]:
    """
    All `(y, e)` with `y != x` and `step(g, y, e) == x`.

    An edge whose endpoints disagree in `x` has no preimage, since playing an edge always leaves
    its endpoints equal. Both labels `0` come from `(1, 1)`; both labels `1` come from `(0, 1)` or
    `(1, 0)`.

    ### Returns
    Set of predecessors. Empty iff `x` is a Garden of Eden configuration.
    """
    _require_same_order(g, x)
    preds = set()
    for u, v in g.edges:
        if x[u] != x[v]:
            continue
        mask_u, mask_v = 1 << u, 1 << v
        if x[u] == 0:
            candidates = [x.bits | mask_u | mask_v]
        else:
            candidates = [x.bits & ~mask_u, x.bits & ~mask_v]
        for bits in candidates:
            preds.add((x.with_bits(bits), (u, v)))
    return preds


def is_garden_of_eden(g: Graph, x: Configuration) -> bool:
    return not predecessors(g, x)


def default_max_steps(n: int) -> int:
    return math.ceil(DEF_MAX_STEPS_FACTOR * n * math.log(n + 1))
