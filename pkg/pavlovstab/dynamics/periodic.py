import numpy as np

from typing import NamedTuple, Sequence

from ..errors import BudgetExceededError
from ..graph.graph import Edge, Graph
from .configuration import Configuration
from .constants import MAX_TABLE_N
from .update import step_bits


class PeriodicOutcome(NamedTuple):
    """
    Result of repeating a fixed edge sequence forever.

    * `stabilizes`: the all-zero configuration is reached.
    * `steps`: steps until zero, or steps simulated before the repeat was seen.
    * `cycle_length`: length in periods of the recurrent cycle, `None` when stabilizing.
    """

    stabilizes: bool
    steps: int
    cycle_length: int | None


def _checked_period(g: Graph, period: Sequence[Edge]) -> list[Edge]:
    if not period:
        raise ValueError("Period must contain at least one edge.")
    g.check_edges(period)
    return [(u, v) for u, v in period]


def periodic_outcome(g: Graph, x0: Configuration, period: Sequence[Edge]) -> PeriodicOutcome:
    """
    Run the schedule `period, period, ...` from `x0`.

    The configuration at each period boundary is stored. The map over one period is fixed, so a
    repeated boundary configuration proves a cycle that avoids zero. Terminates within `2^n`
    periods.

    ### Args
    `g`
        Graph.
    `x0`
        Initial configuration.
    `period`
        Nonempty sequence of edges of `g`.

    ### Returns
    `PeriodicOutcome`
    """
    edges = _checked_period(g, period)
    if x0.n != g.n:
        raise ValueError(f"Configuration has {x0.n} labels but {g.label} has {g.n} vertices.")

    seen: dict[int, int] = {}
    bits = x0.bits
    steps = 0
    k = 0
    while True:
        if bits == 0:
            return PeriodicOutcome(True, steps, None)
        if bits in seen:
            return PeriodicOutcome(False, steps, k - seen[bits])
        seen[bits] = k
        for u, v in edges:
            bits = step_bits(bits, u, v)
            steps += 1
            if bits == 0:
                return PeriodicOutcome(True, steps, None)
        k += 1


def period_map(g: Graph, period: Sequence[Edge]) -> np.ndarray:
    """
    Image of every configuration `0..2^n-1` after one pass of `period`, as a `uint32` table.
    """
    edges = _checked_period(g, period)
    if g.n > MAX_TABLE_N:
        raise BudgetExceededError(f"Period-map tables are limited to n <= {MAX_TABLE_N}.")

    states = np.arange(1 << g.n, dtype=np.uint32)
    for u, v in edges:
        mask = np.uint32((1 << u) | (1 << v))
        differ = ((states >> np.uint32(u)) ^ (states >> np.uint32(v))) & np.uint32(1)
        states = np.where(differ == 1, states | mask, states & ~mask)
    return states


def stabilizes_from_all(g: Graph, period: Sequence[Edge]) -> bool:
    """
    Whether the periodic schedule reaches zero from all `2^n` configurations.

    Works on the period-map table only, without using that the dynamics is linear: composing the
    table with itself `n` times gives the `2^n`-th iterate, and every orbit enters its cycle within
    `2^n` periods. All configurations stabilize iff that iterate sends everything to zero.
    """
    table = period_map(g, period)
    for _ in range(g.n):
        table = table[table]
    return not table.any()
