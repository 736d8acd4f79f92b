from typing import NamedTuple

from ..dynamics.configuration import Configuration
from ..dynamics.update import StepRecord, step_bits
from ..graph.graph import Edge, Graph, canonical_edge
from .scheduler import Scheduler


class SchedulerRun(NamedTuple):
    final: Configuration
    steps: int
    reached_zero: bool
    # Scheduled node, or edge for edge decisions, per step.
    trace: list[int | Edge] | None
    trajectory: list[StepRecord] | None


def run_scheduler(
    g: Graph,
    scheduler: Scheduler,
    x0: Configuration,
    max_steps: int,
    *,
    record_trace: bool = False,
    record_trajectory: bool = False,
    stop_at_zero: bool = True,
) -> SchedulerRun:
    """
    Drive the dynamics with a scheduler. Node decisions get a uniformly random neighbor.

    ### Args
    `g`
        Graph.
    `scheduler`
        Scheduler bound to `g`.
    `x0`
        Initial configuration.
    `max_steps`
        Step budget.
    `record_trace`
        Keep what was scheduled at each step.
    `record_trajectory`
        Keep a `StepRecord` per step.
    `stop_at_zero`
        Stop once all labels are zero. Disable to observe the scheduler alone.

    ### Returns
    `SchedulerRun`
    """
    if x0.n != g.n:
        raise ValueError(f"Configuration has {x0.n} labels but {g.label} has {g.n} vertices.")

    trace: list[int | Edge] | None = [] if record_trace else None
    trajectory: list[StepRecord] | None = [] if record_trajectory else None
    bits = x0.bits
    t = 0
    while t < max_steps and not (stop_at_zero and bits == 0):
        x = x0.with_bits(bits)
        d = scheduler.decide(x)
        if d.edge is not None:
            u, v = d.edge
            g.index_of(u, v)
            if trace is not None:
                trace.append(canonical_edge(u, v))
        else:
            assert d.node is not None
            u, v = d.node, scheduler.resolve_partner(d.node)
            if trace is not None:
                trace.append(u)
        bits = step_bits(bits, u, v)
        t += 1
        if trajectory is not None:
            trajectory.append(StepRecord(t, canonical_edge(u, v), x0.with_bits(bits)))

    return SchedulerRun(x0.with_bits(bits), t, bits == 0, trace, trajectory)
