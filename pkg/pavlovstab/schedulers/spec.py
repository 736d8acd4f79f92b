from ..errors import SchedulerError
from ..graph.graph import Graph
from ..rng import Stream, make_rng
from .constants import (
    LIST_SEP,
    SCHEDULER_ARG_SEP,
    DaemonKind,
    PermutationFamily,
    SchedulerName,
)
from .constructions import (
    degenerate_daemon,
    periodic_scheduler,
    stabilizing_edge_daemon,
    star_3fair_daemon,
)
from .io import read_schedule
from .permutations import family_permutation
from .scheduler import (
    K3AdaptiveDaemon,
    RandomEdgeScheduler,
    RandomPermutationScheduler,
    Scheduler,
    SequenceScheduler,
)


def _int_list(arg: str) -> list[int]:
    try:
        return [int(a) for a in arg.split(LIST_SEP)]
    except ValueError:
        raise SchedulerError(f"Expected a comma separated list of integers, got {arg!r}.") from None


def _order(g: Graph, kind: DaemonKind, arg: str, seed: int) -> list:
    size = g.m if kind == DaemonKind.Edge else g.n
    if arg in {f.value for f in PermutationFamily}:
        rng = make_rng(seed, Stream.Permutation)
        perm = family_permutation(arg, size, rng)
    else:
        perm = _int_list(arg)
    if kind == DaemonKind.Edge:
        if any(not 0 <= i < g.m for i in perm):
            raise SchedulerError(f"Edge index out of range 0..{g.m - 1} in {arg!r}.")
        return [g.edges[i] for i in perm]
    return perm


def build_scheduler(g: Graph, spec: str, *, seed: int = 0) -> Scheduler:
    """
    Build a scheduler from its command line spec, `name[:arg]`.

    * `random-edge`
    * `random-perm-node`
    * `periodic-edge:<order>`, `periodic-node:<order>` where `<order>` is `id`, `p3`,
      `pattern13`, `random` or a comma separated list of edge indices / nodes
    * `constant-edge:<edge index>`, `constant-node:<node>`
    * `stabilizing-edge`
    * `k3-adaptive[:<start node>]`
    * `star-3fair`
    * `file:<path>` replays a schedule file periodically

    ### Args
    `g`
        Graph to schedule on.
    `spec`
        Scheduler spec.
    `seed`
        Seed of the scheduler's random streams.

    ### Returns
    `Scheduler`
    """
    name, _, arg = spec.partition(SCHEDULER_ARG_SEP)
    try:
        name = SchedulerName(name)
    except ValueError:
        raise SchedulerError(f"Unknown scheduler {name!r}.") from None

    match name:
        case SchedulerName.RandomEdge:
            return RandomEdgeScheduler(g, seed=seed)
        case SchedulerName.RandomPermutationNode:
            return RandomPermutationScheduler(g, seed=seed)
        case SchedulerName.PeriodicEdge | SchedulerName.PeriodicNode:
            kind = DaemonKind.Edge if name == SchedulerName.PeriodicEdge else DaemonKind.Node
            return periodic_scheduler(g, kind, _order(g, kind, arg or "id", seed), seed=seed)
        case SchedulerName.ConstantEdge:
            (i,) = _int_list(arg or "0")
            if not 0 <= i < g.m:
                raise SchedulerError(f"Edge index {i} out of range 0..{g.m - 1}.")
            return degenerate_daemon(g, DaemonKind.Edge, g.edges[i], seed=seed)
        case SchedulerName.ConstantNode:
            (v,) = _int_list(arg or "0")
            return degenerate_daemon(g, DaemonKind.Node, v, seed=seed)
        case SchedulerName.StabilizingEdge:
            return stabilizing_edge_daemon(g)
        case SchedulerName.K3Adaptive:
            (start,) = _int_list(arg or "0")
            return K3AdaptiveDaemon(g, start=start, seed=seed)
        case SchedulerName.Star3Fair:
            return star_3fair_daemon(g, seed=seed)
        case SchedulerName.File:
            if not arg:
                raise SchedulerError("file scheduler needs a path, ex. file:schedule.txt")
            decisions = read_schedule(arg, g)
            if not decisions:
                raise SchedulerError(f"Schedule file {arg} is empty.")
            kind = decisions[0].kind
            items = [d.edge if d.edge is not None else d.node for d in decisions]
            return SequenceScheduler(g, kind, items, label=f"file:{arg}", seed=seed)
        case _:
            raise ValueError(f"Unknown scheduler: {name}")
