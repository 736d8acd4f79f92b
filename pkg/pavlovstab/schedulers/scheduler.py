from abc import ABC, abstractmethod
from typing import Hashable, NamedTuple, Sequence

from ..dynamics.configuration import Configuration
from ..errors import SchedulerError
from ..graph.graph import Edge, Graph, canonical_edge
from ..rng import Stream, make_rng
from .constants import DaemonKind


class SchedulerDecision(NamedTuple):
    """
    Either an edge, or a node whose partner is chosen afterwards.
    """

    node: int | None = None
    edge: Edge | None = None

    @classmethod
    def of_node(cls, v: int) -> "SchedulerDecision":
        return cls(node=v)

    @classmethod
    def of_edge(cls, u: int, v: int) -> "SchedulerDecision":
        return cls(edge=(u, v))

    @property
    def kind(self) -> DaemonKind:
        return DaemonKind.Edge if self.edge is not None else DaemonKind.Node

    @property
    def vertices(self) -> tuple[int, ...]:
        if self.edge is not None:
            return self.edge
        assert self.node is not None
        return (self.node,)


class Scheduler(ABC):
    """
    Daemon choosing what acts next.

    The state of a scheduler is an explicit hashable value so that exhaustive searches can branch
    on it. `transition` maps `(state, configuration)` to the next decision and state; deterministic
    schedulers never touch their generator there. Nonadaptive schedulers ignore the configuration.

    Node partners are drawn uniformly from the scheduled node's neighbors on a separate stream.
    """

    kind: DaemonKind
    adaptive: bool = False
    # Declared fairness bound, `None` when the scheduler is not b-fair for any b.
    fairness: int | None = None
    deterministic: bool = True

    def __init__(self, g: Graph, *, seed: int = 0, scheduler_id: int = 0) -> None:
        self.g = g
        self.seed = seed
        self.scheduler_id = scheduler_id
        self._rng = make_rng(seed, Stream.Scheduler, scheduler_id)
        self._partner_rng = make_rng(seed, Stream.Partner, scheduler_id)
        self._state = self.initial_state()

    @property
    def name(self) -> str:
        return type(self).__name__

    @abstractmethod
    def initial_state(self) -> Hashable: ...

    @abstractmethod
    def transition(
        self, state: Hashable, x: Configuration | None
    ) -> tuple[SchedulerDecision, Hashable]: ...

    def successors(
        self, state: Hashable, x: Configuration
    ) -> list[tuple[SchedulerDecision, Hashable]]:
        """
        Every decision the scheduler may take from `state`. Random choices are all listed.
        """
        if not self.deterministic:
            raise SchedulerError(f"{self.name} does not enumerate its random choices.")
        return [self.transition(state, x)]

    @property
    def state(self) -> Hashable:
        return self._state

    def reset(self) -> None:
        self._state = self.initial_state()

    def decide(self, x: Configuration | None = None) -> SchedulerDecision:
        if self.adaptive and x is None:
            raise SchedulerError(f"{self.name} is adaptive and needs the configuration.")
        decision, self._state = self.transition(self._state, x)
        return decision

    def resolve_partner(self, node: int) -> int:
        nbrs = self.g.adjacency[node]
        if not nbrs:
            raise SchedulerError(f"Scheduled node {node} has no neighbor.")
        return nbrs[int(self._partner_rng.integers(len(nbrs)))]

    def next_edge(self, x: Configuration | None = None) -> Edge:
        d = self.decide(x)
        if d.edge is not None:
            return d.edge
        assert d.node is not None
        return canonical_edge(d.node, self.resolve_partner(d.node))


def _check_node(g: Graph, v: int) -> int:
    if not 0 <= v < g.n:
        raise SchedulerError(f"Node {v} is not a vertex of {g.label}.")
    return v


class SequenceScheduler(Scheduler):
    """
    Nonadaptive scheduler emitting `prefix` once, then `cycle` forever.

    The state is the position in `prefix + cycle`.
    """

    def __init__(
        self,
        g: Graph,
        kind: DaemonKind,
        cycle: Sequence[int | Edge],
        *,
        prefix: Sequence[int | Edge] = (),
        fairness: int | None = None,
        label: str = "",
        seed: int = 0,
        scheduler_id: int = 0,
    ) -> None:
        if not cycle:
            raise SchedulerError("A sequence scheduler needs a nonempty cycle.")
        self.kind = kind
        self.fairness = fairness
        self.label = label
        items = [*prefix, *cycle]
        if kind == DaemonKind.Edge:
            decisions = []
            for item in items:
                if not isinstance(item, tuple):
                    raise SchedulerError(f"Edge scheduler got node {item}.")
                g.index_of(*item)
                decisions.append(SchedulerDecision.of_edge(*item))
        else:
            decisions = []
            for item in items:
                if isinstance(item, tuple):
                    raise SchedulerError(f"Node scheduler got edge {item}.")
                decisions.append(SchedulerDecision.of_node(_check_node(g, item)))
        self.decisions = tuple(decisions)
        self.prefix_len = len(prefix)
        super().__init__(g, seed=seed, scheduler_id=scheduler_id)

    @property
    def name(self) -> str:
        return self.label or super().name

    @property
    def cycle(self) -> tuple[SchedulerDecision, ...]:
        return self.decisions[self.prefix_len :]

    def initial_state(self) -> int:
        return 0

    def transition(self, state: Hashable, x: Configuration | None) -> tuple[SchedulerDecision, int]:
        assert isinstance(state, int)
        nxt = state + 1
        if nxt == len(self.decisions):
            nxt = self.prefix_len
        return self.decisions[state], nxt


class RandomEdgeScheduler(Scheduler):
    """Each step plays an edge drawn uniformly at random."""

    kind = DaemonKind.Edge
    deterministic = False

    def __init__(self, g: Graph, *, seed: int = 0, scheduler_id: int = 0) -> None:
        if g.m == 0:
            raise SchedulerError(f"{g.label} has no edge to schedule.")
        super().__init__(g, seed=seed, scheduler_id=scheduler_id)

    def initial_state(self) -> None:
        return None

    def transition(
        self, state: Hashable, x: Configuration | None
    ) -> tuple[SchedulerDecision, None]:
        u, v = self.g.edges[int(self._rng.integers(self.g.m))]
        return SchedulerDecision.of_edge(u, v), None

    def successors(
        self, state: Hashable, x: Configuration
    ) -> list[tuple[SchedulerDecision, Hashable]]:
        return [(SchedulerDecision.of_edge(u, v), None) for u, v in self.g.edges]


class RandomPermutationScheduler(Scheduler):
    """
    Node scheduler running a fresh uniformly random node permutation per pass. 2-fair.

    The state is the set of nodes not yet scheduled in the current pass.
    """

    kind = DaemonKind.Node
    fairness = 2
    deterministic = False

    def initial_state(self) -> frozenset[int]:
        return frozenset(range(self.g.n))

    def _remaining(self, state: Hashable) -> list[int]:
        assert isinstance(state, frozenset)
        return sorted(state) if state else list(range(self.g.n))

    def transition(
        self, state: Hashable, x: Configuration | None
    ) -> tuple[SchedulerDecision, frozenset[int]]:
        remaining = self._remaining(state)
        v = remaining[int(self._rng.integers(len(remaining)))]
        return SchedulerDecision.of_node(v), frozenset(remaining) - {v}

    def successors(
        self, state: Hashable, x: Configuration
    ) -> list[tuple[SchedulerDecision, Hashable]]:
        remaining = self._remaining(state)
        return [(SchedulerDecision.of_node(v), frozenset(remaining) - {v}) for v in remaining]


class K3AdaptiveDaemon(Scheduler):
    """
    Adaptive 2-fair node scheduler on `K_3` that keeps the all-ones configuration recurrent.

    Work proceeds in blocks of three decisions starting from all ones:

    1. schedule the start node; it and its partner drop to `0`.
    2. schedule the unique node still labeled `1`.
    3. schedule the unique node labeled `0`; the configuration is all ones again.

    A block that schedules every node is followed by a block with the same start node. A block
    that omits a node is followed by a block starting with the omitted node.

    The state is `(start, phase, nodes scheduled so far in the block)`.
    """

    kind = DaemonKind.Node
    adaptive = True
    fairness = 2

    def __init__(self, g: Graph, *, start: int = 0, seed: int = 0, scheduler_id: int = 0) -> None:
        if g.n != 3 or g.m != 3:
            raise SchedulerError(f"The K3 adaptive daemon needs K_3, got {g.label}.")
        self.start = _check_node(g, start)
        super().__init__(g, seed=seed, scheduler_id=scheduler_id)

    def initial_state(self) -> tuple[int, int, tuple[int, ...]]:
        return (self.start, 0, ())

    def transition(
        self, state: Hashable, x: Configuration | None
    ) -> tuple[SchedulerDecision, tuple[int, int, tuple[int, ...]]]:
        if x is None:
            raise SchedulerError("The K3 adaptive daemon needs the configuration.")
        assert isinstance(state, tuple)
        start, phase, block = state

        if phase == 0:
            if x.bits != 0b111:
                raise SchedulerError(f"Block must start at all ones, got {x}.")
            v = start
        elif phase == 1:
            v = self._unique(x, 1)
        else:
            v = self._unique(x, 0)

        block = (*block, v)
        if phase < 2:
            return SchedulerDecision.of_node(v), (start, phase + 1, block)

        if len(set(block)) == 3:
            nxt = block[0]
        else:
            (nxt,) = set(range(3)) - set(block)
        return SchedulerDecision.of_node(v), (nxt, 0, ())

    @staticmethod
    def _unique(x: Configuration, label: int) -> int:
        nodes = [v for v in range(3) if x[v] == label]
        if len(nodes) != 1:
            raise SchedulerError(f"Expected exactly one node labeled {label} in {x}.")
        return nodes[0]
