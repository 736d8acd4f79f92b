from dataclasses import dataclass, field
from typing import Any, Hashable, NamedTuple

from loguru import logger

from ..dynamics.configuration import Configuration
from ..dynamics.update import step_bits
from ..errors import BudgetExceededError, StrategyError
from ..graph.graph import Graph
from ..schedulers.constants import DaemonKind
from ..schedulers.scheduler import Scheduler
from .constants import DEF_SOLVER_STATE_BUDGET, MAX_SOLVER_N
from .strategy import LuckStrategy, RoundClock, RoundContext


class GameResult(NamedTuple):
    won: bool
    rounds_used: int
    steps: int


def _clock(g: Graph, scheduler: Scheduler, b: int | None) -> RoundClock:
    return RoundClock(b or scheduler.fairness or 1, g.n)


def play_game(
    g: Graph,
    scheduler: Scheduler,
    strategy: LuckStrategy,
    x0: Configuration,
    max_rounds: int,
    *,
    b: int | None = None,
) -> GameResult:
    """
    Play the scheduler-luck game: the scheduler picks nodes, the strategy picks their partners.

    ### Args
    `g`
        Graph.
    `scheduler`
        Node scheduler.
    `strategy`
        Luck strategy on all of `g`.
    `x0`
        Initial configuration.
    `max_rounds`
        Budget in rounds of `b(n-1)+1` steps.
    `b`
        Fairness bound for the round clock. Defaults to the scheduler's declared bound.

    ### Returns
    `GameResult`. `won` iff all labels reached `0`.
    """
    if scheduler.kind != DaemonKind.Node:
        raise StrategyError("The luck player has no move against an edge scheduler.")
    if strategy.domain != frozenset(range(g.n)):
        raise StrategyError(f"Strategy must cover all {g.n} vertices of {g.label}.")

    clock = _clock(g, scheduler, b)
    max_steps = max_rounds * clock.round_length
    bits = x0.bits
    t = 0
    while bits != 0 and t < max_steps:
        x = x0.with_bits(bits)
        d = scheduler.decide(x)
        assert d.node is not None
        p = strategy.partner(x, d.node, RoundContext(t, clock.round_of(t)))
        if not g.has_edge(d.node, p):
            raise StrategyError(f"Strategy paired {d.node} with non-neighbor {p}.")
        bits = step_bits(bits, d.node, p)
        t += 1

    return GameResult(bits == 0, clock.rounds_used(t), t)


class LuckGameSolution(NamedTuple):
    luck_wins: bool
    states: int
    witness: dict[str, Any] | None


Position = tuple[int, Hashable, int]
# Luck option: (partner, next bits, next scheduler state). Partner is `None` for edge decisions.
Option = tuple[int | None, int, Hashable]
Decision = tuple[Any, list[Option]]


@dataclass
class _Frame:
    """A position being expanded: its decisions, the one under test and the option tried for it."""

    key: Position
    decisions: list[Decision]
    decision: int = 0
    option: int = 0
    picks: list[tuple[Any, Option]] = field(default_factory=list)

    def record(self, child_wins: bool) -> None:
        if child_wins:
            scheduled, options = self.decisions[self.decision]
            self.picks.append((scheduled, options[self.option]))
            self.decision += 1
            self.option = 0
        else:
            self.option += 1


def solve_luck_game(
    g: Graph,
    scheduler: Scheduler,
    x0: Configuration,
    horizon_rounds: int,
    *,
    b: int | None = None,
    budget: int = DEF_SOLVER_STATE_BUDGET,
    witness: bool = False,
) -> LuckGameSolution:
    """
    Decide whether the luck player can force all zeros within the horizon, whatever the scheduler
    does.

    AND/OR search memoized on `(configuration, scheduler state, steps left)`, run on an explicit
    stack. Scheduler choices, including random ones, are universal; partner choices are
    existential. Edge decisions leave no choice to the luck player.

    ### Args
    `g`
        Graph with at most `MAX_SOLVER_N` vertices.
    `scheduler`
        Scheduler whose `successors` enumerate its choices.
    `x0`
        Initial configuration.
    `horizon_rounds`
        Horizon in rounds of `b(n-1)+1` steps.
    `b`
        Fairness bound for the round length.
    `budget`
        Maximum number of memoized positions.
    `witness`
        Also return the winning strategy as a DAG of positions.

    ### Returns
    `LuckGameSolution`
    """
    if g.n > MAX_SOLVER_N:
        raise BudgetExceededError(f"Game solving is limited to n <= {MAX_SOLVER_N}, got {g.n}.")

    clock = _clock(g, scheduler, b)
    horizon = horizon_rounds * clock.round_length
    memo: dict[Position, bool] = {}
    picks: dict[Position, list[tuple[Any, Option]]] = {}

    def decisions(bits: int, state: Hashable) -> list[Decision]:
        x = x0.with_bits(bits)
        out: list[Decision] = []
        for d, nstate in scheduler.successors(state, x):
            if d.edge is not None:
                u, v = d.edge
                out.append((list(d.edge), [(None, step_bits(bits, u, v), nstate)]))
            else:
                assert d.node is not None
                options = [(p, step_bits(bits, d.node, p), nstate) for p in g.adjacency[d.node]]
                out.append((d.node, options))
        return out

    def settled(key: Position) -> bool | None:
        bits, _, left = key
        if bits == 0:
            return True
        if left == 0:
            return False
        return memo.get(key)

    def expand(key: Position) -> _Frame:
        if len(memo) >= budget:
            raise BudgetExceededError(f"Game search exceeded {budget} positions.")
        return _Frame(key, decisions(key[0], key[1]))

    root = (x0.bits, scheduler.state, horizon)
    luck_wins = settled(root)
    if luck_wins is None:
        stack = [expand(root)]
        while stack:
            frame = stack[-1]
            if frame.decision < len(frame.decisions):
                options = frame.decisions[frame.decision][1]
                if frame.option < len(options):
                    _, nbits, nstate = options[frame.option]
                    child = (nbits, nstate, frame.key[2] - 1)
                    known = settled(child)
                    if known is None:
                        stack.append(expand(child))
                    else:
                        frame.record(known)
                    continue
                # No partner answers this scheduler decision.
                result = False
            else:
                result = True
            memo[frame.key] = result
            if result:
                picks[frame.key] = frame.picks
            stack.pop()
            if stack:
                stack[-1].record(result)
        luck_wins = memo[root]

    logger.info(
        f"Luck game on {g.label} vs {scheduler.name} from {x0}: "
        f"{'luck wins' if luck_wins else 'scheduler wins'} ({len(memo)} positions)."
    )

    tree = _witness(x0, root, picks) if witness and luck_wins else None
    return LuckGameSolution(luck_wins, len(memo), tree)


def _witness(
    x0: Configuration, root: Position, picks: dict[Position, list[tuple[Any, Option]]]
) -> dict[str, Any]:
    ids = {root: 0}
    nodes: list[dict[str, Any]] = [{}]
    stack = [root]
    while stack:
        key = stack.pop()
        bits, _, left = key
        entry: dict[str, Any] = {
            "id": ids[key],
            "configuration": str(x0.with_bits(bits)),
            "hash": bits,
            "steps_left": left,
            "moves": [],
        }
        for scheduled, (partner, nbits, nstate) in picks.get(key, []):
            child = (nbits, nstate, left - 1)
            if child not in ids:
                ids[child] = len(nodes)
                nodes.append({})
                stack.append(child)
            entry["moves"].append({"scheduled": scheduled, "partner": partner, "child": ids[child]})
        nodes[ids[key]] = entry
    return {"root": 0, "nodes": nodes}
