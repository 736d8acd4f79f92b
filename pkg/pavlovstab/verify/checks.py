import math

from typing import NamedTuple

from loguru import logger

from ..dynamics.configuration import Configuration
from ..dynamics.update import step_bits
from ..errors import SchedulerError
from ..graph.generators import generate
from ..graph.constants import GraphFamily
from ..schedulers.constants import FAIRNESS_PERIODS
from ..schedulers.constructions import star_3fair_initial, star_3fair_schedule
from ..schedulers.fairness import fairness_advance, fairness_monitor, fairness_start
from ..schedulers.scheduler import K3AdaptiveDaemon

# Counts above this are already a fairness violation for the K3 daemon.
K3_FAIRNESS_CAP = 3
K3_BLOCK_LEN = 3
DEF_K3_BLOCKS = 10


class K3BlockReport(NamedTuple):
    blocks: int
    # Distinct (scheduler state, configuration, fairness state) positions seen.
    positions: int
    branches: int
    b: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def k3_adaptive_block_check(blocks: int = DEF_K3_BLOCKS, *, start: int = 0) -> K3BlockReport:
    """
    Follow the adaptive `K_3` daemon from all ones over every luck branch of `blocks` blocks.

    Each block must end at all ones, and must either schedule every node or start and end with
    the same node. The worst inter-scheduling count over all branches must stay at 2.
    """
    g = generate(GraphFamily.K3)
    daemon = K3AdaptiveDaemon(g, start=start)
    ones = Configuration.all_ones(3)
    frontier = {(daemon.initial_state(), ones.bits, fairness_start(3), ())}
    positions = len(frontier)
    failures: list[str] = []
    worst = -1

    for t in range(blocks * K3_BLOCK_LEN):
        nxt = set()
        for state, bits, fstate, block in frontier:
            try:
                d, nstate = daemon.transition(state, ones.with_bits(bits))
            except SchedulerError as err:
                failures.append(f"step {t}: {err}")
                continue
            assert d.node is not None
            fstate, closed = fairness_advance(fstate, (d.node,), K3_FAIRNESS_CAP)
            worst = max(worst, closed)
            for p in g.adjacency[d.node]:
                nxt.add((nstate, step_bits(bits, d.node, p), fstate, (*block, d.node)))

        if (t + 1) % K3_BLOCK_LEN == 0:
            ended = set()
            for state, bits, fstate, block in nxt:
                if bits != ones.bits:
                    failures.append(f"block {t // K3_BLOCK_LEN} ended at {ones.with_bits(bits)}.")
                if len(set(block)) != 3 and block[0] != block[-1]:
                    failures.append(f"block {block} is neither a permutation nor closed.")
                ended.add((state, bits, fstate, ()))
            nxt = ended
        frontier = nxt
        positions += len(frontier)

    if worst > 2:
        failures.append(f"An inter-scheduling count reached {worst}.")
    branches = 2 ** (blocks * K3_BLOCK_LEN)
    logger.info(f"K3 adaptive daemon: {blocks} blocks, {positions} positions, worst count {worst}.")
    return K3BlockReport(blocks, positions, branches, worst, failures)


class StarBranchReport(NamedTuple):
    leaves: int
    period: list[int]
    initial: Configuration
    branches: int
    finals: list[Configuration]
    b: int | None

    @property
    def ok(self) -> bool:
        return self.finals == [self.initial] and self.b == 3


def star_schedule_branch_check(leaves: int) -> StarBranchReport:
    """
    Replay one period of the 3-fair star schedule on `K_{1,leaves}` over every partner choice of
    the center. Every branch must return to the initial configuration, and the repeated period
    must be exactly 3-fair.
    """
    g = generate(GraphFamily.Star, leaves)
    period = star_3fair_schedule(leaves)
    x0 = star_3fair_initial(leaves)

    frontier = {x0.bits}
    for v in period:
        frontier = {step_bits(bits, v, p) for bits in frontier for p in g.adjacency[v]}
    finals = sorted(x0.with_bits(bits) for bits in frontier)
    branches = math.prod(len(g.adjacency[v]) for v in period)
    b = fairness_monitor(period * FAIRNESS_PERIODS, g.n).b
    logger.info(f"Star schedule on K_1,{leaves}: {branches} branches, {len(finals)} distinct finals, b={b}.")
    return StarBranchReport(leaves, period, x0, branches, finals, b)
