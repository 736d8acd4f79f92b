import math
import numpy as np
import polars as pl

from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, NamedTuple

from loguru import logger

from ..dynamics.configuration import Configuration
from ..graph.graph import Graph
from ..rng import Stream, make_rng
from ..schedulers.driver import run_scheduler
from ..schedulers.fairness import FairnessReport, fairness_monitor
from ..schedulers.scheduler import Scheduler
from ..strategies.strategy import RoundClock
from .constants import DEF_QUANTILES

SchedulerFactory = Callable[[int], Scheduler]


class StabilizationEstimate(NamedTuple):
    p_hat: float
    stderr: float
    trials: int
    successes: int
    seed: int

    def to_json(self) -> dict[str, Any]:
        return self._asdict()


def random_nonzero_configuration(n: int, rng: np.random.Generator) -> Configuration:
    """Uniform configuration over `{0,1}^n` without the all-zero one."""
    if n < 1:
        raise ValueError("Need at least one vertex.")
    bits = int(rng.integers(1, 1 << n)) if n < 63 else 0
    while bits == 0:
        bits = int.from_bytes(rng.bytes((n + 7) // 8), "little") & ((1 << n) - 1)
    return Configuration(bits, n)


def _trial_seed(seed: int, i: int) -> int:
    return int(make_rng(seed, Stream.Trial, i).integers(2**62))


def estimate_stabilization(
    g: Graph,
    scheduler_factory: SchedulerFactory,
    x0: Configuration | None,
    trials: int,
    max_rounds: int,
    seed: int,
    *,
    threads: int = 1,
) -> StabilizationEstimate:
    """
    Estimate the probability of reaching all zeros within `max_rounds` rounds.

    Trial `i` builds its scheduler from a seed derived from `(seed, i)` and, when `x0` is `None`,
    draws its own nonzero initial configuration. Results do not depend on `threads`.

    ### Args
    `g`
        Graph.
    `scheduler_factory`
        Builds a fresh scheduler from a seed.
    `x0`
        Initial configuration, or `None` for a random nonzero one per trial.
    `trials`
        Number of independent trials.
    `max_rounds`
        Budget in rounds of `b(n-1)+1` steps, `b` being the scheduler's declared bound or `1`.
    `seed`
        Master seed.
    `threads`
        Worker threads.

    ### Returns
    `StabilizationEstimate`
    """
    if trials < 1:
        raise ValueError(f"Need at least one trial, got {trials}.")

    def trial(i: int) -> bool:
        scheduler = scheduler_factory(_trial_seed(seed, i))
        start = x0 if x0 is not None else random_nonzero_configuration(
            g.n, make_rng(seed, Stream.Initial, i)
        )
        max_steps = max_rounds * RoundClock(scheduler.fairness or 1, g.n).round_length
        return run_scheduler(g, scheduler, start, max_steps).reached_zero

    logger.info(f"Running {trials} trials on {g.label} with seed {seed}.")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(trial, range(trials)))
    else:
        outcomes = [trial(i) for i in range(trials)]

    successes = sum(outcomes)
    p_hat = successes / trials
    stderr = math.sqrt(p_hat * (1 - p_hat) / trials)
    logger.info(f"{g.label}: {successes} of {trials} trials reached zero.")
    return StabilizationEstimate(p_hat, stderr, trials, successes, seed)


class FairnessProfile(NamedTuple):
    report: FairnessReport
    table: pl.DataFrame


def fairness_profile(
    scheduler: Scheduler,
    g: Graph,
    steps: int,
    *,
    x0: Configuration | None = None,
    quantiles: tuple[float, ...] = DEF_QUANTILES,
) -> FairnessProfile:
    """
    Observe a scheduler for `steps` steps and tabulate the per-vertex inter-scheduling counts.

    The dynamics keep running past all zeros so that only the scheduler is measured. Randomness
    comes from the scheduler's own seed.

    ### Args
    `scheduler`
        Scheduler bound to `g`.
    `g`
        Graph.
    `steps`
        Steps to observe, at least `n`.
    `x0`
        Configuration the run starts from. All ones by default, which adaptive schedulers
        may require.
    `quantiles`
        Quantiles of the per-vertex counts to report.

    ### Returns
    `FairnessProfile` with columns `quantile`, `max_count`. Vertices scheduled fewer than twice
    are left out of the quantiles and listed in the report.
    """
    if steps < g.n:
        raise ValueError(f"Need at least n={g.n} steps, got {steps}.")

    start = x0 if x0 is not None else Configuration.all_ones(g.n)
    result = run_scheduler(g, scheduler, start, steps, record_trace=True, stop_at_zero=False)
    assert result.trace is not None
    report = fairness_monitor(result.trace, g.n)

    counts = [c for c in report.per_vertex if c is not None]
    if report.never_rescheduled:
        logger.warning(
            f"{len(report.never_rescheduled)} vertices were scheduled fewer than twice in {steps} steps."
        )
    values = (
        [float(np.quantile(counts, q, method="inverted_cdf")) for q in quantiles]
        if counts
        else [None] * len(quantiles)
    )
    table = pl.DataFrame(
        {"quantile": list(quantiles), "max_count": values},
        schema={"quantile": pl.Float64, "max_count": pl.Float64},
    )
    return FairnessProfile(report, table)
