"""
Convergence-round experiments on the cycle `C_n` under 1-fair scheduling.

A sample starts from a uniformly random nonzero configuration and runs passes of a fixed
permutation until all labels are zero. The number of passes started is its round count, so a
sample that reaches zero mid-pass counts the partial pass as a full round. All samples of one
`(family, n, permutation)` unit are run together as rows of a numpy array.
"""

import math
import numpy as np
import polars as pl

from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, NamedTuple

from loguru import logger

from ..errors import GraphError
from ..rng import Stream, make_rng
from ..schedulers.constants import DaemonKind, PermutationFamily
from ..schedulers.permutations import family_permutation
from .constants import (
    DEF_EXPERIMENT_SIZES,
    DEF_MAX_PASSES,
    DEF_RANDOM_PERMUTATIONS,
    EXPERIMENT_COLS,
    REFERENCE_ROUNDS,
)


class UnitResult(NamedTuple):
    mean: float
    stderr: float
    unfinished: int


def _random_nonzero_rows(samples: int, n: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.integers(0, 2, size=(samples, n), dtype=np.uint8)
    while True:
        zero = ~x.any(axis=1)
        if not zero.any():
            return x
        x[zero] = rng.integers(0, 2, size=(int(zero.sum()), n), dtype=np.uint8)


def run_cycle_unit(
    n: int,
    perm: list[int],
    samples: int,
    rng: np.random.Generator,
    *,
    daemon: DaemonKind = DaemonKind.Node,
    max_passes: int = DEF_MAX_PASSES,
) -> UnitResult:
    """
    Mean rounds to all zeros on `C_n` for one scheduling permutation.

    ### Args
    `n`
        Cycle length, at least 3.
    `perm`
        Order of a pass. Nodes for the node daemon, edge indices for the edge daemon where edge
        `i` joins `i` and `i+1 mod n`.
    `samples`
        Independent samples.
    `rng`
        Generator for initial configurations and partner coins.
    `daemon`
        Node daemon with a uniformly random neighbor per visit, or edge daemon.
    `max_passes`
        Samples still nonzero after this many passes are counted at the cap. Under the edge
        daemon, samples still nonzero after `n` passes never stabilize and are counted at the cap
        too.

    ### Returns
    `UnitResult`
    """
    x = _random_nonzero_rows(samples, n, rng)
    rounds = np.zeros(samples, dtype=np.int64)
    active = np.arange(samples)
    # An edge pass is a fixed linear map on n bits: its kernel chain stops growing after n passes,
    # so a sample still nonzero then never reaches zero.
    limit = max_passes if daemon == DaemonKind.Node else min(max_passes, n)
    passes = 0
    while active.size and passes < limit:
        xa = x[active]
        rows = np.arange(active.size)
        for i in perm:
            if daemon == DaemonKind.Node:
                coin = rng.integers(0, 2, size=active.size)
                u = np.full(active.size, i)
                v = np.where(coin == 0, (i - 1) % n, (i + 1) % n)
                label = xa[rows, u] ^ xa[rows, v]
                xa[rows, u] = label
                xa[rows, v] = label
            else:
                u, v = i, (i + 1) % n
                label = xa[:, u] ^ xa[:, v]
                xa[:, u] = label
                xa[:, v] = label
        passes += 1
        done = ~xa.any(axis=1)
        rounds[active[done]] = passes
        x[active] = xa
        active = active[~done]

    if active.size:
        rounds[active] = max_passes
        logger.warning(
            f"{active.size} of {samples} samples on C_{n} did not reach zero in {passes} passes, "
            f"counted at {max_passes}."
        )

    mean = float(rounds.mean())
    stderr = float(rounds.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return UnitResult(mean, stderr, int(active.size))


def _is_on_grid(n: int) -> bool:
    return n in DEF_EXPERIMENT_SIZES


def convergence_experiment(
    n_list: Iterable[int],
    families: Iterable[PermutationFamily | str],
    samples: int,
    seed: int,
    *,
    daemon: DaemonKind | str = DaemonKind.Node,
    random_permutations: int = DEF_RANDOM_PERMUTATIONS,
    max_passes: int = DEF_MAX_PASSES,
    threads: int = 1,
) -> pl.DataFrame:
    """
    Mean rounds to all zeros on `C_n` per permutation family and size.

    The `random` family reports the largest mean over `random_permutations` random permutations,
    with that permutation's standard error.

    ### Args
    `n_list`
        Cycle lengths. Powers of two in `[4, 1024]` are expected, others are run with a warning.
    `families`
        Permutation families, ex. `id`, `p3`, `pattern13`, `random`.
    `samples`
        Samples per permutation.
    `seed`
        Master seed. Unit `(family, n, permutation)` draws from its own stream.
    `daemon`
        `node` (random partner) or `edge`.
    `random_permutations`
        Permutations drawn for the `random` family.
    `max_passes`
        Pass cap per sample.
    `threads`
        Worker threads over units.

    ### Returns
    `pl.DataFrame` with columns `family, n, samples, mean_rounds, stderr, seed`.

    ### Raises
    `SchedulerError` if a family is undefined for some `n`, ex. `p3` with `3 | n`.
    """
    if samples < 1:
        raise ValueError(f"Need at least one sample, got {samples}.")
    daemon = DaemonKind(daemon)
    n_list = list(n_list)
    families = [PermutationFamily(f) for f in families]
    family_ids = {f: i for i, f in enumerate(PermutationFamily)}

    for n in n_list:
        if n < 3:
            raise GraphError(f"C_n needs n >= 3, got {n}.")
        if not _is_on_grid(n):
            logger.warning(f"n={n} is off the reference grid {DEF_EXPERIMENT_SIZES}.")

    # Build every permutation up front so invalid (family, n) pairs fail before any work.
    units: list[tuple[PermutationFamily, int, int, list[int]]] = []
    for family in families:
        for n in n_list:
            count = random_permutations if family == PermutationFamily.Random else 1
            for k in range(count):
                rng = make_rng(seed, Stream.Permutation, family_ids[family], n, k)
                units.append((family, n, k, family_permutation(family, n, rng)))

    def run_unit(unit: tuple[PermutationFamily, int, int, list[int]]) -> UnitResult:
        family, n, k, perm = unit
        logger.info(f"Running {samples} samples of {family} on C_{n} (permutation {k}).")
        rng = make_rng(seed, Stream.Experiment, family_ids[family], n, k)
        return run_cycle_unit(n, perm, samples, rng, daemon=daemon, max_passes=max_passes)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_unit, units))
    else:
        results = [run_unit(u) for u in units]

    best: dict[tuple[PermutationFamily, int], UnitResult] = {}
    for (family, n, _, _), res in zip(units, results):
        key = (family, n)
        if key not in best or res.mean > best[key].mean:
            best[key] = res

    rows = [
        (str(family), n, samples, best[family, n].mean, best[family, n].stderr, seed)
        for family in families
        for n in n_list
    ]
    return pl.DataFrame(
        rows,
        schema={
            "family": pl.String,
            "n": pl.Int64,
            "samples": pl.Int64,
            "mean_rounds": pl.Float64,
            "stderr": pl.Float64,
            "seed": pl.Int64,
        },
        orient="row",
    ).select(EXPERIMENT_COLS)


def compare_reference(df: pl.DataFrame) -> pl.DataFrame:
    """
    Add the reference mean rounds and the relative deviation from it. Both are null where no
    reference value exists.
    """
    reference = [
        REFERENCE_ROUNDS.get(family, {}).get(n)
        for family, n in zip(df.get_column("family"), df.get_column("n"))
    ]
    return df.with_columns(reference=pl.Series(reference, dtype=pl.Float64)).with_columns(
        rel_dev=(pl.col("mean_rounds") - pl.col("reference")) / pl.col("reference")
    )
