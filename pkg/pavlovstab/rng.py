import numpy as np

from enum import IntEnum


class Stream(IntEnum):
    """
    Named random streams.

    Every consumer of randomness draws from its own stream so that adding draws in one place
    never shifts the numbers seen by another.
    """

    Graph = 1
    Scheduler = 2
    Partner = 3
    Initial = 4
    Trial = 5
    Permutation = 6
    Experiment = 7


def make_rng(seed: int, stream: Stream, *keys: int) -> np.random.Generator:
    """
    Counter-based generator for `(seed, stream, *keys)`.

    ### Args
    `seed`
        Master seed. Must be non-negative.
    `stream`
        Named stream.
    `keys`
        Extra indices, ex. trial or permutation number.

    ### Returns
    `np.random.Generator` over `Philox`.
    """
    if seed < 0:
        raise ValueError(f"Seed must be non-negative, got {seed}.")
    seq = np.random.SeedSequence([seed, int(stream), *keys])
    return np.random.Generator(np.random.Philox(seq))
