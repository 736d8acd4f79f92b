"""
Leaf dynamics of a star whose center stays labeled `0` while a 1-fair node scheduler runs it.

Leaves are indexed `1..n` in the order the scheduler reaches them after the center. Over one
round leaf `i` ends with the prefix sum of leaves `1..i`, so the leaf labels follow
`Y_{t+1} = B . Y_t` over GF(2) with `B` the all-ones lower triangle. `S_t` is the parity of the
leaf labels at round `t` (with `Y_1 = x`), which the center picks up at the start of the next
round.
"""

import math

from typing import Sequence

from .matrix import Gf2Matrix


def star_round_matrix(n: int) -> Gf2Matrix:
    return Gf2Matrix.from_lists([[int(i >= j) for j in range(n)] for i in range(n)])


def _pack(x: Sequence[int]) -> int:
    return sum((b & 1) << i for i, b in enumerate(x))


def leaf_rounds(x: Sequence[int], rounds: int) -> list[int]:
    """
    Packed leaf labels `Y_1 .. Y_rounds` starting from `Y_1 = x`.
    """
    b = star_round_matrix(len(x))
    y = _pack(x)
    out = []
    for _ in range(rounds):
        out.append(y)
        y = b.column_apply_bits(y)
    return out


def leaf_sums(x: Sequence[int], rounds: int) -> list[int]:
    """`S_1 .. S_rounds` by simulating the recurrence."""
    return [y.bit_count() & 1 for y in leaf_rounds(x, rounds)]


def leaf_sum_closed_form(x: Sequence[int], t: int) -> int:
    n = len(x)
    return sum(math.comb(n - i + t - 1, t - 1) * x[i - 1] for i in range(1, n + 1)) % 2


def iterated_differences(seq: Sequence[int], k: int) -> list[int]:
    """`k`-th forward difference of a GF(2) sequence."""
    out = list(seq)
    for _ in range(k):
        out = [(b - a) % 2 for a, b in zip(out, out[1:])]
    return out


def iterated_difference_closed_form(x: Sequence[int], t: int, k: int) -> int:
    """`k`-th difference of `S` at round `t`: `sum_{i <= n-k} C(n-i+t-1, t+k-1) x_i` mod 2."""
    n = len(x)
    return sum(math.comb(n - i + t - 1, t + k - 1) * x[i - 1] for i in range(1, n - k + 1)) % 2
