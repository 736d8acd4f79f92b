import math
import numpy as np

from ..errors import SchedulerError
from .constants import PermutationFamily


def family_permutation(
    family: PermutationFamily | str, n: int, rng: np.random.Generator | None = None
) -> list[int]:
    """
    Node orders used by the convergence experiments.

    * id: `0, 1, ..., n-1`
    * p3: `3i mod n`, needs `gcd(3, n) = 1`
    * pattern13: the identity with positions `4k+1` and `4k+2` swapped, `0, 2, 1, 3, 4, 6, 5, 7, ...`
    * random: uniform permutation drawn from `rng`

    ### Returns
    List whose `i`-th entry is the `i`-th node scheduled in a pass.
    """
    family = PermutationFamily(family)
    match family:
        case PermutationFamily.Identity:
            return list(range(n))
        case PermutationFamily.Times3:
            if math.gcd(3, n) != 1:
                raise SchedulerError(f"p3 needs gcd(3, n) = 1, got n={n}.")
            return [(3 * i) % n for i in range(n)]
        case PermutationFamily.Pattern13:
            perm = list(range(n))
            for i in range(1, n - 1, 4):
                perm[i], perm[i + 1] = perm[i + 1], perm[i]
            return perm
        case PermutationFamily.Random:
            if rng is None:
                raise SchedulerError("A random permutation needs a generator.")
            return [int(v) for v in rng.permutation(n)]
        case _:
            raise ValueError(f"Unknown permutation family: {family}")


def require_permutation(items: list, universe: list, what: str) -> None:
    if sorted(items) != sorted(universe):
        raise SchedulerError(f"Expected a permutation of the {what}, got {items}.")
