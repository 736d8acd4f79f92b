import itertools
import math
import numpy as np

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from ..graph.graph import Edge, Graph
from .matrix import Gf2Matrix


@dataclass(frozen=True, eq=False)
class IntMatrix:
    """
    Square matrix of Python ints (numpy `object` array, so entries never overflow).
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise ValueError(f"Matrix must be square, got shape {self.entries.shape}.")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        n = len(rows)
        arr = np.empty((n, n), dtype=object)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise ValueError("Matrix must be square.")
            for j, e in enumerate(r):
                arr[i, j] = int(e)
        return cls(arr)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_lists([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries[ij]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.entries.shape == other.entries.shape and bool(
            (self.entries == other.entries).all()
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(self.entries + other.entries)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(self.entries - other.entries)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.order == 0:
            return self
        return IntMatrix(np.dot(self.entries, other.entries))

    def mod2(self) -> Gf2Matrix:
        return Gf2Matrix.from_lists([[e % 2 for e in row] for row in self.to_lists()])

    def trace(self) -> int:
        return sum(self.entries[i, i] for i in range(self.order))

    def principal_minor(self, indices: Sequence[int]) -> int:
        sub = [[self.entries[i, j] for j in indices] for i in indices]
        return bareiss_determinant(sub)

    def to_lists(self) -> list[list[int]]:
        return [[int(e) for e in row] for row in self.entries]

    def __str__(self) -> str:
        return "\n".join(" ".join(str(e) for e in row) for row in self.to_lists())


def bareiss_determinant(rows: Sequence[Sequence[int]]) -> int:
    """
    Exact integer determinant by fraction-free elimination.
    """
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def check_labeling(g: Graph, labeling: Sequence[int]) -> None:
    if sorted(labeling) != list(range(1, g.m + 1)):
        raise ValueError(f"Labeling must assign 1..{g.m} to the edges bijectively.")


def order_of_labeling(g: Graph, labeling: Sequence[int]) -> list[Edge]:
    """Edges sorted by label. `labeling[i]` is the label of edge `i`."""
    check_labeling(g, labeling)
    return [g.edges[i] for i in sorted(range(g.m), key=lambda i: labeling[i])]


def labeling_of_order(g: Graph, order: Sequence[Edge]) -> list[int]:
    """Inverse of `order_of_labeling`."""
    labeling = [0] * g.m
    for label, (u, v) in enumerate(order, start=1):
        labeling[g.index_of(u, v)] = label
    check_labeling(g, labeling)
    return labeling


def swap_matrix(e: Edge, n: int) -> IntMatrix:
    """`P = delta(i, j) + delta(j, i)` over the integers."""
    i, j = e
    rows = [[0] * n for _ in range(n)]
    rows[i][j] = rows[j][i] = 1
    return IntMatrix.from_lists(rows)


def integer_schedule_matrix(g: Graph, labeling: Sequence[int]) -> IntMatrix:
    """
    Integer product of `I + P_e` over the edges in increasing label order.
    """
    result = IntMatrix.identity(g.n)
    eye = IntMatrix.identity(g.n)
    for e in order_of_labeling(g, labeling):
        result = result @ (eye + swap_matrix(e, g.n))
    return result


def path_count_matrix(g: Graph, labeling: Sequence[int]) -> IntMatrix:
    """
    Count walks with strictly increasing edge labels.

    Entry `(i, j)` is the number of nonempty walks from `i` to `j` in the graph with each edge
    usable in both directions, where successive edges carry strictly increasing labels.

    ### Args
    `g`
        Graph.
    `labeling`
        `labeling[k]` is the label of edge `k`; a bijection onto `1..m`.

    ### Returns
    `IntMatrix` `C`. The integer schedule matrix equals `I + C`.
    """
    check_labeling(g, labeling)
    incident: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for k, (u, v) in enumerate(g.edges):
        incident[u].append((labeling[k], v))
        incident[v].append((labeling[k], u))

    @lru_cache(maxsize=None)
    def ends(v: int, last: int) -> tuple[int, ...]:
        # Walks continuing from `v` after an edge labeled `last`, including the empty one.
        counts = [0] * g.n
        counts[v] = 1
        for label, w in incident[v]:
            if label > last:
                for j, c in enumerate(ends(w, label)):
                    counts[j] += c
        return tuple(counts)

    rows = []
    for i in range(g.n):
        row = list(ends(i, 0))
        row[i] -= 1
        rows.append(row)
    return IntMatrix.from_lists(rows)


def principal_minor_sum(m: IntMatrix, p: int) -> int:
    """Exact sum of all `p x p` principal minors."""
    if not 1 <= p <= m.order:
        raise ValueError(f"Minor order must be in 1..{m.order}, got {p}.")
    return sum(m.principal_minor(s) for s in itertools.combinations(range(m.order), p))


def principal_minor_parity(m: IntMatrix, p: int) -> int:
    return principal_minor_sum(m, p) % 2


def lower_triangular_ones(n: int) -> IntMatrix:
    return IntMatrix.from_lists([[int(i >= j) for j in range(n)] for i in range(n)])


def lower_triangular_power(n: int, k: int) -> IntMatrix:
    """
    `B^k` over the integers, `B` the all-ones lower triangle of order `n`.
    """
    if n < 1 or k < 1:
        raise ValueError(f"Need n >= 1 and k >= 1, got n={n}, k={k}.")
    b = lower_triangular_ones(n)
    result = b
    for _ in range(k - 1):
        result = result @ b
    return result


def lower_triangular_power_closed_form(n: int, k: int) -> IntMatrix:
    """Entries `C(i - j + k - 1, k - 1)` for `i >= j`, zero above the diagonal."""
    return IntMatrix.from_lists(
        [
            [math.comb(i - j + k - 1, k - 1) if i >= j else 0 for j in range(n)]
            for i in range(n)
        ]
    )
