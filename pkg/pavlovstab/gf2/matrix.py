from dataclasses import dataclass
from typing import Iterable, Sequence

from ..dynamics.configuration import Configuration
from ..graph.graph import Edge, Graph


@dataclass(frozen=True)
class Gf2Matrix:
    """
    Square matrix over GF(2). Row `i` is packed into an int whose bit `j` is entry `(i, j)`.

    Configurations act as row vectors: `x -> x . M`. For a product `A_1 . A_2`, `A_1` acts first.
    """

    order: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.order:
            raise ValueError(f"Expected {self.order} rows, got {len(self.rows)}.")
        limit = 1 << self.order
        for i, row in enumerate(self.rows):
            if not 0 <= row < limit:
                raise ValueError(f"Row {i} has bits outside {self.order} columns.")

    @classmethod
    def zero(cls, n: int) -> "Gf2Matrix":
        return cls(n, (0,) * n)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "Gf2Matrix":
        n = len(entries)
        rows = []
        for r in entries:
            if len(r) != n:
                raise ValueError("Matrix must be square.")
            rows.append(sum((e & 1) << j for j, e in enumerate(r)))
        return cls(n, tuple(rows))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def __add__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        self._require_order(other)
        return Gf2Matrix(self.order, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    def __matmul__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        self._require_order(other)
        return Gf2Matrix(self.order, tuple(other.apply_bits(row) for row in self.rows))

    def __pow__(self, k: int) -> "Gf2Matrix":
        if k < 0:
            raise ValueError("Negative powers are not supported.")
        result = Gf2Matrix.identity(self.order)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def _require_order(self, other: "Gf2Matrix") -> None:
        if other.order != self.order:
            raise ValueError(f"Order mismatch: {self.order} vs {other.order}.")

    def is_zero(self) -> bool:
        return not any(self.rows)

    def trace(self) -> int:
        return sum(self[i, i] for i in range(self.order)) & 1

    def transpose(self) -> "Gf2Matrix":
        return Gf2Matrix.from_lists(
            [[self[j, i] for j in range(self.order)] for i in range(self.order)]
        )

    def apply_bits(self, x: int) -> int:
        """Row-vector product `x . M` on packed bits."""
        out = 0
        i = 0
        while x:
            if x & 1:
                out ^= self.rows[i]
            x >>= 1
            i += 1
        return out

    def column_apply_bits(self, y: int) -> int:
        """Column-vector product `M . y` on packed bits."""
        return sum(((row & y).bit_count() & 1) << i for i, row in enumerate(self.rows))

    def apply(self, x: Configuration) -> Configuration:
        if x.n != self.order:
            raise ValueError(f"Configuration has {x.n} labels, matrix has order {self.order}.")
        return x.with_bits(self.apply_bits(x.bits))

    def to_lists(self) -> list[list[int]]:
        return [[self[i, j] for j in range(self.order)] for i in range(self.order)]

    def __str__(self) -> str:
        return "\n".join("".join(str(e) for e in row) for row in self.to_lists())


def delta_matrix(i: int, j: int, n: int) -> Gf2Matrix:
    """Single one at `(i, j)`."""
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"Index ({i}, {j}) out of range for order {n}.")
    rows = [0] * n
    rows[i] = 1 << j
    return Gf2Matrix(n, tuple(rows))


def update_matrix(e: Edge, n: int) -> Gf2Matrix:
    """
    `I + delta(i, j) + delta(j, i)`: the linear map of playing edge `(i, j)`.
    """
    i, j = e
    if i == j:
        raise ValueError(f"Edge endpoints must differ, got ({i}, {j}).")
    return Gf2Matrix.identity(n) + delta_matrix(i, j, n) + delta_matrix(j, i, n)


def schedule_matrix(g: Graph, order: Iterable[Edge]) -> Gf2Matrix:
    """
    Product `A_{e_1} . A_{e_2} ... A_{e_k}` of update matrices in schedule order.

    ### Args
    `g`
        Graph the schedule runs on.
    `order`
        Edges of `g`, any length. A permutation of all edges gives a 1-fair period.

    ### Returns
    `Gf2Matrix` mapping the configuration at a period start to the one at the period end.
    """
    m = Gf2Matrix.identity(g.n)
    for u, v in order:
        g.index_of(u, v)
        m = m @ update_matrix((u, v), g.n)
    return m


def is_nilpotent(m: Gf2Matrix) -> bool:
    """
    Whether `M^n = 0`, checked by squaring until the exponent reaches the order.
    """
    p = m
    exponent = 1
    while exponent < m.order:
        p = p @ p
        exponent *= 2
    return p.is_zero()
