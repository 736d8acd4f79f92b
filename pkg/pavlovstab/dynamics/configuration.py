from dataclasses import dataclass
from typing import Iterable, Iterator

from .constants import BIN_PREFIX, ONE_CHAR, ZERO_CHAR


@dataclass(frozen=True, order=True)
class Configuration:
    """
    One label in `{0, 1}` per vertex, packed into an int. Bit `v` holds the label of vertex `v`.

    The text form lists vertex `0` first: `"001"` on three vertices labels vertex `2` with `1`.
    """

    bits: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"Vertex count must be non-negative, got {self.n}.")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"Bits {self.bits:#b} do not fit {self.n} vertices.")

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Configuration":
        text = text.strip().removeprefix(BIN_PREFIX)
        if any(c not in (ZERO_CHAR, ONE_CHAR) for c in text):
            raise ValueError(f"Configuration must only contain 0 and 1, got {text!r}.")
        if n is not None and len(text) != n:
            raise ValueError(f"Configuration {text!r} has {len(text)} labels, expected {n}.")
        return cls.from_labels(int(c) for c in text)

    @classmethod
    def from_labels(cls, labels: Iterable[int]) -> "Configuration":
        bits = 0
        n = 0
        for v, label in enumerate(labels):
            if label not in (0, 1):
                raise ValueError(f"Label of vertex {v} must be 0 or 1, got {label}.")
            bits |= label << v
            n += 1
        return cls(bits, n)

    @classmethod
    def zeros(cls, n: int) -> "Configuration":
        return cls(0, n)

    @classmethod
    def all_ones(cls, n: int) -> "Configuration":
        return cls((1 << n) - 1, n)

    @classmethod
    def single_one(cls, n: int, v: int) -> "Configuration":
        if not 0 <= v < n:
            raise ValueError(f"Vertex {v} out of range 0..{n - 1}.")
        return cls(1 << v, n)

    def __getitem__(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise IndexError(v)
        return (self.bits >> v) & 1

    def __xor__(self, other: "Configuration") -> "Configuration":
        if other.n != self.n:
            raise ValueError(f"Cannot combine configurations on {self.n} and {other.n} vertices.")
        return Configuration(self.bits ^ other.bits, self.n)

    def __str__(self) -> str:
        return "".join(ONE_CHAR if self[v] else ZERO_CHAR for v in range(self.n))

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(self[v] for v in range(self.n))

    def is_zero(self) -> bool:
        return self.bits == 0

    def support(self) -> list[int]:
        return [v for v in range(self.n) if self[v]]

    def count_ones(self) -> int:
        return self.bits.bit_count()

    def with_bits(self, bits: int) -> "Configuration":
        return Configuration(bits, self.n)


def all_configurations(n: int) -> Iterator[Configuration]:
    for bits in range(1 << n):
        yield Configuration(bits, n)


def single_one_configurations(n: int) -> Iterator[Configuration]:
    for v in range(n):
        yield Configuration.single_one(n, v)
