import math

from abc import ABC, abstractmethod
from typing import Iterable, NamedTuple, Sequence

from ..dynamics.configuration import Configuration
from ..errors import StrategyError
from ..graph.graph import Graph, RootedTree, spanning_tree
from ..graph.matching import Matching, perfect_matching
from ..graph.structures import find_l7_partition, star_decomposition
from .constants import LINE_MIN_N, LINE_PHASE_ONE_PAIRS, StrategyName


class RoundClock(NamedTuple):
    """
    Rounds of a b-fair trace: any `b(n-1)+1` consecutive steps schedule every vertex.
    """

    b: int
    n: int

    @property
    def round_length(self) -> int:
        return self.b * (self.n - 1) + 1

    def round_of(self, step: int) -> int:
        return step // self.round_length

    def rounds_used(self, steps: int) -> int:
        return math.ceil(steps / self.round_length)


class RoundContext(NamedTuple):
    step: int
    round: int


class LuckStrategy(ABC):
    """
    Partner choice of the luck player: given the configuration and the scheduled node, return a
    neighbor to play against. Valid on the vertices in `domain`.
    """

    domain: frozenset[int]

    @abstractmethod
    def partner(self, x: Configuration, node: int, ctx: RoundContext) -> int: ...

    def require_in_domain(self, node: int) -> None:
        if node not in self.domain:
            raise StrategyError(f"Node {node} is outside the strategy's domain.")


class ConstantStrategy(LuckStrategy):
    """Every node always plays the same partner."""

    def __init__(self, partners: dict[int, int]) -> None:
        self.partners = dict(partners)
        self.domain = frozenset(partners)

    def partner(self, x: Configuration, node: int, ctx: RoundContext) -> int:
        self.require_in_domain(node)
        return self.partners[node]


def matching_luck_strategy(m: Matching) -> ConstantStrategy:
    """
    Each node plays its partner in `m`. After every covered node was scheduled once, all covered
    labels are `0`.
    """
    return ConstantStrategy(m.mate)


def first_neighbor_strategy(g: Graph) -> ConstantStrategy:
    return ConstantStrategy({v: g.adjacency[v][0] for v in range(g.n) if g.adjacency[v]})


class StarStrategy(LuckStrategy):
    """
    Leaves play the center. The center, labeled `1`, plays the first leaf labeled `1` in
    `leaf_order`; labeled `0`, it plays the first leaf labeled `0`, or the first leaf if there is
    none.

    `leaf_order` is the order in which the scheduler reaches the leaves after the center. The
    all-zero prefix of leaves in that order never shrinks and grows whenever the center is
    scheduled with label `1`.
    """

    def __init__(self, center: int, leaf_order: Sequence[int]) -> None:
        if not leaf_order:
            raise StrategyError("A star needs at least one leaf.")
        self.center = center
        self.leaf_order = tuple(leaf_order)
        self.domain = frozenset((center, *leaf_order))

    def partner(self, x: Configuration, node: int, ctx: RoundContext) -> int:
        self.require_in_domain(node)
        if node != self.center:
            return self.center
        label = x[self.center]
        return next((v for v in self.leaf_order if x[v] == label), self.leaf_order[0])


def _leaf_order(center: int, leaves: Iterable[int], order: Sequence[int] | None) -> list[int]:
    leaves = set(leaves)
    if order is None:
        return sorted(leaves)
    pos = order.index(center)
    rotated = [*order[pos + 1 :], *order[:pos]]
    return [v for v in rotated if v in leaves]


def star_luck_strategy(g: Graph, order: Sequence[int] | None = None) -> StarStrategy:
    """
    Winning strategy on a star against a 1-fair node scheduler.

    ### Args
    `g`
        Star `K_{1,n}`, any center.
    `order`
        Node permutation the scheduler repeats. Leaves are prioritized by their position after the
        center. Index order when omitted.
    """
    if g.n == 2 and g.m == 1:
        center = 0
    else:
        centers = [v for v in range(g.n) if g.degree(v) == g.n - 1]
        if g.n < 2 or g.m != g.n - 1 or not centers:
            raise StrategyError(f"{g.label} is not a star.")
        center = centers[0]
    leaves = [v for v in range(g.n) if v != center]
    return StarStrategy(center, _leaf_order(center, leaves, order))


class LineStrategy(LuckStrategy):
    """
    Two-round strategy on an odd line `x_0 - x_1 - ... - x_{k-1}`, `k >= 7`.

    * round 0: `x_0 x_1` and `x_2 x_3` play each other, `x_4` plays `x_5`, later nodes play their
      left neighbor. The first four end at `0`.
    * later rounds: `x_0 x_1 x_2` play among themselves and stay `0`; `x_3 x_4`, `x_5 x_6`, ... play
      each other and end at `0`.
    """

    def __init__(self, path: Sequence[int]) -> None:
        k = len(path)
        if k < LINE_MIN_N or k % 2 == 0:
            raise StrategyError(f"The line strategy needs an odd line with >= {LINE_MIN_N} nodes, got {k}.")
        self.path = tuple(path)
        self.domain = frozenset(path)
        self._pos = {v: i for i, v in enumerate(path)}

        first = {}
        for a, b in LINE_PHASE_ONE_PAIRS:
            first[a], first[b] = b, a
        first[4] = 5
        for i in range(5, k):
            first[i] = i - 1

        later = {0: 1, 1: 0, 2: 1}
        for i in range(3, k, 2):
            later[i], later[i + 1] = i + 1, i

        self._first = first
        self._later = later

    def partner(self, x: Configuration, node: int, ctx: RoundContext) -> int:
        self.require_in_domain(node)
        i = self._pos[node]
        rule = self._first if ctx.round == 0 else self._later
        return self.path[rule[i]]


def line_luck_strategy(n: int, path: Sequence[int] | None = None) -> LineStrategy:
    """
    Line strategy on `L_n`, vertices `0..n-1` in path order unless `path` is given.
    """
    if path is None:
        path = list(range(n))
    elif len(path) != n:
        raise StrategyError(f"Path has {len(path)} nodes, expected {n}.")
    return LineStrategy(path)


class ComposedStrategy(LuckStrategy):
    """
    Dispatch on the part containing the scheduled node. A partner outside that part is an error.
    """

    def __init__(self, parts: Sequence[tuple[frozenset[int], LuckStrategy]]) -> None:
        seen: set[int] = set()
        for vertices, strategy in parts:
            if seen & vertices:
                raise StrategyError(f"Parts overlap on {sorted(seen & vertices)}.")
            if not vertices <= strategy.domain:
                raise StrategyError("A part's strategy does not cover the part.")
            seen |= vertices
        self.parts = [(frozenset(vs), s) for vs, s in parts]
        self.domain = frozenset(seen)
        self._part_of = {v: i for i, (vs, _) in enumerate(self.parts) for v in vs}

    def partner(self, x: Configuration, node: int, ctx: RoundContext) -> int:
        self.require_in_domain(node)
        vertices, strategy = self.parts[self._part_of[node]]
        p = strategy.partner(x, node, ctx)
        if p not in vertices:
            raise StrategyError(f"Node {node} was sent across parts to {p}.")
        return p


def compose_strategies(
    parts: Sequence[tuple[Iterable[int], LuckStrategy]], domain: Iterable[int] | None = None
) -> ComposedStrategy:
    """
    Compose strategies over disjoint vertex sets.

    ### Args
    `parts`
        `(vertex set, strategy)` pairs.
    `domain`
        If given, the parts must cover exactly these vertices.
    """
    composed = ComposedStrategy([(frozenset(vs), s) for vs, s in parts])
    if domain is not None and composed.domain != frozenset(domain):
        raise StrategyError("Parts do not cover the domain.")
    return composed


def tree_luck_strategy(
    tree: Graph | RootedTree, order: Sequence[int] | None = None
) -> ComposedStrategy:
    """
    Star strategies over the star decomposition of a tree.

    ### Args
    `tree`
        Tree, rooted at `0` unless a `RootedTree` is given.
    `order`
        Node permutation of the scheduler. Each star prioritizes its leaves by the order restricted
        to the star.
    """
    if isinstance(tree, Graph) and not tree.is_tree():
        raise StrategyError(f"{tree.label} is not a tree.")
    t = tree if isinstance(tree, RootedTree) else spanning_tree(tree, 0)
    parts = []
    for star in star_decomposition(t).stars:
        strategy = StarStrategy(star.center, _leaf_order(star.center, star.leaves, order))
        parts.append((star.vertices, strategy))
    return compose_strategies(parts, range(t.n))


def random_graph_luck_strategy(g: Graph) -> LuckStrategy | None:
    """
    Strategy certified by the graph's structure, or `None`.

    * even `n`: matching strategy on a perfect matching.
    * odd `n`: line strategy on a 7-path plus matching strategy on the rest.
    """
    if g.n % 2 == 0:
        m = perfect_matching(g)
        return None if m is None else matching_luck_strategy(m)

    part = find_l7_partition(g)
    if part is None:
        return None
    parts: list[tuple[Iterable[int], LuckStrategy]] = [(part.path, line_luck_strategy(len(part.path), part.path))]
    if part.rest:
        parts.append((part.rest, matching_luck_strategy(part.matching)))
    return compose_strategies(parts, range(g.n))


def build_strategy(g: Graph, name: StrategyName | str, order: Sequence[int] | None = None) -> LuckStrategy:
    """
    Build a named luck strategy for `g`.

    ### Args
    `g`
        Graph.
    `name`
        Strategy name.
    `order`
        Node permutation of the scheduler, used by the star and tree strategies.

    ### Raises
    `StrategyError` if the graph lacks the structure the strategy needs.
    """
    name = StrategyName(name)
    match name:
        case StrategyName.Star:
            return star_luck_strategy(g, order)
        case StrategyName.Tree:
            return tree_luck_strategy(g, order)
        case StrategyName.Matching:
            m = perfect_matching(g)
            if m is None:
                raise StrategyError(f"{g.label} has no perfect matching.")
            return matching_luck_strategy(m)
        case StrategyName.Line:
            if set(g.edges) != {(i, i + 1) for i in range(g.n - 1)}:
                raise StrategyError(f"The line strategy needs the path 0-1-...-{g.n - 1}, got {g.label}.")
            return line_luck_strategy(g.n)
        case StrategyName.RandomGraph:
            strategy = random_graph_luck_strategy(g)
            if strategy is None:
                raise StrategyError(f"No perfect matching or 7-path partition found on {g.label}.")
            return strategy
        case StrategyName.FirstNeighbor:
            return first_neighbor_strategy(g)
        case _:
            raise ValueError(f"Unknown strategy: {name}")
