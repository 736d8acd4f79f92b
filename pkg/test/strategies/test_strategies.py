import itertools
import networkx as nx
import pytest

from pavlovstab.dynamics.configuration import Configuration, all_configurations
from pavlovstab.errors import BudgetExceededError, StrategyError
from pavlovstab.graph.generators import generate
from pavlovstab.graph.graph import Graph
from pavlovstab.graph.matching import Matching
from pavlovstab.schedulers.constants import DaemonKind
from pavlovstab.schedulers.constructions import periodic_scheduler, star_3fair_daemon, star_3fair_initial
from pavlovstab.schedulers.scheduler import K3AdaptiveDaemon, RandomPermutationScheduler
from pavlovstab.schedulers.spec import build_scheduler
from pavlovstab.strategies.constants import DEF_HORIZON_ROUNDS
from pavlovstab.strategies.game import play_game, solve_luck_game
from pavlovstab.strategies.strategy import (
    ComposedStrategy,
    ConstantStrategy,
    LineStrategy,
    RoundClock,
    RoundContext,
    build_strategy,
    line_luck_strategy,
    matching_luck_strategy,
    random_graph_luck_strategy,
    star_luck_strategy,
    tree_luck_strategy,
)


def test_round_clock():
    clock = RoundClock(2, 5)
    assert clock.round_length == 9
    assert clock.round_of(8) == 0
    assert clock.round_of(9) == 1
    assert clock.rounds_used(10) == 2
    assert clock.rounds_used(0) == 0


@pytest.mark.parametrize("leaves", [1, 2, 3])
def test_star_strategy_beats_1fair_schedulers(leaves: int):
    g = generate("star", leaves)
    for order in itertools.permutations(range(g.n)):
        scheduler = periodic_scheduler(g, DaemonKind.Node, order)
        strategy = star_luck_strategy(g, order)
        for x0 in all_configurations(g.n):
            scheduler.reset()
            assert play_game(g, scheduler, strategy, x0, 64).won, (order, str(x0))


def test_star_strategy_center_rule():
    g = generate("star", 3)
    strategy = star_luck_strategy(g, [0, 2, 1, 3])
    assert strategy.leaf_order == (2, 1, 3)
    ctx = RoundContext(0, 0)
    assert strategy.partner(Configuration.parse("1101"), 0, ctx) == 1
    assert strategy.partner(Configuration.parse("0011"), 0, ctx) == 1
    assert strategy.partner(Configuration.parse("0111"), 0, ctx) == 2
    assert strategy.partner(Configuration.parse("0111"), 3, ctx) == 0


def test_star_strategy_rejects_non_star():
    with pytest.raises(StrategyError):
        star_luck_strategy(generate("line", 4))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_tree_strategy_beats_1fair_schedulers(n: int):
    for nxt in nx.nonisomorphic_trees(n):
        g = Graph.from_networkx(nxt)
        for order in itertools.permutations(range(n)):
            scheduler = periodic_scheduler(g, DaemonKind.Node, order)
            strategy = tree_luck_strategy(g, order)
            for x0 in all_configurations(n):
                scheduler.reset()
                assert play_game(g, scheduler, strategy, x0, 64).won, (g.edges, order, str(x0))


def test_tree_strategy_needs_tree():
    with pytest.raises(StrategyError):
        tree_luck_strategy(generate("cycle", 4))


@pytest.mark.parametrize("order", [list(range(8)), [7, 5, 3, 1, 0, 2, 4, 6], [3, 4, 2, 5, 1, 6, 0, 7]])
def test_matching_strategy_clears_line8_in_one_round(order: list[int]):
    g = generate("line", 8)
    strategy = matching_luck_strategy(Matching.of([(0, 1), (2, 3), (4, 5), (6, 7)]))
    scheduler = periodic_scheduler(g, DaemonKind.Node, order)
    for x0 in all_configurations(8):
        scheduler.reset()
        res = play_game(g, scheduler, strategy, x0, 1)
        assert res.won and res.rounds_used <= 1


def test_line_strategy_clears_line7_in_two_rounds():
    g = generate("line", 7)
    strategy = line_luck_strategy(7)
    scheduler = periodic_scheduler(g, DaemonKind.Node, list(range(7)))
    for x0 in all_configurations(7):
        scheduler.reset()
        assert play_game(g, scheduler, strategy, x0, 2).won, str(x0)


@pytest.mark.parametrize("seed", range(5))
def test_line_strategy_against_2fair_scheduler(seed: int):
    g = generate("line", 9)
    strategy = line_luck_strategy(9)
    scheduler = RandomPermutationScheduler(g, seed=seed)
    for bits in range(1, 1 << 9, 37):
        scheduler.reset()
        assert play_game(g, scheduler, strategy, Configuration(bits, 9), 2).won


@pytest.mark.parametrize("n", [5, 6, 8])
def test_line_strategy_needs_odd_line(n: int):
    with pytest.raises(StrategyError):
        LineStrategy(list(range(n)))


def test_random_graph_strategy():
    assert isinstance(random_graph_luck_strategy(generate("line", 8)), ConstantStrategy)
    composed = random_graph_luck_strategy(generate("cycle", 9))
    assert isinstance(composed, ComposedStrategy)
    assert composed.domain == frozenset(range(9))
    assert random_graph_luck_strategy(generate("star", 3)) is None
    assert random_graph_luck_strategy(generate("line", 5)) is None


def test_composed_strategy_rejects_overlap():
    a = ConstantStrategy({0: 1, 1: 0})
    b = ConstantStrategy({1: 2, 2: 1})
    with pytest.raises(StrategyError):
        ComposedStrategy([(frozenset({0, 1}), a), (frozenset({1, 2}), b)])


@pytest.mark.parametrize(
    ["family", "n", "name"],
    [
        ("cycle", 7, "line"),
        ("line", 3, "matching"),
        ("cycle", 4, "tree"),
        ("line", 4, "star"),
        ("line", 5, "random-graph"),
    ],
)
def test_build_strategy_errors(family: str, n: int, name: str):
    with pytest.raises(StrategyError):
        build_strategy(generate(family, n), name)


def test_build_strategy():
    assert build_strategy(generate("line", 7), "line").domain == frozenset(range(7))
    assert build_strategy(generate("line", 3), "first-neighbor").partners == {0: 1, 1: 0, 2: 1}


def test_play_game_errors():
    g = generate("line", 3)
    with pytest.raises(StrategyError):
        play_game(g, build_scheduler(g, "periodic-edge:id"), line_luck_strategy(7), Configuration.all_ones(3), 2)
    with pytest.raises(StrategyError):
        play_game(
            g,
            build_scheduler(g, "periodic-node:id"),
            ConstantStrategy({0: 1, 1: 0}),
            Configuration.all_ones(3),
            2,
        )
    with pytest.raises(StrategyError):
        play_game(
            g,
            build_scheduler(g, "periodic-node:id"),
            ConstantStrategy({0: 1, 1: 0, 2: 0}),
            Configuration.all_ones(3),
            2,
        )


@pytest.mark.parametrize("order", list(itertools.permutations(range(4))))
def test_solver_luck_wins_on_star(order: tuple[int, ...]):
    g = generate("star", 3)
    scheduler = periodic_scheduler(g, DaemonKind.Node, order)
    for x0 in all_configurations(g.n):
        assert solve_luck_game(g, scheduler, x0, 16, b=1).luck_wins


def test_solver_scheduler_wins():
    k3 = generate("k3")
    assert not solve_luck_game(k3, K3AdaptiveDaemon(k3), Configuration.all_ones(3), 8, b=2).luck_wins

    star = generate("star", 4)
    assert not solve_luck_game(star, star_3fair_daemon(star), star_3fair_initial(4), 8, b=3).luck_wins

    line = generate("line", 3)
    constant = build_scheduler(line, "constant-edge:0")
    assert not solve_luck_game(line, constant, Configuration.parse("001"), 8).luck_wins


def test_solver_witness():
    g = generate("line", 2)
    sol = solve_luck_game(g, build_scheduler(g, "periodic-node:id"), Configuration.parse("10"), 2, witness=True)
    assert sol.luck_wins
    nodes = sol.witness["nodes"]
    assert nodes[0]["configuration"] == "10"
    assert nodes[0]["moves"] == [{"scheduled": 0, "partner": 1, "child": 1}]
    assert nodes[1]["configuration"] == "11"


def test_solver_at_default_horizon():
    star = generate("star", 7)
    sol = solve_luck_game(
        star, star_3fair_daemon(star), star_3fair_initial(7), DEF_HORIZON_ROUNDS, b=3
    )
    assert not sol.luck_wins


def test_solver_witness_within_budget():
    g = generate("star", 3)
    scheduler = periodic_scheduler(g, DaemonKind.Node, [0, 1, 2, 3])
    x0 = Configuration.all_ones(4)
    sol = solve_luck_game(g, scheduler, x0, DEF_HORIZON_ROUNDS, b=1)
    assert sol.luck_wins

    # The witness reuses the search, so the same budget suffices.
    sol = solve_luck_game(g, scheduler, x0, DEF_HORIZON_ROUNDS, b=1, budget=sol.states, witness=True)
    nodes = sol.witness["nodes"]
    assert nodes[0]["configuration"] == "1111"
    for node in nodes:
        if node["moves"]:
            assert all(g.has_edge(m["scheduled"], m["partner"]) for m in node["moves"])
        else:
            assert node["configuration"] == "0000"


def test_solver_limits():
    g = generate("line", 9)
    with pytest.raises(BudgetExceededError):
        solve_luck_game(g, build_scheduler(g, "periodic-node:id"), Configuration.all_ones(9), 2)
    g = generate("cycle", 6)
    with pytest.raises(BudgetExceededError):
        solve_luck_game(g, RandomPermutationScheduler(g), Configuration.all_ones(6), 16, budget=10)
