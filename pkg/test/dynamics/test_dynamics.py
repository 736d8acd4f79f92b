import itertools
import pytest

from pavlovstab.dynamics.configuration import Configuration, all_configurations
from pavlovstab.dynamics.periodic import PeriodicOutcome, period_map, periodic_outcome, stabilizes_from_all
from pavlovstab.dynamics.update import (
    is_fixed_point,
    is_garden_of_eden,
    predecessors,
    run,
    step,
)
from pavlovstab.errors import BudgetExceededError, InvalidEdgeError
from pavlovstab.graph.generators import generate
from pavlovstab.graph.graph import Graph


@pytest.mark.parametrize(
    ["text", "expected_bits", "expected_n"],
    [
        ("001", 4, 3),
        ("0b001", 4, 3),
        ("1", 1, 1),
        ("", 0, 0),
        ("0110", 6, 4),
    ],
)
def test_configuration_parse(text: str, expected_bits: int, expected_n: int):
    x = Configuration.parse(text)
    assert (x.bits, x.n) == (expected_bits, expected_n)
    assert str(x) == text.removeprefix("0b")


@pytest.mark.parametrize(["text", "n"], [("012", None), ("0101", 3), ("ab", None)])
def test_configuration_parse_errors(text: str, n: int | None):
    with pytest.raises(ValueError):
        Configuration.parse(text, n)


def test_configuration_helpers():
    x = Configuration.parse("1011")
    assert x.support() == [0, 2, 3]
    assert x.count_ones() == 3
    assert x.labels == (1, 0, 1, 1)
    assert (x ^ Configuration.all_ones(4)) == Configuration.parse("0100")
    assert Configuration.single_one(4, 2) == Configuration.parse("0010")
    assert Configuration.zeros(4).is_zero()
    assert len(list(all_configurations(4))) == 16


@pytest.mark.parametrize(
    ["x", "edge", "expected"],
    [
        ("110", (0, 1), "000"),
        ("110", (1, 2), "111"),
        ("110", (2, 1), "111"),
        ("000", (0, 1), "000"),
        ("011", (0, 1), "111"),
    ],
)
def test_step(x: str, edge: tuple[int, int], expected: str):
    g = generate("line", 3)
    assert str(step(g, Configuration.parse(x), edge)) == expected


def test_step_rejects_non_edge():
    with pytest.raises(InvalidEdgeError):
        step(generate("line", 3), Configuration.parse("110"), (0, 2))


def test_run():
    g = generate("line", 3)
    res = run(g, Configuration.parse("001"), itertools.repeat((0, 1)), 50)
    assert not res.reached_zero
    assert res.steps == 50
    assert str(res.final) == "001"

    res = run(g, Configuration.parse("011"), [(1, 2), (0, 1), (1, 2)], 50, record=True)
    assert res.reached_zero
    assert res.steps == 1
    assert [str(r.configuration) for r in res.trajectory] == ["000"]

    res = run(g, Configuration.parse("100"), [(0, 1), (1, 2)], 50, record=True)
    assert not res.reached_zero
    assert res.steps == 2
    assert [str(r.configuration) for r in res.trajectory] == ["110", "111"]


def test_run_from_zero_plays_nothing():
    res = run(generate("line", 3), Configuration.zeros(3), itertools.repeat((0, 1)), 10)
    assert res.reached_zero and res.steps == 0


@pytest.mark.parametrize("g", [generate("line", 4), generate("k4"), generate("k3-merge"), generate("star", 3)])
def test_predecessors_exhaustive(g: Graph):
    for x in all_configurations(g.n):
        expected = set()
        for y in all_configurations(g.n):
            for e in g.edges:
                if y != x and step(g, y, e) == x:
                    expected.add((y, e))
        assert predecessors(g, x) == expected


@pytest.mark.parametrize(
    ["family", "n", "x", "expected"],
    [
        ("line", 3, "101", True),
        ("line", 3, "010", True),
        ("line", 3, "110", False),
        ("k3", None, "111", False),
        ("k3", None, "000", False),
    ],
)
def test_is_garden_of_eden(family: str, n: int | None, x: str, expected: bool):
    assert is_garden_of_eden(generate(family, n), Configuration.parse(x)) == expected


def test_only_zero_is_fixed():
    g = generate("k3-merge")
    fixed = [x for x in all_configurations(g.n) if is_fixed_point(g, x)]
    assert fixed == [Configuration.zeros(g.n)]


def test_periodic_outcome():
    line2 = generate("line", 2)
    assert periodic_outcome(line2, Configuration.parse("10"), [(0, 1)]) == PeriodicOutcome(True, 2, None)

    line3 = generate("line", 3)
    assert periodic_outcome(line3, Configuration.parse("001"), [(0, 1)]) == PeriodicOutcome(False, 1, 1)
    assert periodic_outcome(line3, Configuration.parse("100"), [(0, 1), (1, 2)]) == PeriodicOutcome(False, 6, 3)


@pytest.mark.parametrize("g", [generate("line", 3), generate("cycle", 4), generate("k3-merge")])
def test_stabilizes_from_all_matches_simulation(g: Graph):
    for order in itertools.permutations(g.edges):
        expected = all(periodic_outcome(g, x, order).stabilizes for x in all_configurations(g.n))
        assert stabilizes_from_all(g, order) == expected


def test_period_map():
    g = generate("line", 3)
    table = period_map(g, [(0, 1), (1, 2)])
    assert table.tolist() == [run(g, x, [(0, 1), (1, 2)], 2).final.bits for x in all_configurations(3)]


def test_period_map_limits():
    with pytest.raises(BudgetExceededError):
        period_map(generate("line", 23), [(0, 1)])
    with pytest.raises(ValueError):
        period_map(generate("line", 3), [])
    with pytest.raises(InvalidEdgeError):
        period_map(generate("line", 3), [(0, 2)])
