import numpy as np
import pytest

from pavlovstab.dynamics.configuration import Configuration, all_configurations
from pavlovstab.dynamics.periodic import periodic_outcome, stabilizes_from_all
from pavlovstab.errors import ScheduleFormatError, SchedulerError, UnsupportedGraphError
from pavlovstab.gf2.matrix import is_nilpotent
from pavlovstab.graph.generators import generate
from pavlovstab.graph.graph import Graph, canonical_edge
from pavlovstab.schedulers.constants import DaemonKind
from pavlovstab.schedulers.constructions import (
    construct_1fair_nonnilpotent,
    construct_2fair_enumeration,
    stabilizing_edge_daemon,
    star_3fair_initial,
    star_3fair_schedule,
)
from pavlovstab.schedulers.driver import run_scheduler
from pavlovstab.schedulers.fairness import edge_fairness, fairness_advance, fairness_monitor, fairness_start
from pavlovstab.schedulers.io import parse_schedule, write_schedule
from pavlovstab.schedulers.permutations import family_permutation
from pavlovstab.schedulers.scheduler import (
    K3AdaptiveDaemon,
    RandomPermutationScheduler,
    SchedulerDecision,
    SequenceScheduler,
)
from pavlovstab.schedulers.spec import build_scheduler

PAW = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)], name="paw")


@pytest.mark.parametrize(
    ["family", "n", "expected"],
    [
        ("id", 5, [0, 1, 2, 3, 4]),
        ("p3", 5, [0, 3, 1, 4, 2]),
        ("p3", 7, [0, 3, 6, 2, 5, 1, 4]),
        ("pattern13", 8, [0, 2, 1, 3, 4, 6, 5, 7]),
        ("pattern13", 6, [0, 2, 1, 3, 4, 5]),
    ],
)
def test_family_permutation(family: str, n: int, expected: list[int]):
    assert family_permutation(family, n) == expected


def test_family_permutation_errors():
    with pytest.raises(SchedulerError):
        family_permutation("p3", 6)
    with pytest.raises(SchedulerError):
        family_permutation("random", 6)
    perm = family_permutation("random", 9, np.random.default_rng(3))
    assert sorted(perm) == list(range(9))


@pytest.mark.parametrize(
    ["trace", "n", "per_vertex", "b"],
    [
        ([0, 1, 2, 0, 1, 2], 3, (1, 1, 1), 1),
        ([0, 1, 1, 0], 2, (2, 0), 2),
        ([0, 1, 0], 2, (1, None), None),
        ([(0, 1), (1, 2), (0, 1), (1, 2)], 3, (1, 0, 1), 1),
    ],
)
def test_fairness_monitor(trace: list, n: int, per_vertex: tuple, b: int | None):
    report = fairness_monitor(trace, n)
    assert report.per_vertex == per_vertex
    assert report.b == b
    assert report.steps == len(trace)


def test_fairness_monitor_empty():
    with pytest.raises(ValueError):
        fairness_monitor([], 3)


def test_fairness_advance_matches_monitor():
    trace = [0, 1, 1, 0, 2, 0, 1, 2]
    state = fairness_start(3)
    worst = -1
    for v in trace:
        state, closed = fairness_advance(state, [v], cap=10)
        worst = max(worst, closed)
    assert worst == fairness_monitor(trace, 3).b == 2


def test_sequence_scheduler_prefix_then_cycle():
    g = generate("line", 3)
    s = SequenceScheduler(g, DaemonKind.Edge, [(1, 2)], prefix=[(0, 1)])
    assert [s.next_edge() for _ in range(4)] == [(0, 1), (1, 2), (1, 2), (1, 2)]
    s.reset()
    assert s.next_edge() == (0, 1)


def test_sequence_scheduler_rejects_mixed_items():
    g = generate("line", 3)
    with pytest.raises(SchedulerError):
        SequenceScheduler(g, DaemonKind.Edge, [1])
    with pytest.raises(SchedulerError):
        SequenceScheduler(g, DaemonKind.Node, [(0, 1)])
    with pytest.raises(SchedulerError):
        SequenceScheduler(g, DaemonKind.Node, [])
    with pytest.raises(SchedulerError):
        SequenceScheduler(g, DaemonKind.Node, [3])


def test_random_permutation_scheduler_passes():
    g = generate("cycle", 5)
    s = RandomPermutationScheduler(g, seed=11)
    decisions = [s.decide().node for _ in range(20)]
    for i in range(0, 20, 5):
        assert sorted(decisions[i : i + 5]) == list(range(5))
    assert fairness_monitor(decisions, 5).b <= 2


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_k3_adaptive_daemon_never_stabilizes(seed: int):
    g = generate("k3")
    res = run_scheduler(g, K3AdaptiveDaemon(g, seed=seed), Configuration.all_ones(3), 300, record_trace=True)
    assert not res.reached_zero
    assert res.steps == 300
    assert fairness_monitor(res.trace, 3).b <= 2


def test_k3_adaptive_daemon_needs_k3():
    with pytest.raises(SchedulerError):
        K3AdaptiveDaemon(generate("line", 3))
    d = K3AdaptiveDaemon(generate("k3"))
    with pytest.raises(SchedulerError):
        d.decide()


@pytest.mark.parametrize("g", [generate("line", 4), generate("k3-merge"), generate("star", 3), PAW])
def test_stabilizing_edge_daemon(g: Graph):
    for x in all_configurations(g.n):
        s = stabilizing_edge_daemon(g)
        assert run_scheduler(g, s, x, 2 * g.m).reached_zero


def test_star_3fair_schedule():
    assert star_3fair_schedule(4) == [0, 1, 1, 3, 2, 1, 4, 4]
    assert star_3fair_schedule(6) == [0, 1, 1, 3, 4, 5, 2, 1, 6, 6]
    assert str(star_3fair_initial(4)) == "01100"
    assert fairness_monitor(star_3fair_schedule(5) * 3, 6).b == 3
    with pytest.raises(SchedulerError):
        star_3fair_schedule(3)


def test_2fair_enumeration_line3():
    assert construct_2fair_enumeration(generate("line", 3)) == [(1, 0), (1, 2)]


@pytest.mark.parametrize(
    "g",
    [generate("line", 5), generate("star", 4), generate("cycle", 5), generate("k4"), generate("k3-merge"), PAW],
)
def test_2fair_enumeration(g: Graph):
    seq = construct_2fair_enumeration(g)
    counts = {e: 0 for e in g.edges}
    for e in seq:
        counts[canonical_edge(*e)] += 1
    assert all(1 <= c <= 2 for c in counts.values())
    assert edge_fairness(g, seq, 3).b <= 2
    assert not periodic_outcome(g, Configuration.single_one(g.n, 0), seq).stabilizes
    assert not stabilizes_from_all(g, seq)


@pytest.mark.parametrize(
    ["g", "expected_class"],
    [
        (generate("cycle", 4), "G1"),
        (generate("cycle", 6), "G1"),
        (generate("k4"), "G1"),
        (generate("k3-merge"), "G1"),
        (generate("line", 3), "G2"),
        (generate("line", 5), "G2"),
        (PAW, "G2"),
        (generate("line", 4), "G3"),
        (generate("star", 3), "G3"),
        (generate("line", 8), "G3"),
    ],
)
def test_construct_1fair_nonnilpotent(g: Graph, expected_class: str):
    res = construct_1fair_nonnilpotent(g)
    assert str(res.graph_class) == expected_class
    assert sorted(res.order) == sorted(g.edges)
    assert not is_nilpotent(res.matrix)
    assert not periodic_outcome(g, res.witness, res.order).stabilizes


@pytest.mark.parametrize("g", [generate("k3"), generate("line", 6)])
def test_construct_1fair_unsupported(g: Graph):
    with pytest.raises(UnsupportedGraphError):
        construct_1fair_nonnilpotent(g)


def test_parse_schedule():
    decisions = parse_schedule(["# replay", "E 0 1", "", "E 2 1"], generate("line", 3))
    assert decisions == [SchedulerDecision.of_edge(0, 1), SchedulerDecision.of_edge(2, 1)]
    assert parse_schedule(["N 2", "N 0"]) == [SchedulerDecision.of_node(2), SchedulerDecision.of_node(0)]


@pytest.mark.parametrize(
    ["lines", "expected_line"],
    [
        (["E 0"], 1),
        (["N x"], 1),
        (["E 0 1", "X 1"], 2),
        (["E 0 2"], 1),
        (["N 5"], 1),
        (["E 0 1", "N 1"], None),
    ],
)
def test_parse_schedule_errors(lines: list[str], expected_line: int | None):
    with pytest.raises(ScheduleFormatError) as err:
        parse_schedule(lines, generate("line", 3))
    assert err.value.line == expected_line


def test_build_scheduler():
    line5 = generate("line", 5)
    s = build_scheduler(line5, "periodic-node:p3")
    assert [d.node for d in s.cycle] == [0, 3, 1, 4, 2]
    assert s.fairness == 1

    line3 = generate("line", 3)
    s = build_scheduler(line3, "periodic-edge:1,0")
    assert [d.edge for d in s.cycle] == [(1, 2), (0, 1)]
    assert build_scheduler(line3, "constant-edge:1").next_edge() == (1, 2)
    assert build_scheduler(generate("k3"), "k3-adaptive:2").start == 2


@pytest.mark.parametrize(
    "spec",
    ["bogus", "constant-edge:5", "periodic-node:0,0,1", "periodic-edge:0,x", "k3-adaptive", "star-3fair", "file:"],
)
def test_build_scheduler_errors(spec: str):
    with pytest.raises(SchedulerError):
        build_scheduler(generate("line", 3), spec)


def test_build_scheduler_from_file(tmp_path):
    g = generate("line", 3)
    path = tmp_path / "schedule.txt"
    with open(path, "wt") as fh:
        write_schedule([SchedulerDecision.of_edge(1, 0), SchedulerDecision.of_edge(1, 2)], fh)
    s = build_scheduler(g, f"file:{path}")
    assert [s.next_edge() for _ in range(4)] == [(1, 0), (1, 2), (1, 0), (1, 2)]


def test_run_scheduler_ignoring_zero():
    g = generate("line", 2)
    s = build_scheduler(g, "periodic-edge:id")
    res = run_scheduler(
        g, s, Configuration.parse("11"), 5, record_trace=True, record_trajectory=True, stop_at_zero=False
    )
    assert res.steps == 5
    assert res.trace == [(0, 1)] * 5
    assert res.reached_zero
    assert [r.configuration for r in res.trajectory] == [Configuration.zeros(2)] * 5
