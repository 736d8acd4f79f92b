import numpy as np
import polars as pl
import pytest

from pavlovstab.dynamics.configuration import Configuration
from pavlovstab.errors import BudgetExceededError, GraphError, SchedulerError
from pavlovstab.graph.generators import generate
from pavlovstab.rng import Stream, make_rng
from pavlovstab.schedulers.spec import build_scheduler
from pavlovstab.verify.checks import k3_adaptive_block_check, star_schedule_branch_check
from pavlovstab.verify.constants import DEF_QUANTILES, EXPERIMENT_COLS, REFERENCE_ROUNDS
from pavlovstab.verify.estimate import (
    estimate_stabilization,
    fairness_profile,
    random_nonzero_configuration,
)
from pavlovstab.verify.exhaustive import exhaustive_1fair_check
from pavlovstab.verify.experiment import compare_reference, convergence_experiment, run_cycle_unit
from pavlovstab.verify.suites import run_suite


def test_exhaustive_line3():
    report = exhaustive_1fair_check(generate("line", 3))
    assert (report.permutations, report.stabilizing) == (2, 0)
    assert not report.all_stabilize
    first = report.first_counterexample()
    assert first is not None and first.counterexample is not None
    assert not first.nilpotent

    df = report.to_frame()
    assert df.columns == ["order", "nilpotent", "stabilizes", "counterexample"]
    assert df.height == 2
    assert report.to_json()["counterexample"] is not None


def test_exhaustive_line6_all_stabilize():
    report = exhaustive_1fair_check(generate("line", 6))
    assert report.permutations == 120
    assert report.all_stabilize
    assert report.first_counterexample() is None
    assert report.to_json()["counterexample"] is None


def test_exhaustive_budget():
    with pytest.raises(BudgetExceededError):
        exhaustive_1fair_check(generate("k4"), max_m=5)


def test_random_nonzero_configuration():
    rng = make_rng(0, Stream.Initial)
    assert random_nonzero_configuration(1, rng) == Configuration.parse("1")
    for n in (3, 70):
        x = random_nonzero_configuration(n, rng)
        assert x.n == n and not x.is_zero()
    with pytest.raises(ValueError):
        random_nonzero_configuration(0, rng)


def test_estimate_stabilization():
    line2 = generate("line", 2)
    est = estimate_stabilization(line2, lambda s: build_scheduler(line2, "random-edge", seed=s), None, 20, 1, 0)
    assert (est.p_hat, est.stderr, est.successes) == (1.0, 0.0, 20)

    line3 = generate("line", 3)
    est = estimate_stabilization(
        line3,
        lambda s: build_scheduler(line3, "constant-edge:0", seed=s),
        Configuration.parse("001"),
        10,
        5,
        0,
    )
    assert est.p_hat == 0.0

    with pytest.raises(ValueError):
        estimate_stabilization(line3, lambda s: build_scheduler(line3, "random-edge", seed=s), None, 0, 1, 0)


def test_estimate_stabilization_threads():
    c5 = generate("cycle", 5)
    factory = lambda s: build_scheduler(c5, "random-edge", seed=s)  # noqa: E731
    single = estimate_stabilization(c5, factory, None, 40, 3, 7)
    pooled = estimate_stabilization(c5, factory, None, 40, 3, 7, threads=4)
    assert single == pooled


def test_fairness_profile():
    c5 = generate("cycle", 5)
    profile = fairness_profile(build_scheduler(c5, "periodic-node:id"), c5, 50)
    assert profile.report.b == 1
    assert profile.table.columns == ["quantile", "max_count"]
    assert profile.table.height == len(DEF_QUANTILES)
    assert profile.table.get_column("max_count").to_list() == [1.0] * len(DEF_QUANTILES)

    with pytest.raises(ValueError):
        fairness_profile(build_scheduler(c5, "periodic-node:id"), c5, 4)


def test_run_cycle_unit():
    res = run_cycle_unit(8, list(range(8)), 100, np.random.default_rng(0), max_passes=50)
    assert 1.0 <= res.mean <= 50.0
    assert res.stderr >= 0.0


@pytest.mark.parametrize(["n", "min_unfinished"], [(4, 1), (16, 90)])
def test_run_cycle_unit_edge_daemon_stops_after_n_passes(n: int, min_unfinished: int):
    max_passes = 10**9
    rng = np.random.default_rng(0)
    res = run_cycle_unit(n, list(range(n)), 100, rng, daemon="edge", max_passes=max_passes)
    assert res.unfinished >= min_unfinished
    finished = 100 - res.unfinished
    if finished:
        # Samples that reach zero do so within n passes.
        assert (res.mean * 100 - res.unfinished * max_passes) / finished <= n + 1e-6


def test_convergence_experiment():
    df = convergence_experiment([4, 8], ["id", "random"], 50, 3, random_permutations=3)
    assert df.columns == EXPERIMENT_COLS
    assert df.height == 4
    assert df.get_column("family").to_list() == ["id", "id", "random", "random"]
    assert (df.get_column("mean_rounds") >= 1.0).all()

    again = convergence_experiment([4, 8], ["id", "random"], 50, 3, random_permutations=3, threads=2)
    assert df.equals(again)


@pytest.mark.parametrize(
    ["n_list", "families", "samples", "error"],
    [
        ([6], ["p3"], 10, SchedulerError),
        ([2], ["id"], 10, GraphError),
        ([4], ["id"], 0, ValueError),
    ],
)
def test_convergence_experiment_errors(n_list: list[int], families: list[str], samples: int, error: type):
    with pytest.raises(error):
        convergence_experiment(n_list, families, samples, 0)


@pytest.mark.slow
@pytest.mark.parametrize("family", ["id", "p3"])
def test_node_daemon_matches_reference(family: str):
    df = compare_reference(convergence_experiment([4, 8, 16, 32, 64, 128], [family], 1000, 1))
    assert df.get_column("rel_dev").abs().max() <= 0.15, df


def test_compare_reference():
    df = pl.DataFrame(
        {"family": ["id", "id"], "n": [4, 5], "mean_rounds": [REFERENCE_ROUNDS["id"][4], 3.0]}
    )
    res = compare_reference(df)
    assert res.get_column("reference").to_list() == [REFERENCE_ROUNDS["id"][4], None]
    assert res.get_column("rel_dev").to_list() == [0.0, None]


def test_k3_adaptive_block_check():
    report = k3_adaptive_block_check(3)
    assert report.ok, report.failures
    assert report.b is not None and report.b <= 2


@pytest.mark.parametrize("leaves", [4, 5])
def test_star_schedule_branch_check(leaves: int):
    report = star_schedule_branch_check(leaves)
    assert report.ok
    assert report.b == 3


@pytest.mark.parametrize(
    ["suite", "kwargs"],
    [
        ("nilpotency", {"max_m": 3}),
        ("line6", {}),
        ("identities", {"max_order": 4, "max_m": 3, "delta_n": 2}),
        ("luck", {"max_tree_n": 4, "max_star_leaves": 2, "budget": 24, "crosschecks": 5}),
        ("two-fair", {}),
        ("one-fair", {}),
        ("adaptive", {}),
        ("random-graph", {"seeds": 5, "budget": 24}),
    ],
)
def test_suites(suite: str, kwargs: dict):
    res = run_suite(suite, **kwargs)
    assert res.ok, res.failures
    assert res.checked > 0
    assert res.to_json()["suite"] == suite
