import itertools
import pytest

from pavlovstab.dynamics.configuration import all_configurations
from pavlovstab.dynamics.periodic import stabilizes_from_all
from pavlovstab.dynamics.update import run, step
from pavlovstab.gf2.integer import (
    IntMatrix,
    bareiss_determinant,
    integer_schedule_matrix,
    labeling_of_order,
    lower_triangular_power,
    lower_triangular_power_closed_form,
    order_of_labeling,
    path_count_matrix,
    principal_minor_sum,
)
from pavlovstab.gf2.matrix import (
    Gf2Matrix,
    delta_matrix,
    is_nilpotent,
    schedule_matrix,
    update_matrix,
)
from pavlovstab.gf2.star import (
    iterated_difference_closed_form,
    iterated_differences,
    leaf_sum_closed_form,
    leaf_sums,
)
from pavlovstab.graph.generators import generate
from pavlovstab.graph.graph import Graph


def test_update_matrix_matches_step():
    g = generate("k4")
    for e in g.edges:
        a = update_matrix(e, g.n)
        for x in all_configurations(g.n):
            assert a.apply(x) == step(g, x, e)


@pytest.mark.parametrize("g", [generate("line", 4), generate("k3-merge"), generate("cycle", 5)])
def test_schedule_matrix_matches_run(g: Graph):
    order = list(reversed(g.edges))
    m = schedule_matrix(g, order)
    for x in all_configurations(g.n):
        assert m.apply(x) == run(g, x, order, len(order)).final


@pytest.mark.parametrize("g", [generate("line", 3), generate("cycle", 4), generate("k3-merge"), generate("star", 3)])
def test_nilpotent_iff_stabilizes(g: Graph):
    for order in itertools.permutations(g.edges):
        assert is_nilpotent(schedule_matrix(g, order)) == stabilizes_from_all(g, order)


def test_line3_precluding_order():
    g = generate("line", 3)
    m = schedule_matrix(g, [(0, 1), (1, 2)])
    assert not is_nilpotent(m)
    assert m.to_lists() == [[1, 1, 1], [1, 1, 1], [0, 1, 1]]


def test_gf2_matrix_arithmetic():
    a = Gf2Matrix.from_lists([[1, 1], [0, 1]])
    assert a @ a == Gf2Matrix.identity(2)
    assert a**5 == a
    assert (a + a).is_zero()
    assert a.transpose().to_lists() == [[1, 0], [1, 1]]
    assert a.trace() == 0
    with pytest.raises(ValueError):
        Gf2Matrix.from_lists([[1, 0]])


def test_delta_product_rule():
    n = 3
    for i, j, k, l in itertools.product(range(n), repeat=4):
        prod = delta_matrix(i, j, n) @ delta_matrix(k, l, n)
        expected = delta_matrix(i, l, n) if j == k else Gf2Matrix.zero(n)
        assert prod == expected


@pytest.mark.parametrize(
    ["rows", "expected"],
    [
        ([], 1),
        ([[7]], 7),
        ([[2, 1], [1, 3]], 5),
        ([[0, 1], [1, 0]], -1),
        ([[1, 2, 3], [4, 5, 6], [7, 8, 10]], -3),
        ([[1, 2, 3], [4, 5, 6], [7, 8, 9]], 0),
    ],
)
def test_bareiss_determinant(rows: list[list[int]], expected: int):
    assert bareiss_determinant(rows) == expected


@pytest.mark.parametrize("g", [generate("k4"), generate("cycle", 5), generate("star", 4)])
def test_integer_schedule_matrix(g: Graph):
    eye = IntMatrix.identity(g.n)
    for labels in itertools.islice(itertools.permutations(range(1, g.m + 1)), 30):
        labeling = list(labels)
        integer = integer_schedule_matrix(g, labeling)
        assert integer == eye + path_count_matrix(g, labeling)
        assert integer.mod2() == schedule_matrix(g, order_of_labeling(g, labeling))
        assert labeling_of_order(g, order_of_labeling(g, labeling)) == labeling


def test_principal_minor_sums():
    m = IntMatrix.from_lists([[1, 2, 3], [4, 5, 6], [7, 8, 10]])
    assert principal_minor_sum(m, 1) == m.trace() == 16
    assert principal_minor_sum(m, 2) == (5 - 8) + (10 - 21) + (50 - 48)
    assert principal_minor_sum(m, 3) == -3
    with pytest.raises(ValueError):
        principal_minor_sum(m, 4)


def test_labeling_must_be_bijective():
    with pytest.raises(ValueError):
        order_of_labeling(generate("line", 3), [1, 1])


@pytest.mark.parametrize(["n", "k"], itertools.product(range(1, 7), range(1, 6)))
def test_lower_triangular_power(n: int, k: int):
    assert lower_triangular_power(n, k) == lower_triangular_power_closed_form(n, k)


@pytest.mark.parametrize("n", range(1, 6))
def test_leaf_sum_closed_forms(n: int):
    rounds = 6
    for x in itertools.product((0, 1), repeat=n):
        sums = leaf_sums(x, rounds + n)
        for t in range(1, rounds + 1):
            assert sums[t - 1] == leaf_sum_closed_form(x, t)
            for k in range(1, n):
                assert iterated_differences(sums, k)[t - 1] == iterated_difference_closed_form(x, t, k)
