import itertools
import math
import networkx as nx

from typing import Any, Callable, Iterator, NamedTuple

from loguru import logger

from ..dynamics.configuration import Configuration, all_configurations
from ..dynamics.periodic import periodic_outcome, stabilizes_from_all
from ..errors import PavlovError
from ..gf2.integer import (
    IntMatrix,
    integer_schedule_matrix,
    lower_triangular_power,
    lower_triangular_power_closed_form,
    order_of_labeling,
    path_count_matrix,
)
from ..gf2.matrix import Gf2Matrix, delta_matrix, is_nilpotent, schedule_matrix, update_matrix
from ..gf2.star import (
    iterated_difference_closed_form,
    iterated_differences,
    leaf_sum_closed_form,
    leaf_sums,
)
from ..graph.constants import GraphFamily
from ..graph.generators import generate, sample_gnp
from ..graph.graph import Graph
from ..graph.matching import perfect_matching
from ..graph.structures import GraphClass, has_long_cycle
from ..rng import Stream, make_rng
from ..schedulers.constants import FAIRNESS_PERIODS, DaemonKind, PermutationFamily
from ..schedulers.constructions import (
    construct_1fair_nonnilpotent,
    construct_2fair_enumeration,
    periodic_scheduler,
    star_3fair_daemon,
    star_3fair_initial,
)
from ..schedulers.fairness import edge_fairness
from ..schedulers.permutations import family_permutation
from ..schedulers.scheduler import K3AdaptiveDaemon, RandomPermutationScheduler
from ..strategies.constants import DEF_HORIZON_ROUNDS, DEF_MAX_ROUNDS
from ..strategies.game import play_game, solve_luck_game
from ..strategies.strategy import (
    LuckStrategy,
    line_luck_strategy,
    matching_luck_strategy,
    random_graph_luck_strategy,
    tree_luck_strategy,
)
from .checks import k3_adaptive_block_check, star_schedule_branch_check
from .constants import (
    DEF_CORPUS_GNP_GRAPHS,
    DEF_CORPUS_GNP_N,
    DEF_CORPUS_GNP_P,
    DEF_DELTA_MAX_N,
    DEF_IDENTITY_MAX_ORDER,
    DEF_LUCK_MAX_STAR_LEAVES,
    DEF_LUCK_MAX_TREE_N,
    DEF_PERMUTATION_BUDGET,
    DEF_RANDOM_GRAPH_N,
    DEF_RANDOM_GRAPH_SEEDS,
    DEF_SOLVER_CROSSCHECKS,
    DEF_SUITE_MAX_M,
    RANDOM_GRAPH_MIN_WIN_RATE,
    STAR_BRANCH_LEAVES,
    SuiteName,
)
from .exhaustive import exhaustive_1fair_check
from .estimate import random_nonzero_configuration

# Attempts at drawing a connected random graph before giving up on the corpus.
MAX_CORPUS_DRAWS = 10_000


class SuiteResult(NamedTuple):
    name: str
    checked: int
    failures: list[str]
    details: dict[str, Any]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict[str, Any]:
        return {
            "suite": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "failures": self.failures,
            "details": self.details,
        }


def atlas_graphs(min_m: int, max_m: int) -> Iterator[Graph]:
    """Connected graphs, up to isomorphism, with `min_m <= m <= max_m` edges."""
    for i, nxg in enumerate(nx.graph_atlas_g()):
        m = nxg.number_of_edges()
        if min_m <= m <= max_m and nx.is_connected(nxg):
            yield Graph.from_networkx(nxg, name=f"atlas{i}")


def trees(n: int) -> Iterator[Graph]:
    if n == 1:
        yield Graph(1, (), name="T1")
        return
    for i, t in enumerate(nx.nonisomorphic_trees(n)):
        yield Graph.from_networkx(t, name=f"T{n}.{i}")


def connected_gnp(count: int, max_n: int, p: float, seed: int, *, min_n: int = 4) -> list[Graph]:
    """First `count` connected `G(n, p)` samples with at least two edges, `n` cycling over `min_n..max_n`."""
    graphs = []
    sizes = itertools.cycle(range(min_n, max_n + 1))
    for k in range(MAX_CORPUS_DRAWS):
        if len(graphs) == count:
            break
        g = sample_gnp(next(sizes), p, seed + k)
        if g.m >= 2 and g.is_connected():
            graphs.append(g)
    return graphs


def node_orders(n: int, seed: int, budget: int) -> Iterator[list[int]]:
    """
    Every node permutation when there are at most `budget` of them, else `budget` random ones.
    """
    if math.factorial(n) <= budget:
        yield from (list(p) for p in itertools.permutations(range(n)))
        return
    for k in range(budget):
        yield family_permutation(PermutationFamily.Random, n, make_rng(seed, Stream.Permutation, n, k))


def nilpotency_suite(*, max_m: int = DEF_SUITE_MAX_M, **_: Any) -> SuiteResult:
    """Nilpotency of the schedule matrix against stabilization from all `2^n` configurations."""
    checked = 0
    graphs = 0
    failures = []
    for g in atlas_graphs(2, max_m):
        graphs += 1
        for order in itertools.permutations(g.edges):
            checked += 1
            nilpotent = is_nilpotent(schedule_matrix(g, order))
            if nilpotent != stabilizes_from_all(g, order):
                failures.append(f"{g.label} {order}: nilpotent={nilpotent} disagrees with simulation.")
    return SuiteResult(SuiteName.Nilpotency, checked, failures, {"graphs": graphs})


def two_fair_corpus(seed: int) -> list[Graph]:
    corpus = [t for n in range(3, 8) for t in trees(n)]
    corpus += [generate(GraphFamily.Cycle, n) for n in range(4, 9)]
    corpus += [generate(GraphFamily.K4), generate(GraphFamily.K3Merge)]
    corpus += connected_gnp(DEF_CORPUS_GNP_GRAPHS, DEF_CORPUS_GNP_N, DEF_CORPUS_GNP_P, seed)
    return corpus


def two_fair_suite(*, seed: int = 0, **_: Any) -> SuiteResult:
    """The 2-fair enumeration is well formed and never stabilizes from a single `1`."""
    failures = []
    corpus = two_fair_corpus(seed)
    for g in corpus:
        try:
            seq = construct_2fair_enumeration(g)
        except PavlovError as err:
            failures.append(f"{g.label}: {err}")
            continue
        if (b := edge_fairness(g, seq, FAIRNESS_PERIODS).b) is None or b > 2:
            failures.append(f"{g.label}: enumeration is not 2-fair over edges, b={b}.")
        if stabilizes_from_all(g, seq):
            failures.append(f"{g.label}: enumeration stabilizes from every configuration.")
        if periodic_outcome(g, Configuration.single_one(g.n, 0), seq).stabilizes:
            failures.append(f"{g.label}: a single 1 at vertex 0 dies out.")
    return SuiteResult(SuiteName.TwoFair, len(corpus), failures, {"graphs": len(corpus)})


def one_fair_corpus(seed: int) -> list[tuple[Graph, GraphClass]]:
    g1 = [
        generate(GraphFamily.Cycle, 4),
        generate(GraphFamily.Cycle, 5),
        generate(GraphFamily.Cycle, 6),
        generate(GraphFamily.K4),
        generate(GraphFamily.K3Merge),
    ]
    g1 += [g for g in connected_gnp(DEF_CORPUS_GNP_GRAPHS, 7, 0.5, seed) if has_long_cycle(g)][:5]
    g2 = [
        generate(GraphFamily.Line, 3),
        generate(GraphFamily.Line, 5),
        generate(GraphFamily.Star, 4),
        Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)], name="paw"),
        Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)], name="bowtie"),
    ]
    g3 = [generate(GraphFamily.Line, n) for n in (4, 8, 12)]
    g3 += [generate(GraphFamily.Star, 3)]
    g3 += list(itertools.islice(trees(8), 3)) + list(itertools.islice(trees(12), 2))
    return (
        [(g, GraphClass.G1) for g in g1]
        + [(g, GraphClass.G2) for g in g2]
        + [(g, GraphClass.G3) for g in g3]
    )


def one_fair_suite(*, seed: int = 0, **_: Any) -> SuiteResult:
    """The 1-fair construction yields a non-nilpotent schedule in every class."""
    failures = []
    corpus = one_fair_corpus(seed)
    for g, expected in corpus:
        try:
            res = construct_1fair_nonnilpotent(g)
        except PavlovError as err:
            failures.append(f"{g.label}: {err}")
            continue
        if res.graph_class != expected:
            failures.append(f"{g.label}: classified {res.graph_class}, expected {expected}.")
        if is_nilpotent(res.matrix):
            failures.append(f"{g.label}: constructed schedule is nilpotent.")
    return SuiteResult(SuiteName.OneFair, len(corpus), failures, {"graphs": len(corpus)})


def line6_suite(**_: Any) -> SuiteResult:
    """Every 1-fair edge scheduler of `L_6` stabilizes."""
    report = exhaustive_1fair_check(generate(GraphFamily.Line, 6))
    failures = []
    if report.permutations != math.factorial(5):
        failures.append(f"Expected 120 permutations, tested {report.permutations}.")
    if not report.all_stabilize:
        failures.append(f"{report.permutations - report.stabilizing} permutations do not stabilize.")
    return SuiteResult(SuiteName.Line6, report.permutations, failures, report.to_json())


def _exhaust_strategy(
    g: Graph,
    strategy_of: Callable[[list[int]], LuckStrategy],
    max_rounds: int,
    seed: int,
    budget: int,
) -> tuple[int, list[str]]:
    games = 0
    failures = []
    for order in node_orders(g.n, seed, budget):
        scheduler = periodic_scheduler(g, DaemonKind.Node, order)
        strategy = strategy_of(order)
        for x0 in all_configurations(g.n):
            scheduler.reset()
            games += 1
            if not play_game(g, scheduler, strategy, x0, max_rounds).won:
                failures.append(f"{g.label} order={order} x0={x0}: not zero within {max_rounds} rounds.")
    return games, failures


def luck_suite(
    *,
    seed: int = 0,
    max_tree_n: int = DEF_LUCK_MAX_TREE_N,
    max_star_leaves: int = DEF_LUCK_MAX_STAR_LEAVES,
    budget: int = DEF_PERMUTATION_BUDGET,
    crosschecks: int = DEF_SOLVER_CROSSCHECKS,
    **_: Any,
) -> SuiteResult:
    """
    Star and tree strategies win against 1-fair node schedulers from every configuration, and the
    game solver agrees on a sample.
    """
    corpus = [generate(GraphFamily.Star, k) for k in range(1, max_star_leaves + 1)]
    corpus += [t for n in range(2, max_tree_n + 1) for t in trees(n)]

    games = 0
    failures = []
    for g in corpus:
        logger.info(f"Playing every order and configuration on {g.label}.")
        played, failed = _exhaust_strategy(
            g, lambda order: tree_luck_strategy(g, order), DEF_MAX_ROUNDS, seed, budget
        )
        games += played
        failures += failed

    rng = make_rng(seed, Stream.Trial)
    for k in range(crosschecks):
        g = corpus[int(rng.integers(len(corpus)))]
        order = family_permutation(PermutationFamily.Random, g.n, rng)
        x0 = random_nonzero_configuration(g.n, rng)
        scheduler = periodic_scheduler(g, DaemonKind.Node, order)
        if not solve_luck_game(g, scheduler, x0, DEF_HORIZON_ROUNDS, b=1).luck_wins:
            failures.append(f"{g.label} order={order} x0={x0}: solver says the scheduler wins.")

    return SuiteResult(
        SuiteName.Luck,
        games + crosschecks,
        failures,
        {"graphs": len(corpus), "games": games, "crosschecks": crosschecks},
    )


def adaptive_suite(**_: Any) -> SuiteResult:
    """The adaptive `K_3` daemon and the 3-fair star schedule defeat every partner choice."""
    failures = []
    k3 = k3_adaptive_block_check()
    failures += k3.failures

    stars = [star_schedule_branch_check(leaves) for leaves in STAR_BRANCH_LEAVES]
    for rep in stars:
        if not rep.ok:
            failures.append(
                f"Star schedule on K_1,{rep.leaves}: finals {[str(x) for x in rep.finals]}, b={rep.b}."
            )

    g = generate(GraphFamily.K3)
    if solve_luck_game(g, K3AdaptiveDaemon(g), Configuration.all_ones(3), DEF_HORIZON_ROUNDS, b=2).luck_wins:
        failures.append("The luck player beats the adaptive K3 daemon.")

    leaves = STAR_BRANCH_LEAVES[0]
    star = generate(GraphFamily.Star, leaves)
    solved = solve_luck_game(
        star, star_3fair_daemon(star), star_3fair_initial(leaves), DEF_HORIZON_ROUNDS, b=3
    )
    if solved.luck_wins:
        failures.append(f"The luck player beats the 3-fair star schedule on K_1,{leaves}.")

    return SuiteResult(
        SuiteName.Adaptive,
        2 + len(stars) + k3.blocks,
        failures,
        {
            "k3_positions": k3.positions,
            "k3_worst_count": k3.b,
            "star_branches": {str(r.leaves): r.branches for r in stars},
        },
    )


def random_graph_suite(
    *,
    seed: int = 0,
    n: int = DEF_RANDOM_GRAPH_N,
    seeds: int = DEF_RANDOM_GRAPH_SEEDS,
    budget: int = DEF_PERMUTATION_BUDGET,
    **_: Any,
) -> SuiteResult:
    """
    Matching strategy clears `L_8` in one round, line strategy clears `L_7` and `L_9` in two, and
    random graphs above the connectivity threshold are won in two rounds against random 2-fair
    node traces.
    """
    failures = []
    games = 0

    l8 = generate(GraphFamily.Line, 8)
    matching = perfect_matching(l8)
    assert matching is not None
    played, failed = _exhaust_strategy(l8, lambda _: matching_luck_strategy(matching), 1, seed, budget)
    games += played
    failures += failed
    for k in (7, 9):
        line = generate(GraphFamily.Line, k)
        played, failed = _exhaust_strategy(line, lambda _: line_luck_strategy(k), 2, seed, budget)
        games += played
        failures += failed

    p = 2 * math.log(n) / n
    found = won = 0
    for s in range(seeds):
        g = sample_gnp(n, p, seed + s)
        strategy = random_graph_luck_strategy(g)
        if strategy is None:
            continue
        found += 1
        x0 = random_nonzero_configuration(n, make_rng(seed, Stream.Initial, s))
        scheduler = RandomPermutationScheduler(g, seed=seed, scheduler_id=s)
        won += play_game(g, scheduler, strategy, x0, 2, b=2).won
    logger.info(f"Random graphs G({n}, {p:.4f}): strategy found on {found}, won {won} of {seeds}.")
    if won < RANDOM_GRAPH_MIN_WIN_RATE * seeds:
        failures.append(f"Only {won} of {seeds} random graphs were won in two rounds.")

    return SuiteResult(
        SuiteName.RandomGraph,
        games + seeds,
        failures,
        {"games": games, "random_graphs": seeds, "found": found, "won": won},
    )


def identities_suite(
    *,
    max_order: int = DEF_IDENTITY_MAX_ORDER,
    max_m: int = DEF_SUITE_MAX_M,
    delta_n: int = DEF_DELTA_MAX_N,
    **_: Any,
) -> SuiteResult:
    """Binomial powers, path counts, matrix unit products, double updates and star leaf sums."""
    failures = []
    checked = 0

    for n in range(1, max_order + 1):
        for k in range(1, max_order + 1):
            checked += 1
            if lower_triangular_power(n, k) != lower_triangular_power_closed_form(n, k):
                failures.append(f"B^{k} of order {n} differs from its binomial form.")

    for g in atlas_graphs(1, max_m):
        eye = IntMatrix.identity(g.n)
        for labeling in itertools.permutations(range(1, g.m + 1)):
            checked += 1
            product = integer_schedule_matrix(g, labeling)
            if product != eye + path_count_matrix(g, labeling):
                failures.append(f"{g.label} labeling={labeling}: product is not I + C.")
            if product.mod2() != schedule_matrix(g, order_of_labeling(g, labeling)):
                failures.append(f"{g.label} labeling={labeling}: mod 2 reduction differs.")

    for n in range(1, delta_n + 1):
        for i, j, k, l in itertools.product(range(n), repeat=4):
            checked += 1
            expected = delta_matrix(i, l, n) if j == k else Gf2Matrix.zero(n)
            if delta_matrix(i, j, n) @ delta_matrix(k, l, n) != expected:
                failures.append(f"delta({i},{j}) delta({k},{l}) wrong for n={n}.")

    for n in range(2, 6):
        for i, j in itertools.combinations(range(n), 2):
            a = update_matrix((i, j), n)
            keep = ((1 << n) - 1) & ~((1 << i) | (1 << j))
            for x in range(1 << n):
                checked += 1
                if a.apply_bits(a.apply_bits(x)) != x & keep:
                    failures.append(f"Playing ({i},{j}) twice on {x:0{n}b} does not clear it.")

    for n in range(1, 7):
        for bits in itertools.product((0, 1), repeat=n):
            sums = leaf_sums(bits, max_order)
            for t in range(1, max_order + 1):
                checked += 1
                if sums[t - 1] != leaf_sum_closed_form(bits, t):
                    failures.append(f"Leaf sum of {bits} at round {t} differs.")
            for k in range(1, n):
                diffs = iterated_differences(sums, k)
                for t in range(1, len(diffs) + 1):
                    checked += 1
                    if diffs[t - 1] != iterated_difference_closed_form(bits, t, k):
                        failures.append(f"Difference {k} of {bits} at round {t} differs.")

    return SuiteResult(SuiteName.Identities, checked, failures, {})


SUITES: dict[SuiteName, Callable[..., SuiteResult]] = {
    SuiteName.Nilpotency: nilpotency_suite,
    SuiteName.TwoFair: two_fair_suite,
    SuiteName.OneFair: one_fair_suite,
    SuiteName.Line6: line6_suite,
    SuiteName.Luck: luck_suite,
    SuiteName.Adaptive: adaptive_suite,
    SuiteName.RandomGraph: random_graph_suite,
    SuiteName.Identities: identities_suite,
}


def run_suite(name: SuiteName | str, **kwargs: Any) -> SuiteResult:
    name = SuiteName(name)
    logger.info(f"Running suite {name}.")
    result = SUITES[name](**kwargs)
    logger.info(f"Suite {name}: {result.checked} checks, {len(result.failures)} failures.")
    return result
