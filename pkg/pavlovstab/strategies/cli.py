import argparse

from typing import TYPE_CHECKING, Any, Iterable

from ..config import add_common_args, add_graph_source_args, load_graph, run_config, write_report
from ..dynamics.configuration import Configuration, all_configurations
from ..dynamics.constants import MAX_EXHAUSTIVE_N
from ..errors import BudgetExceededError
from ..graph.graph import Graph
from ..rng import Stream, make_rng
from ..schedulers.constants import DaemonKind
from ..schedulers.scheduler import Scheduler, SequenceScheduler
from ..schedulers.spec import build_scheduler
from ..verify.estimate import random_nonzero_configuration
from .constants import DEF_HORIZON_ROUNDS, DEF_MAX_ROUNDS, StrategyName
from .game import play_game, solve_luck_game
from .strategy import build_strategy

if TYPE_CHECKING:
    SubArgumentParser = argparse._SubParsersAction[argparse.ArgumentParser]
else:
    SubArgumentParser = Any

DEF_SCHEDULER = "periodic-node:id"
ALL_TRIALS = "all"


def add_game_cli(parser: SubArgumentParser) -> None:
    ap = parser.add_parser(
        "game",
        description="Play or solve the scheduler-luck game: the scheduler picks nodes, luck picks partners.",
    )
    add_graph_source_args(ap)
    ap.add_argument(
        "-s",
        "--scheduler",
        help="Node scheduler spec, ex. periodic-node:id, random-perm-node, k3-adaptive, star-3fair.",
        type=str,
        default=DEF_SCHEDULER,
    )
    ap.add_argument(
        "--strategy",
        help="Luck strategy to play.",
        choices=[str(s) for s in StrategyName],
        default=None,
    )
    ap.add_argument(
        "--x0",
        help="Initial configuration, vertex 0 first. All ones if omitted.",
        type=str,
        default=None,
    )
    ap.add_argument(
        "--trials",
        help=f"'{ALL_TRIALS}' to play from every configuration, or a number of random nonzero ones.",
        type=str,
        default=None,
    )
    ap.add_argument(
        "--max-rounds",
        help="Round budget per game.",
        type=int,
        default=DEF_MAX_ROUNDS,
    )
    ap.add_argument(
        "--b",
        help="Fairness bound of the round clock. Defaults to the scheduler's declared bound.",
        type=int,
        default=None,
    )
    ap.add_argument(
        "--solve",
        help="Decide whether luck can force all zeros against every scheduler choice.",
        action="store_true",
    )
    ap.add_argument(
        "--horizon",
        help="Horizon of --solve in rounds.",
        type=int,
        default=DEF_HORIZON_ROUNDS,
    )
    ap.add_argument(
        "--witness",
        help="Include the winning strategy found by --solve.",
        action="store_true",
    )
    add_common_args(ap)
    return None


def _scheduler_order(scheduler: Scheduler, n: int) -> list[int] | None:
    if not isinstance(scheduler, SequenceScheduler) or scheduler.kind != DaemonKind.Node:
        return None
    order = [d.node for d in scheduler.cycle]
    return order if sorted(order) == list(range(n)) else None  # type: ignore[type-var]


def _starts(g: Graph, args: argparse.Namespace, seed: int) -> Iterable[Configuration]:
    if args.trials is None:
        return [Configuration.parse(args.x0, g.n) if args.x0 is not None else Configuration.all_ones(g.n)]
    if args.trials == ALL_TRIALS:
        if g.n > MAX_EXHAUSTIVE_N:
            raise BudgetExceededError(f"Playing from every configuration needs n <= {MAX_EXHAUSTIVE_N}.")
        return all_configurations(g.n)
    trials = int(args.trials)
    if trials < 1:
        raise ValueError(f"Need at least one trial, got {trials}.")
    return (random_nonzero_configuration(g.n, make_rng(seed, Stream.Initial, i)) for i in range(trials))


def cmd_game(args: argparse.Namespace) -> int:
    """
    Play a luck strategy from one or many configurations, or solve the game exactly.

    ### Returns
    0 if luck won every game, 2 if it lost one.
    """
    g = load_graph(args.family, args.n, args.file)
    config = run_config(
        args,
        scheduler=args.scheduler,
        strategy=args.strategy,
        x0=args.x0,
        trials=args.trials,
        max_rounds=args.max_rounds,
        b=args.b,
        solve=args.solve,
        horizon=args.horizon,
    )
    scheduler = build_scheduler(g, args.scheduler, seed=config.seed)

    if args.solve:
        x0 = Configuration.parse(args.x0, g.n) if args.x0 is not None else Configuration.all_ones(g.n)
        sol = solve_luck_game(g, scheduler, x0, args.horizon, b=args.b, witness=args.witness)
        report: dict[str, Any] = {
            "graph": g.label,
            "x0": str(x0),
            "luck_wins": sol.luck_wins,
            "positions": sol.states,
        }
        if sol.witness is not None:
            report["witness"] = sol.witness
        write_report(args.output, config, report)
        return 0 if sol.luck_wins else 2

    if args.strategy is None:
        raise ValueError("Give --strategy to play, or --solve.")
    strategy = build_strategy(g, args.strategy, _scheduler_order(scheduler, g.n))

    games = won = worst_rounds = 0
    first_loss = None
    for x0 in _starts(g, args, config.seed):
        scheduler.reset()
        res = play_game(g, scheduler, strategy, x0, args.max_rounds, b=args.b)
        games += 1
        if res.won:
            won += 1
            worst_rounds = max(worst_rounds, res.rounds_used)
        elif first_loss is None:
            first_loss = str(x0)

    write_report(
        args.output,
        config,
        {
            "graph": g.label,
            "strategy": args.strategy,
            "games": games,
            "won": won,
            "max_rounds_used": worst_rounds,
            "first_loss": first_loss,
        },
    )
    return 0 if won == games else 2
