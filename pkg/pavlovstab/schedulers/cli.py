import argparse

from enum import StrEnum
from typing import TYPE_CHECKING, Any

from ..config import OutputFormat, add_common_args, add_graph_source_args, load_graph, run_config, write_report
from ..dynamics.constants import MAX_TABLE_N
from ..dynamics.periodic import stabilizes_from_all
from .constructions import (
    construct_1fair_nonnilpotent,
    construct_2fair_enumeration,
    stabilizing_edge_daemon,
    star_3fair_daemon,
    star_3fair_initial,
)
from .constants import FAIRNESS_PERIODS
from .fairness import edge_fairness, fairness_monitor
from .io import write_schedule
from .scheduler import SchedulerDecision

if TYPE_CHECKING:
    SubArgumentParser = argparse._SubParsersAction[argparse.ArgumentParser]
else:
    SubArgumentParser = Any


class Construction(StrEnum):
    TwoFair = "two-fair"
    OneFair = "one-fair"
    Stabilizing = "stabilizing"
    Star3Fair = "star-3fair"


def add_construct_cli(parser: SubArgumentParser) -> None:
    ap = parser.add_parser(
        "construct",
        description="Construct an adversarial or stabilizing schedule. Text output is a schedule file.",
    )
    add_graph_source_args(ap)
    ap.add_argument(
        "-k",
        "--kind",
        help="Construction.",
        choices=[str(c) for c in Construction],
        required=True,
    )
    add_common_args(ap)
    return None


def cmd_construct(args: argparse.Namespace) -> int:
    """
    Build a schedule and report its period with its fairness bound.

    ### Returns
    0 if successful.
    """
    g = load_graph(args.family, args.n, args.file)
    config = run_config(args, kind=args.kind)
    report: dict[str, Any] = {"graph": g.label, "kind": args.kind}

    match Construction(args.kind):
        case Construction.TwoFair:
            period = [SchedulerDecision.of_edge(*e) for e in construct_2fair_enumeration(g)]
            if g.n <= MAX_TABLE_N:
                report["stabilizes_from_all"] = stabilizes_from_all(g, [d.edge for d in period])
        case Construction.OneFair:
            res = construct_1fair_nonnilpotent(g)
            period = [SchedulerDecision.of_edge(*e) for e in res.order]
            report["class"] = str(res.graph_class)
            report["witness"] = str(res.witness)
        case Construction.Stabilizing:
            scheduler = stabilizing_edge_daemon(g)
            # Replaying prefix and tail periodically still plays every edge twice.
            period = list(scheduler.decisions)
        case Construction.Star3Fair:
            period = list(star_3fair_daemon(g).cycle)
            report["x0"] = str(star_3fair_initial(g.n - 1))
        case _:
            raise ValueError(f"Unknown construction: {args.kind}")

    if period[0].edge is not None:
        report["b"] = edge_fairness(g, [d.edge for d in period], FAIRNESS_PERIODS).b  # type: ignore[misc]
    else:
        report["b"] = fairness_monitor([d.node for d in period] * FAIRNESS_PERIODS, g.n).b  # type: ignore[misc]
    report["period"] = [list(d.edge) if d.edge is not None else d.node for d in period]

    if config.output_format == OutputFormat.Text:
        # Header and report as comments so the output replays with `file:`.
        write_report(args.output, config, {}, lines=[f"# {k}\t{v}" for k, v in report.items() if k != "period"])
        write_schedule(period, args.output)
    else:
        write_report(args.output, config, report)
    return 0
