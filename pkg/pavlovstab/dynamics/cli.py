import argparse

from typing import TYPE_CHECKING, Any

from loguru import logger

from ..config import add_common_args, add_graph_source_args, load_graph, run_config, write_report
from ..rng import Stream, make_rng
from ..schedulers.driver import run_scheduler
from ..schedulers.io import write_schedule
from ..schedulers.scheduler import SchedulerDecision
from ..schedulers.spec import build_scheduler
from ..verify.constants import DEF_MAX_ROUNDS
from ..verify.estimate import estimate_stabilization, fairness_profile, random_nonzero_configuration
from .configuration import Configuration
from .update import default_max_steps

if TYPE_CHECKING:
    SubArgumentParser = argparse._SubParsersAction[argparse.ArgumentParser]
else:
    SubArgumentParser = Any

DEF_SCHEDULER = "random-edge"


def add_simulate_cli(parser: SubArgumentParser) -> None:
    ap = parser.add_parser(
        "simulate",
        description="Run Pavlov dynamics on a graph under a scheduler.",
    )
    add_graph_source_args(ap)
    ap.add_argument(
        "-s",
        "--scheduler",
        help="Scheduler spec, ex. random-edge, periodic-node:id, constant-edge:0, file:sched.txt",
        type=str,
        default=DEF_SCHEDULER,
    )
    ap.add_argument(
        "--x0",
        help="Initial configuration, vertex 0 first, ex. 0b001. Random nonzero if omitted.",
        type=str,
        default=None,
    )
    ap.add_argument(
        "--max-steps",
        help="Step budget of a single run. Defaults to a budget growing as n log n.",
        type=int,
        default=None,
    )
    ap.add_argument(
        "--trials",
        help="Estimate the stabilization probability over this many independent trials.",
        type=int,
        default=None,
    )
    ap.add_argument(
        "--max-rounds",
        help="Round budget per trial.",
        type=int,
        default=DEF_MAX_ROUNDS,
    )
    ap.add_argument(
        "--record",
        help="Include the trajectory of a single run.",
        action="store_true",
    )
    ap.add_argument(
        "--dump-schedule",
        help="Write the decisions of a single run as a schedule file.",
        type=argparse.FileType("wt"),
        default=None,
    )
    ap.add_argument(
        "--fairness-steps",
        help="Instead of simulating, observe the scheduler for this many steps and report its fairness.",
        type=int,
        default=None,
    )
    add_common_args(ap)
    return None


def cmd_simulate(args: argparse.Namespace) -> int:
    """
    Simulate one run, estimate the stabilization probability, or profile a scheduler's fairness.

    ### Returns
    0 if every run reached all zeros, 2 otherwise.
    """
    g = load_graph(args.family, args.n, args.file)
    config = run_config(
        args,
        scheduler=args.scheduler,
        x0=args.x0,
        max_steps=args.max_steps,
        trials=args.trials,
        max_rounds=args.max_rounds,
        fairness_steps=args.fairness_steps,
    )
    x0 = Configuration.parse(args.x0, g.n) if args.x0 is not None else None

    if args.fairness_steps is not None:
        scheduler = build_scheduler(g, args.scheduler, seed=config.seed)
        profile = fairness_profile(scheduler, g, args.fairness_steps, x0=x0)
        report = {
            "graph": g.label,
            "b": profile.report.b,
            "never_rescheduled": list(profile.report.never_rescheduled),
            "steps": profile.report.steps,
        }
        write_report(args.output, config, report, table=profile.table)
        return 0

    if args.trials is not None:
        est = estimate_stabilization(
            g,
            lambda seed: build_scheduler(g, args.scheduler, seed=seed),
            x0,
            args.trials,
            args.max_rounds,
            config.seed,
            threads=args.threads,
        )
        write_report(args.output, config, {"graph": g.label, **est.to_json()})
        return 0 if est.successes == est.trials else 2

    if x0 is None:
        x0 = random_nonzero_configuration(g.n, make_rng(config.seed, Stream.Initial))
    max_steps = args.max_steps if args.max_steps is not None else default_max_steps(g.n)
    scheduler = build_scheduler(g, args.scheduler, seed=config.seed)
    res = run_scheduler(
        g,
        scheduler,
        x0,
        max_steps,
        record_trace=args.dump_schedule is not None,
        record_trajectory=args.record,
    )
    if not res.reached_zero:
        logger.warning(f"{g.label} did not reach zero within {max_steps} steps.")

    if args.dump_schedule is not None:
        assert res.trace is not None
        write_schedule(
            (
                SchedulerDecision.of_edge(*item) if isinstance(item, tuple) else SchedulerDecision.of_node(item)
                for item in res.trace
            ),
            args.dump_schedule,
        )

    report = {
        "graph": g.label,
        "x0": str(x0),
        "final": str(res.final),
        "steps": res.steps,
        "reached_zero": res.reached_zero,
    }
    if res.trajectory is not None:
        report["trajectory"] = [
            {"t": r.t, "edge": list(r.edge), "configuration": str(r.configuration)} for r in res.trajectory
        ]
    write_report(args.output, config, report)
    return 0 if res.reached_zero else 2
