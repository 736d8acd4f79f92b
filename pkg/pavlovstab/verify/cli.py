import argparse

from typing import TYPE_CHECKING, Any

from loguru import logger

from ..config import OutputFormat, add_common_args, run_config, write_report
from ..schedulers.constants import LIST_SEP, DaemonKind, PermutationFamily
from .constants import (
    DEF_EXPERIMENT_SIZES,
    DEF_RANDOM_PERMUTATIONS,
    DEF_SAMPLES,
    SuiteName,
)
from .experiment import compare_reference, convergence_experiment
from .suites import run_suite

if TYPE_CHECKING:
    SubArgumentParser = argparse._SubParsersAction[argparse.ArgumentParser]
else:
    SubArgumentParser = Any

ALL_SUITES = "all"


def _int_list(arg: str) -> list[int]:
    return [int(a) for a in arg.split(LIST_SEP)]


def add_experiment_cli(parser: SubArgumentParser) -> None:
    ap = parser.add_parser(
        "experiment",
        description="Mean rounds to all zeros on the cycle C_n under 1-fair scheduling.",
    )
    ap.add_argument(
        "--families",
        help=f"Comma separated permutation families from {[str(f) for f in PermutationFamily]}.",
        type=str,
        default=",".join(str(f) for f in PermutationFamily),
    )
    ap.add_argument(
        "--n",
        help="Comma separated cycle lengths.",
        type=str,
        default=",".join(str(n) for n in DEF_EXPERIMENT_SIZES),
    )
    ap.add_argument(
        "--samples",
        help="Samples per permutation.",
        type=int,
        default=DEF_SAMPLES,
    )
    ap.add_argument(
        "--daemon",
        help="Node daemon with random partner, or edge daemon.",
        choices=[str(k) for k in DaemonKind],
        default=str(DaemonKind.Node),
    )
    ap.add_argument(
        "--random-permutations",
        help="Permutations drawn for the random family; the largest mean is reported.",
        type=int,
        default=DEF_RANDOM_PERMUTATIONS,
    )
    ap.add_argument(
        "--compare-reference",
        "--compare-paper",
        help="Add reference mean rounds and the relative deviation from them.",
        action="store_true",
    )
    add_common_args(ap, default_format=OutputFormat.Csv)
    return None


def cmd_experiment(args: argparse.Namespace) -> int:
    """
    Run the convergence experiment grid.

    ### Returns
    0 if successful.
    """
    families = args.families.split(LIST_SEP)
    n_list = _int_list(args.n)
    config = run_config(
        args,
        families=families,
        n=n_list,
        samples=args.samples,
        daemon=args.daemon,
        random_permutations=args.random_permutations,
        compare_reference=args.compare_reference,
    )
    df = convergence_experiment(
        n_list,
        families,
        args.samples,
        config.seed,
        daemon=args.daemon,
        random_permutations=args.random_permutations,
        threads=args.threads,
    )
    if args.compare_reference:
        df = compare_reference(df)
    write_report(args.output, config, {"rows": df.height}, table=df)
    return 0


def add_verify_cli(parser: SubArgumentParser) -> None:
    ap = parser.add_parser(
        "verify",
        description="Run verification suites.",
    )
    ap.add_argument(
        "--suite",
        help="Suite to run. Repeatable.",
        choices=[ALL_SUITES, *(str(s) for s in SuiteName)],
        action="append",
        default=None,
    )
    add_common_args(ap)
    return None


def cmd_verify(args: argparse.Namespace) -> int:
    """
    Run the requested suites.

    ### Returns
    0 if every suite passed, 1 otherwise.
    """
    names = args.suite or [ALL_SUITES]
    suites = list(SuiteName) if ALL_SUITES in names else [SuiteName(s) for s in dict.fromkeys(names)]
    config = run_config(args, suites=[str(s) for s in suites])

    results = [run_suite(s, seed=config.seed) for s in suites]
    for res in results:
        for failure in res.failures:
            logger.error(f"{res.name}: {failure}")

    write_report(
        args.output,
        config,
        {
            "ok": all(r.ok for r in results),
            "suites": [r.to_json() for r in results],
        },
        lines=[f"{r.name}\t{'ok' if r.ok else 'FAILED'}\t{r.checked}" for r in results],
    )
    return 0 if all(r.ok for r in results) else 1
