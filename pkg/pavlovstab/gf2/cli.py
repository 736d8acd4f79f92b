import argparse

from typing import TYPE_CHECKING, Any

from ..config import add_common_args, add_graph_source_args, load_graph, run_config, write_report
from ..errors import SchedulerError
from ..graph.graph import Edge, Graph
from ..graph.structures import classify_precluding_class
from ..schedulers.constants import LIST_SEP
from ..schedulers.constructions import construct_1fair_nonnilpotent
from ..verify.exhaustive import exhaustive_1fair_check
from .integer import integer_schedule_matrix, labeling_of_order, principal_minor_parity
from .matrix import is_nilpotent, schedule_matrix

if TYPE_CHECKING:
    SubArgumentParser = argparse._SubParsersAction[argparse.ArgumentParser]
else:
    SubArgumentParser = Any

DEF_MINORS = "1,2"


def add_analyze_cli(parser: SubArgumentParser) -> None:
    ap = parser.add_parser(
        "analyze",
        description="Classify a graph and analyze the schedule matrix of a 1-fair edge scheduler.",
    )
    add_graph_source_args(ap)
    ap.add_argument(
        "--order",
        help="Comma separated edge indices giving the edge permutation. Graph edge order if omitted.",
        type=str,
        default=None,
    )
    ap.add_argument(
        "--minors",
        help="Orders p of the principal minor sums whose parity is reported.",
        type=str,
        default=DEF_MINORS,
    )
    ap.add_argument(
        "--construct",
        help="Construct a 1-fair edge permutation that never stabilizes from some configuration.",
        action="store_true",
    )
    ap.add_argument(
        "--exhaustive",
        help="Check every edge permutation by nilpotency and by simulation.",
        action="store_true",
    )
    add_common_args(ap)
    return None


def _edge_order(g: Graph, arg: str | None) -> list[Edge]:
    if arg is None:
        return list(g.edges)
    try:
        idx = [int(i) for i in arg.split(LIST_SEP)]
    except ValueError:
        raise SchedulerError(f"Expected comma separated edge indices, got {arg!r}.") from None
    if sorted(idx) != list(range(g.m)):
        raise SchedulerError(f"Edge order must be a permutation of 0..{g.m - 1}, got {arg!r}.")
    return [g.edges[i] for i in idx]


def cmd_analyze(args: argparse.Namespace) -> int:
    """
    Report the class, the schedule matrix and its nilpotency, and minor sum parities of the
    integer schedule matrix. Optionally construct a precluding permutation or run the exhaustive
    check.

    ### Returns
    0 if successful.
    """
    g = load_graph(args.family, args.n, args.file)
    config = run_config(
        args, order=args.order, minors=args.minors, construct=args.construct, exhaustive=args.exhaustive
    )
    order = _edge_order(g, args.order)
    matrix = schedule_matrix(g, order)

    report: dict[str, Any] = {
        "graph": g.label,
        "n": g.n,
        "m": g.m,
        "class": str(classify_precluding_class(g)) if g.m >= 2 and g.is_connected() else None,
        "order": [list(e) for e in order],
        "nilpotent": is_nilpotent(matrix),
        "trace": matrix.trace(),
    }
    if g.m:
        integer = integer_schedule_matrix(g, labeling_of_order(g, order))
        minors = [int(p) for p in args.minors.split(LIST_SEP)] if args.minors else []
        report["minor_parity"] = {str(p): principal_minor_parity(integer, p) for p in minors}
    report["matrix"] = matrix.to_lists()

    if args.construct:
        res = construct_1fair_nonnilpotent(g)
        report["constructed"] = {
            "class": str(res.graph_class),
            "order": [list(e) for e in res.order],
            "nilpotent": is_nilpotent(res.matrix),
            "witness": str(res.witness),
        }

    if args.exhaustive:
        report["exhaustive"] = exhaustive_1fair_check(g).to_json()

    write_report(args.output, config, report)
    return 0
