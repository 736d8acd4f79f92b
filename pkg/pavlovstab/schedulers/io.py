from typing import Iterable, TextIO

from ..errors import ScheduleFormatError
from ..graph.graph import Graph
from .constants import COMMENT_PREFIX, EDGE_TAG, NODE_TAG
from .scheduler import SchedulerDecision


def parse_schedule(lines: Iterable[str], g: Graph | None = None) -> list[SchedulerDecision]:
    """
    Parse one decision per line, `E u v` or `N u`. Lines starting with `#` are skipped.

    ### Args
    `lines`
        Lines of text.
    `g`
        If given, edges and nodes are checked against it.

    ### Returns
    Decisions in file order.
    """
    decisions = []
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith(COMMENT_PREFIX):
            continue
        tag, *fields = line.split()
        try:
            values = [int(f) for f in fields]
        except ValueError:
            raise ScheduleFormatError(f"Expected integers, got {line!r}.", line=lineno) from None

        if tag == EDGE_TAG and len(values) == 2:
            u, v = values
            if g is not None and not g.has_edge(u, v):
                raise ScheduleFormatError(f"({u}, {v}) is not an edge of {g.label}.", line=lineno)
            decisions.append(SchedulerDecision.of_edge(u, v))
        elif tag == NODE_TAG and len(values) == 1:
            (u,) = values
            if g is not None and not 0 <= u < g.n:
                raise ScheduleFormatError(f"{u} is not a vertex of {g.label}.", line=lineno)
            decisions.append(SchedulerDecision.of_node(u))
        else:
            raise ScheduleFormatError(f"Expected '{EDGE_TAG} u v' or '{NODE_TAG} u'.", line=lineno)

    if decisions and len({d.kind for d in decisions}) > 1:
        raise ScheduleFormatError("Schedule mixes edge and node decisions.")
    return decisions


def read_schedule(path: str, g: Graph | None = None) -> list[SchedulerDecision]:
    with open(path, "rt") as fh:
        return parse_schedule(fh, g)


def write_schedule(decisions: Iterable[SchedulerDecision], fh: TextIO) -> None:
    for d in decisions:
        if d.edge is not None:
            fh.write(f"{EDGE_TAG} {d.edge[0]} {d.edge[1]}\n")
        else:
            fh.write(f"{NODE_TAG} {d.node}\n")
