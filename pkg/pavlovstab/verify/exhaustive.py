import itertools
import math
import polars as pl

from typing import Any, NamedTuple

from loguru import logger

from ..dynamics.configuration import Configuration, single_one_configurations
from ..dynamics.periodic import periodic_outcome
from ..errors import BudgetExceededError, ConsistencyError
from ..gf2.matrix import is_nilpotent, schedule_matrix
from ..graph.graph import Edge, Graph
from .constants import MAX_EXHAUSTIVE_M


class PermutationVerdict(NamedTuple):
    order: tuple[Edge, ...]
    nilpotent: bool
    stabilizes: bool
    # Single-one configuration that never reaches zero, if any.
    counterexample: Configuration | None


class ExhaustiveReport(NamedTuple):
    graph: str
    n: int
    m: int
    permutations: int
    stabilizing: int
    verdicts: list[PermutationVerdict]

    @property
    def all_stabilize(self) -> bool:
        return self.stabilizing == self.permutations

    def first_counterexample(self) -> PermutationVerdict | None:
        return next((v for v in self.verdicts if not v.stabilizes), None)

    def to_frame(self) -> pl.DataFrame:
        return pl.DataFrame(
            {
                "order": [" ".join(f"{u}-{v}" for u, v in vd.order) for vd in self.verdicts],
                "nilpotent": [vd.nilpotent for vd in self.verdicts],
                "stabilizes": [vd.stabilizes for vd in self.verdicts],
                "counterexample": [
                    None if vd.counterexample is None else str(vd.counterexample)
                    for vd in self.verdicts
                ],
            },
            schema={
                "order": pl.String,
                "nilpotent": pl.Boolean,
                "stabilizes": pl.Boolean,
                "counterexample": pl.String,
            },
        )

    def to_json(self) -> dict[str, Any]:
        first = self.first_counterexample()
        return {
            "graph": self.graph,
            "n": self.n,
            "m": self.m,
            "permutations": self.permutations,
            "stabilizing": self.stabilizing,
            "all_stabilize": self.all_stabilize,
            "counterexample": None
            if first is None
            else {
                "order": [list(e) for e in first.order],
                "x0": str(first.counterexample),
            },
        }


def exhaustive_1fair_check(g: Graph, *, max_m: int = MAX_EXHAUSTIVE_M) -> ExhaustiveReport:
    """
    Check every 1-fair edge scheduler of `g` two ways.

    * nilpotency of the schedule matrix.
    * simulation of the periodic schedule from each single-one configuration, which suffices since
      the dynamics is linear.

    ### Args
    `g`
        Graph with at most `max_m` edges.
    `max_m`
        Edge budget; `m!` permutations are tested.

    ### Returns
    `ExhaustiveReport`

    ### Raises
    `ConsistencyError` if the two verdicts disagree on any permutation.
    """
    if g.m > max_m:
        raise BudgetExceededError(f"{g.label} has {g.m} edges, exhaustive check allows {max_m}.")

    total = math.factorial(g.m)
    logger.info(f"Checking {total} edge permutations of {g.label} ({g.m} edges).")
    verdicts = []
    stabilizing = 0
    for order in itertools.permutations(g.edges):
        nilpotent = is_nilpotent(schedule_matrix(g, order))
        counterexample = None
        if order:
            for x0 in single_one_configurations(g.n):
                if not periodic_outcome(g, x0, order).stabilizes:
                    counterexample = x0
                    break
        elif g.n > 0:
            counterexample = Configuration.single_one(g.n, 0)
        stabilizes = counterexample is None
        if nilpotent != stabilizes:
            raise ConsistencyError(
                f"Permutation {order} of {g.label}: nilpotent={nilpotent} but stabilizes={stabilizes}."
            )
        stabilizing += stabilizes
        verdicts.append(PermutationVerdict(tuple(order), nilpotent, stabilizes, counterexample))

    logger.info(f"{g.label}: {stabilizing} of {total} permutations stabilize.")
    return ExhaustiveReport(g.label, g.n, g.m, total, stabilizing, verdicts)
