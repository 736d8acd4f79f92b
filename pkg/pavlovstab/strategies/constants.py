from enum import StrEnum


class StrategyName(StrEnum):
    Star = "star"
    Tree = "tree"
    Matching = "matching"
    Line = "line"
    RandomGraph = "random-graph"
    FirstNeighbor = "first-neighbor"


# Exact game solving enumerates configurations, keep it small.
MAX_SOLVER_N = 8
DEF_SOLVER_STATE_BUDGET = 2_000_000
DEF_HORIZON_ROUNDS = 16
DEF_MAX_ROUNDS = 64

LINE_MIN_N = 7
LINE_PHASE_ONE_PAIRS = ((0, 1), (2, 3))
