from enum import StrEnum


class GraphFamily(StrEnum):
    Line = "line"
    Cycle = "cycle"
    Star = "star"
    Complete = "complete"
    K3 = "k3"
    K4 = "k4"
    K3Merge = "k3-merge"


# Minimum `n` per family. Fixed-size families ignore `n`.
FAMILY_MIN_N = {
    GraphFamily.Line: 1,
    GraphFamily.Cycle: 3,
    GraphFamily.Star: 1,
    GraphFamily.Complete: 1,
}
FIXED_FAMILIES = {GraphFamily.K3, GraphFamily.K4, GraphFamily.K3Merge}

# Candidate 7-paths examined by the fallback search for an L7 + matching partition.
L7_PATH_BUDGET = 20_000
# Perfect matchings attempted by that search, each one a full blossom run.
L7_MATCHING_BUDGET = 200
L7_LENGTH = 7

# Exhaustive matching oracle is only run on small graphs.
MAX_BRUTE_FORCE_MATCHING_N = 12

COMMENT_PREFIX = "#"
