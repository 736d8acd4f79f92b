from enum import StrEnum

# Factorial budget of the exhaustive permutation check.
MAX_EXHAUSTIVE_M = 8

DEF_TRIALS = 1000
DEF_SAMPLES = 1000
DEF_MAX_ROUNDS = 1000
DEF_RANDOM_PERMUTATIONS = 10
# Passes after which an experiment sample is given up on.
DEF_MAX_PASSES = 100_000
DEF_EXPERIMENT_SIZES = (4, 8, 16, 32, 64, 128, 256, 512, 1024)
DEF_QUANTILES = (0.5, 0.9, 0.95, 0.99, 1.0)

EXPERIMENT_COLS = ["family", "n", "samples", "mean_rounds", "stderr", "seed"]

# Mean rounds to all zeros on C_n under 1-fair scheduling, by family and n.
REFERENCE_ROUNDS: dict[str, dict[int, float]] = {
    "id": {
        4: 2.486, 8: 4.225, 16: 6.401, 32: 8.33, 64: 10.498,
        128: 13.135, 256: 16.091, 512: 17.954, 1024: 20.331,
    },
    "p3": {
        4: 2.469, 8: 4.039, 16: 5.807, 32: 7.662, 64: 9.639,
        128: 11.718, 256: 14.323, 512: 16.054, 1024: 19.826,
    },
    "random": {
        4: 2.289, 8: 4.499, 16: 6.527, 32: 8.781, 64: 11.161,
        128: 14.151, 256: 17.342, 512: 20.518, 1024: 22.336,
    },
    "pattern13": {
        4: 2.168, 8: 4.656, 16: 7.069, 32: 9.837, 64: 12.653,
        128: 14.859, 256: 18.504, 512: 20.346, 1024: 20.392,
    },
}


class SuiteName(StrEnum):
    Nilpotency = "nilpotency"
    TwoFair = "two-fair"
    OneFair = "one-fair"
    Line6 = "line6"
    Luck = "luck"
    Adaptive = "adaptive"
    RandomGraph = "random-graph"
    Identities = "identities"


# Node permutations tried per instance before falling back to a seeded sample.
DEF_PERMUTATION_BUDGET = 720
DEF_SOLVER_CROSSCHECKS = 100
DEF_SUITE_MAX_M = 5
DEF_LUCK_MAX_TREE_N = 7
DEF_LUCK_MAX_STAR_LEAVES = 4
DEF_IDENTITY_MAX_ORDER = 12
DEF_DELTA_MAX_N = 4
DEF_CORPUS_GNP_N = 8
DEF_CORPUS_GNP_P = 0.4
DEF_CORPUS_GNP_GRAPHS = 20
DEF_RANDOM_GRAPH_N = 101
DEF_RANDOM_GRAPH_SEEDS = 100
RANDOM_GRAPH_MIN_WIN_RATE = 0.9
STAR_BRANCH_LEAVES = (5, 8)
