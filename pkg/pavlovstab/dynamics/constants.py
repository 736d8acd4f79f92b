# Exhaustive modes enumerate or tabulate all 2^n configurations.
MAX_EXHAUSTIVE_N = 24
# Vectorized period-map tables are held in memory.
MAX_TABLE_N = 22

# Step budget factor for stochastic runs: DEF_MAX_STEPS_FACTOR * n * ln(n + 1).
DEF_MAX_STEPS_FACTOR = 10_000

ZERO_CHAR = "0"
ONE_CHAR = "1"
BIN_PREFIX = "0b"
