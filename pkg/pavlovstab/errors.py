class PavlovError(Exception):
    """Base class for every error raised by pavlovstab."""


class GraphError(PavlovError, ValueError):
    pass


class GraphFormatError(GraphError):
    """
    Malformed graph text.

    `line` is 1-based and `None` when the problem is not tied to a single line.
    """

    def __init__(self, message: str, *, line: int | None = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class DisconnectedGraphError(GraphError):
    pass


class InvalidEdgeError(GraphError):
    pass


class UnsupportedGraphError(PavlovError):
    pass


class SchedulerError(PavlovError):
    pass


class StrategyError(PavlovError):
    pass


class BudgetExceededError(PavlovError):
    pass


class ConsistencyError(PavlovError, AssertionError):
    """Two independent computations of the same fact disagree."""


class ScheduleFormatError(SchedulerError):
    """Malformed schedule file. `line` is 1-based."""

    def __init__(self, message: str, *, line: int | None = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
