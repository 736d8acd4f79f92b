from enum import StrEnum


class DaemonKind(StrEnum):
    """
    * edge: the scheduler picks an edge.
    * node: the scheduler picks a node, its partner is picked separately.
    """

    Edge = "edge"
    Node = "node"


class PermutationFamily(StrEnum):
    Identity = "id"
    Times3 = "p3"
    Pattern13 = "pattern13"
    Random = "random"


class SchedulerName(StrEnum):
    RandomEdge = "random-edge"
    PeriodicEdge = "periodic-edge"
    PeriodicNode = "periodic-node"
    ConstantEdge = "constant-edge"
    ConstantNode = "constant-node"
    StabilizingEdge = "stabilizing-edge"
    K3Adaptive = "k3-adaptive"
    Star3Fair = "star-3fair"
    RandomPermutationNode = "random-perm-node"
    File = "file"


SCHEDULER_ARG_SEP = ":"
LIST_SEP = ","

# Schedule file tags.
EDGE_TAG = "E"
NODE_TAG = "N"
COMMENT_PREFIX = "#"

MIN_STAR_3FAIR_LEAVES = 4

# Periods replayed when measuring the fairness of a periodic schedule.
FAIRNESS_PERIODS = 3
