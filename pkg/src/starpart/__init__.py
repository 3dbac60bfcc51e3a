"""Star partitions of graphs: exact solvers for tractable classes, an
exhaustive oracle, hardness generators and a command line."""

from .graph import Block, Graph, StarPartition, VerifyReport, feasibility_precheck, verify_partition
from .oracle import BudgetExceeded, oracle_partition

__all__ = [
    "Block",
    "BudgetExceeded",
    "Graph",
    "StarPartition",
    "VerifyReport",
    "feasibility_precheck",
    "oracle_partition",
    "verify_partition",
]

__version__ = "0.1.0"
