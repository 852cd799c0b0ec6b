"""Greedy binary-search-tree laboratory.

Two views of one algorithm: a tree algorithm that restructures each search
path to serve the future, and its online geometric form that emits, per
search, the minimal point set keeping the picture arborally satisfied.  The
package instruments the amortized analysis of the geometric form exactly
(rational weights, integer ranks and potentials) and ships brute-force
oracles plus a CLI workbench for generating, running, and verifying
workloads.
"""

from ._kernels import COMPILED_AVAILABLE, ENGINE
from .model import (
    AccessSequence,
    CostLedger,
    Point,
    PointSet,
    WeightAssignment,
    geometric_view_of_sequence,
    total_cost,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ENGINE",
    "COMPILED_AVAILABLE",
    "AccessSequence",
    "CostLedger",
    "Point",
    "PointSet",
    "WeightAssignment",
    "geometric_view_of_sequence",
    "total_cost",
]
