"""Littlewood-Richardson coefficients via hive polytopes.

Exact counting at small rank (integer depth-first search over hive
interiors) and randomized estimation at larger rank: round the relaxed
hive body, estimate its volume by multiphase Monte Carlo, sample it with
a Dikin walk, and count the proportion of samples whose nearest lattice
point is a hive.
"""

from .estimator import EstimateReport, applicability, estimate_lrc, round_to_lattice, sample_count
from .geometry import HPolytope, chebyshev_center, facet_center, hive_body, positivity
from .hive import boundary_values, build_rhombus_system, exact_count, hive_check, quadratic_hive
from .partitions import (
    Partition,
    PartitionTriple,
    make_shift,
    parse_partition,
    shift_triple,
    triple,
)
from .sampling import WalkParams, sample_uniform
from .volume import estimate_volume, exact_volume_oracle

__all__ = [
    "EstimateReport",
    "HPolytope",
    "Partition",
    "PartitionTriple",
    "WalkParams",
    "applicability",
    "boundary_values",
    "build_rhombus_system",
    "chebyshev_center",
    "estimate_lrc",
    "estimate_volume",
    "exact_count",
    "exact_volume_oracle",
    "facet_center",
    "hive_body",
    "hive_check",
    "make_shift",
    "parse_partition",
    "positivity",
    "quadratic_hive",
    "round_to_lattice",
    "sample_count",
    "sample_uniform",
    "shift_triple",
    "triple",
]

__version__ = "0.1.0"
