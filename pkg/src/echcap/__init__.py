"""Exact capacities of four-dimensional model domains.

Capacity sequences of ellipsoids, balls, polydisks, toric norm-domains, and
disjoint unions; the symplectic embedding obstructions they induce; ball
packing inequalities; and desk-scale checks of the volume asymptotics.
All arithmetic on rational inputs is exact.
"""

from .asymptotics import (QwVerdict, TracePoint, VolumeReport, qw_check,
                          volume, volume_ratio_trace, weinstein_bound)
from .capacities import (INTERIOR_STRICT, WEAK, Dominance, ball_capacities,
                         capacities, disjoint_union_capacities, dominates,
                         ellipsoid_capacities, ellipsoid_full_capacities,
                         maxplus_convolve, nk_sequence, nk_via_triangle,
                         polydisk_capacities)
from .domains import (Ball, DisjointUnion, Domain, Ellipsoid, Polydisk,
                      ToricNorm, describe, scale)
from .errors import (ApproxTie, EchcapError, MismatchedIndexOrigin,
                     NotPrimitive, SpecParseError,
                     ToricEnumerationBudgetExceeded)
from .lattice import (EUCLIDEAN, Euclidean, LabeledGenerator, LatticePolygon,
                      Norm, Polygonal, ToricCapacity, WeightedL1, area,
                      dual_norm_eval, enumerate_polygons, generator_action,
                      generator_grading, lattice_point_count,
                      min_action_at_grading, perimeter, reeb_orbit_data,
                      toric_capacity)
from .values import CapacitySequence, CapacityValue, as_fraction

__version__ = "0.1.0"

__all__ = [
    "ApproxTie", "Ball", "CapacitySequence", "CapacityValue", "DisjointUnion",
    "Dominance", "Domain", "EchcapError", "Ellipsoid", "Euclidean",
    "EUCLIDEAN", "INTERIOR_STRICT", "LabeledGenerator", "LatticePolygon",
    "MismatchedIndexOrigin", "Norm", "NotPrimitive", "Polydisk", "Polygonal",
    "QwVerdict", "SpecParseError", "ToricCapacity",
    "ToricEnumerationBudgetExceeded", "ToricNorm", "TracePoint",
    "VolumeReport", "WEAK", "WeightedL1", "area", "as_fraction",
    "ball_capacities", "capacities", "describe", "disjoint_union_capacities",
    "dominates", "dual_norm_eval", "ellipsoid_capacities",
    "ellipsoid_full_capacities", "enumerate_polygons", "generator_action",
    "generator_grading", "lattice_point_count", "maxplus_convolve",
    "min_action_at_grading", "nk_sequence", "nk_via_triangle", "perimeter",
    "polydisk_capacities", "qw_check", "reeb_orbit_data", "scale",
    "toric_capacity", "volume", "volume_ratio_trace", "weinstein_bound",
]
