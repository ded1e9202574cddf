"""Recovery of weighted point-mass signals from their second moment over O(n)."""

__version__ = "0.1.0"

from .errors import (
    BeltwayError,
    BudgetExceeded,
    CollisionError,
    ConfigError,
    DegenerateParameters,
    DegeneratePartner,
    DimensionError,
    DimensionMismatch,
    FileFormatError,
    InconsistentWeights,
    InvalidInvariantSet,
    NoRealSolution,
    NotCollisionFree,
    NotPSD,
    NotRadiallyCollisionFree,
    PreconditionError,
    RankExceeded,
    ScaleError,
    WeightProductsNotDistinct,
)
from .experiment import ExperimentConfig, ExperimentReport, mc_sphere_experiment
from .invariants import (
    InvariantEntry,
    InvariantSet,
    MagnitudePartition,
    OrbitTriple,
    invariant_sets_equal,
    is_collision_free,
    is_radially_collision_free,
    magnitude_partition,
    pair_orbit_triple,
    second_moment_invariants,
)
from .recovery import (
    RecoveryResult,
    enumerate_orbits,
    orbit_count_bound,
    recover_distinct_weight_products,
    recover_unique,
    weight_products_distinct,
)
from .sampling import random_orthogonal, unit_sphere_point
from .signals import (
    DEFAULT_TOL,
    SparseSignal,
    Tolerances,
    gram_matrix,
    homometric_partner,
    orbit_equivalent,
    psd_factor,
    reduce_to_triangular,
)
from .turnpike import (
    difference_multiset,
    embed_half_circle,
    piccard_sets,
    turnpike_equivalent,
)

__all__ = [
    "BeltwayError",
    "BudgetExceeded",
    "CollisionError",
    "ConfigError",
    "DEFAULT_TOL",
    "DegenerateParameters",
    "DegeneratePartner",
    "DimensionError",
    "DimensionMismatch",
    "ExperimentConfig",
    "ExperimentReport",
    "FileFormatError",
    "InconsistentWeights",
    "InvalidInvariantSet",
    "InvariantEntry",
    "InvariantSet",
    "MagnitudePartition",
    "NoRealSolution",
    "NotCollisionFree",
    "NotPSD",
    "NotRadiallyCollisionFree",
    "OrbitTriple",
    "PreconditionError",
    "RankExceeded",
    "RecoveryResult",
    "ScaleError",
    "SparseSignal",
    "Tolerances",
    "WeightProductsNotDistinct",
    "difference_multiset",
    "embed_half_circle",
    "enumerate_orbits",
    "gram_matrix",
    "homometric_partner",
    "invariant_sets_equal",
    "is_collision_free",
    "is_radially_collision_free",
    "magnitude_partition",
    "mc_sphere_experiment",
    "orbit_count_bound",
    "orbit_equivalent",
    "pair_orbit_triple",
    "piccard_sets",
    "psd_factor",
    "random_orthogonal",
    "recover_distinct_weight_products",
    "recover_unique",
    "reduce_to_triangular",
    "second_moment_invariants",
    "turnpike_equivalent",
    "unit_sphere_point",
    "weight_products_distinct",
]
