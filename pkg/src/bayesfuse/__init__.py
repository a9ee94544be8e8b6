"""Combine prior and likelihood distributions into posteriors that minimize
Shannon-information loss, and verify the optimality claims by brute force."""

from .combine import (
    CompatibilityReport,
    WeightedPair,
    averaged_data_pool,
    bayes_posterior,
    check_compatible,
    joint_support,
    linear_pool,
    proportionality_check,
    weighted_posterior,
)
from .dists import (
    DiscreteDist,
    DistFamily,
    Distribution,
    GridDensity,
    canonical_key,
    discretize,
    linf_distance,
    normalize,
    smooth_uniform,
)
from .errors import (
    AllZeroMassError,
    BadResolutionError,
    BayesfuseError,
    DegenerateProductError,
    FileFormatError,
    IncompatibleError,
    InsufficientCoverageError,
    InvalidEventError,
    NonFiniteError,
    RepresentationMismatchError,
    TooLargeError,
    UnsupportedMassError,
)
from .fileio import load_distribution, save_distribution
from .information import (
    Event,
    LossReport,
    combined_info,
    max_loss,
    max_loss_exhaustive,
    shannon_info,
    weighted_combined_info,
    weighted_max_loss,
    weighted_max_loss_exhaustive,
)
from .ratios import RatioProfile, mlr_spread, ratio_profile
from .search import (
    SearchResult,
    SimplexGrid,
    default_resolution,
    enumerate_simplex,
    minimize_max_loss,
    minimize_mlr_spread,
    minimize_weighted_loss,
)

__version__ = "0.1.0"

__all__ = [
    "AllZeroMassError",
    "BadResolutionError",
    "BayesfuseError",
    "CompatibilityReport",
    "DegenerateProductError",
    "DiscreteDist",
    "DistFamily",
    "Distribution",
    "Event",
    "FileFormatError",
    "GridDensity",
    "IncompatibleError",
    "InsufficientCoverageError",
    "InvalidEventError",
    "LossReport",
    "NonFiniteError",
    "RatioProfile",
    "RepresentationMismatchError",
    "SearchResult",
    "SimplexGrid",
    "TooLargeError",
    "UnsupportedMassError",
    "WeightedPair",
    "averaged_data_pool",
    "bayes_posterior",
    "canonical_key",
    "check_compatible",
    "combined_info",
    "default_resolution",
    "discretize",
    "enumerate_simplex",
    "joint_support",
    "linear_pool",
    "linf_distance",
    "load_distribution",
    "max_loss",
    "max_loss_exhaustive",
    "minimize_max_loss",
    "minimize_mlr_spread",
    "minimize_weighted_loss",
    "mlr_spread",
    "normalize",
    "proportionality_check",
    "ratio_profile",
    "save_distribution",
    "shannon_info",
    "smooth_uniform",
    "weighted_combined_info",
    "weighted_max_loss",
    "weighted_max_loss_exhaustive",
    "weighted_posterior",
]
