"""Distances between point clouds."""

__all__ = (
    # types
    "Assignment",
    "TransportPlan",
    "DistanceResult",
    # errors
    "SizeMismatchError",
    "BandwidthError",
    "DegenerateCloudError",
    "SinkhornConvergenceError",
    # exact
    "wasserstein_1d",
    "exact_wasserstein",
    "brute_force_wasserstein",
    # approximations
    "hilbert_index",
    "hilbert_order",
    "hilbert_distance",
    "joint_box",
    "swapping_distance",
    "sinkhorn_divergence",
    # others
    "mmd_squared",
    "median_heuristic_bandwidth",
    "subsample",
    "euclidean_vector_distance",
)

from wabc.transport._base import (
    Assignment,
    BandwidthError,
    DegenerateCloudError,
    DistanceResult,
    SinkhornConvergenceError,
    SizeMismatchError,
    TransportPlan,
)
from wabc.transport._exact import (
    brute_force_wasserstein,
    exact_wasserstein,
    wasserstein_1d,
)
from wabc.transport._hilbert import (
    hilbert_distance,
    hilbert_index,
    hilbert_order,
    joint_box,
)
from wabc.transport._mmd import median_heuristic_bandwidth, mmd_squared
from wabc.transport._sinkhorn import sinkhorn_divergence
from wabc.transport._subsample import euclidean_vector_distance, subsample
from wabc.transport._swap import swapping_distance
