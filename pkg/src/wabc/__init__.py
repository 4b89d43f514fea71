"""Approximate Bayesian computation with transport distances."""

__all__ = (
    # data
    "PointCloud",
    "CloudValidationError",
    "Series",
    "GroundMetric",
    "RandomStream",
    # modules
    "params",
    "prior",
    "transport",
    "timeseries",
    "models",
    "smc",
    "reference",
)

from wabc import models, params, prior, reference, smc, timeseries, transport
from wabc._cloud import CloudValidationError, PointCloud
from wabc.metric import GroundMetric
from wabc.random import RandomStream
from wabc.timeseries import Series

# isort: split
from wabc import _connect  # noqa: F401
