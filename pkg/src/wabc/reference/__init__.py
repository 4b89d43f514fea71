"""Reference posteriors for validation."""

__all__ = ("MhConfig", "MhResult", "metropolis_hastings", "cloud_w1")

from wabc.reference._compare import cloud_w1
from wabc.reference._mh import MhConfig, MhResult, metropolis_hastings
