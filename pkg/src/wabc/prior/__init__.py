"""Priors."""

__all__ = ("Prior", "Uniform", "Normal", "Exponential", "IndependentPrior")

from wabc.prior._base import Prior
from wabc.prior._builtin import Exponential, Normal, Uniform
from wabc.prior._core import IndependentPrior
