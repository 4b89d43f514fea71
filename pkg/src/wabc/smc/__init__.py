"""Adaptive ABC-SMC sampler."""

__all__ = (
    # config
    "SmcConfig",
    # state
    "Particle",
    "SmcState",
    "SmcResult",
    "ThresholdTrace",
    "TraceRow",
    # distances
    "DistanceSpec",
    "DistanceFunction",
    "FrozenConstraint",
    "NonFiniteDistanceError",
    "combined_distance",
    "METHODS",
    # components
    "adapt_threshold",
    "select_threshold",
    "systematic_resample",
    "MixtureProposal",
    "fit_mixture_proposal",
    "rhit_mcmc_step",
    # drivers
    "init_population",
    "run",
    "run_two_stage",
    "particle_table",
)

from wabc.smc._config import SmcConfig
from wabc.smc._distance import (
    METHODS,
    DistanceFunction,
    DistanceSpec,
    FrozenConstraint,
    NonFiniteDistanceError,
    combined_distance,
)
from wabc.smc._kernel import rhit_mcmc_step
from wabc.smc._mixture import MixtureProposal, fit_mixture_proposal
from wabc.smc._resample import adapt_threshold, select_threshold, systematic_resample
from wabc.smc._sampler import init_population, run, run_two_stage, particle_table
from wabc.smc._state import Particle, SmcResult, SmcState, ThresholdTrace, TraceRow
