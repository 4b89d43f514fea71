"""Generative models, their priors, likelihoods and summaries."""

__all__ = (
    # base
    "GenerativeModel",
    "MODEL_REGISTRY",
    "get_model",
    "register_model",
    # models
    "NormalLocation",
    "GAndK",
    "BivariateGAndK",
    "ToggleSwitch",
    "MG1Queue",
    "AR1",
    "Cosine",
    "LevySV",
    # functions
    "normal_location_simulate",
    "normal_location_posterior",
    "GaussianPosterior",
    "gandk_quantile",
    "gandk_simulate",
    "gandk_logpdf",
    "bigandk_simulate",
    "bigandk_loglik",
    "toggleswitch_simulate",
    "mg1_recursion",
    "mg1_simulate",
    "ar1_simulate",
    "ar1_loglik",
    "ar1_stationary_cov",
    "cosine_signal",
    "cosine_simulate",
    "cosine_loglik",
    "levy_sv_recursion",
    "levy_sv_simulate",
    # summaries
    "acf_summary",
    "mean_summary",
    "SUMMARY_REGISTRY",
)

from wabc.models._ar1 import AR1, ar1_loglik, ar1_simulate, ar1_stationary_cov
from wabc.models._base import GenerativeModel
from wabc.models._cosine import Cosine, cosine_loglik, cosine_signal, cosine_simulate
from wabc.models._gandk import (
    BivariateGAndK,
    GAndK,
    bigandk_loglik,
    bigandk_simulate,
    gandk_logpdf,
    gandk_quantile,
    gandk_simulate,
)
from wabc.models._levy import LevySV, levy_sv_recursion, levy_sv_simulate
from wabc.models._normal import (
    GaussianPosterior,
    NormalLocation,
    normal_location_posterior,
    normal_location_simulate,
)
from wabc.models._queue import MG1Queue, mg1_recursion, mg1_simulate
from wabc.models._registry import MODEL_REGISTRY, get_model, register_model
from wabc.models._summaries import SUMMARY_REGISTRY, acf_summary, mean_summary
from wabc.models._toggle import ToggleSwitch, toggleswitch_simulate
