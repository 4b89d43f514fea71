"""Noisy cosine signal."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from dataclasses import dataclass
import math
from typing import TYPE_CHECKING, Any

import numpy as np

from wabc._stats import norm
from wabc.models._base import GenerativeModel
from wabc.models._registry import register_model
from wabc.prior import IndependentPrior, Normal, Uniform
from wabc.random import as_generator
from wabc.timeseries import EmbeddingSpec, Series

if TYPE_CHECKING:
    from wabc.models._base import RngLike
    from wabc.typing import ArrayLike, FloatArray


def cosine_signal(theta: ArrayLike, T: int) -> FloatArray:  # noqa: N803
    """``A cos(2 pi omega t + phase)`` for ``t = 1..T``.

    ``theta = (omega, phase, log sigma, log A)``.
    """
    omega, phase, _, log_amp = (float(v) for v in np.asarray(theta, dtype=float)[:4])
    t = np.arange(1, T + 1)
    return math.exp(log_amp) * np.cos(2 * math.pi * omega * t + phase)


def cosine_simulate(theta: ArrayLike, n: int, rng: RngLike = None) -> Series:
    """Cosine signal plus i.i.d. ``N(0, sigma**2)`` noise."""
    sigma = math.exp(float(np.asarray(theta, dtype=float)[2]))
    noise = sigma * as_generator(rng).standard_normal(n)
    return Series(cosine_signal(theta, n) + noise)


def cosine_loglik(theta: ArrayLike, s: Any) -> float:
    """Closed-form Gaussian log-likelihood."""
    y = s.flat if isinstance(s, Series) else np.asarray(s, dtype=float).reshape(-1)
    sigma = math.exp(float(np.asarray(theta, dtype=float)[2]))
    return float(norm.logpdf(y, cosine_signal(theta, y.size), sigma).sum())


@register_model
@dataclass(frozen=True)
class Cosine(GenerativeModel):
    """Cosine with uniform priors on frequency and phase.

    ``omega ~ U[0, 0.1]``, ``phase ~ U[0, 2 pi]`` and standard Normal priors on
    ``log sigma`` and ``log A``.
    """

    name = "cosine"
    output = "series"

    def _build_prior(self) -> IndependentPrior:
        return IndependentPrior(
            ("omega", "phase", "log_sigma", "log_amplitude"),
            (Uniform(0, 0.1), Uniform(0, 2 * math.pi), Normal(0, 1), Normal(0, 1)),
        )

    def _simulate(
        self, theta: FloatArray, n: int, rng: np.random.Generator, /
    ) -> FloatArray:
        return cosine_simulate(theta, n, rng).values

    @property
    def embedding_default(self) -> EmbeddingSpec:
        return EmbeddingSpec("curve")

    @property
    def has_loglik(self) -> bool:
        return True

    def loglik(self, theta: ArrayLike, data: Any) -> float:
        return cosine_loglik(theta, data)
