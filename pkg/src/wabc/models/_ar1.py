"""Gaussian autoregressive process of order one."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from dataclasses import dataclass
import math
from typing import TYPE_CHECKING, Any

import numpy as np
from scipy.signal import lfilter

from wabc._stats import norm
from wabc.models._base import GenerativeModel
from wabc.models._registry import register_model
from wabc.prior import IndependentPrior, Normal, Uniform
from wabc.random import as_generator
from wabc.timeseries import EmbeddingSpec, Series

if TYPE_CHECKING:
    from wabc.models._base import RngLike
    from wabc.typing import ArrayLike, FloatArray


def _unpack(theta: ArrayLike) -> tuple[float, float]:
    phi, log_sigma = (float(v) for v in np.asarray(theta, dtype=float).reshape(2))
    if not abs(phi) < 1:
        msg = f"the process is stationary only for |phi| < 1, got {phi}"
        raise ValueError(msg)
    return phi, math.exp(log_sigma)


def ar1_stationary_cov(
    phi: float, sigma: float, lags: tuple[int, ...] = (1,)
) -> FloatArray:
    """Stationary covariance of the delay vector ``(y_t, y_{t-lag_1}, ...)``.

    Entry ``(i, j)`` is ``sigma**2 / (1 - phi**2) * phi**|o_i - o_j|`` with
    offsets ``o = (0, lag_1, ...)``.

    Examples
    --------
    >>> ar1_stationary_cov(0.5, 1.0)
    array([[1.33333333, 0.66666667],
           [0.66666667, 1.33333333]])
    """
    if not abs(phi) < 1:
        msg = f"|phi| must be < 1, got {phi}"
        raise ValueError(msg)
    offsets = np.array((0, *lags))
    gap = np.abs(offsets[:, None] - offsets[None, :])
    return sigma**2 / (1 - phi**2) * phi**gap


def ar1_simulate(theta: ArrayLike, n: int, rng: RngLike = None) -> Series:
    """``y_t = phi y_{t-1} + sigma w_t`` started from the stationary law.

    ``theta = (phi, log sigma)``.

    Raises
    ------
    ValueError
        If ``|phi| >= 1``.
    """
    phi, sigma = _unpack(theta)
    shocks = sigma * as_generator(rng).standard_normal(n)
    shocks[0] /= math.sqrt(1 - phi**2)
    return Series(lfilter([1.0], [1.0, -phi], shocks))


def ar1_loglik(theta: ArrayLike, s: Any) -> float:
    """Exact Gaussian log-likelihood, ``-inf`` when ``|phi| >= 1``."""
    try:
        phi, sigma = _unpack(theta)
    except ValueError:
        return -math.inf
    y = s.flat if isinstance(s, Series) else np.asarray(s, dtype=float).reshape(-1)
    first = norm.logpdf(y[0], 0.0, sigma / math.sqrt(1 - phi**2))
    rest = norm.logpdf(y[1:], phi * y[:-1], sigma)
    return float(first + rest.sum())


@register_model
@dataclass(frozen=True)
class AR1(GenerativeModel):
    """AR(1) with ``phi ~ U[-1, 1]`` and ``log sigma ~ N(0, 1)``."""

    name = "ar1"
    output = "series"

    def _build_prior(self) -> IndependentPrior:
        return IndependentPrior(("phi", "log_sigma"), (Uniform(-1, 1), Normal(0, 1)))

    def _simulate(
        self, theta: FloatArray, n: int, rng: np.random.Generator, /
    ) -> FloatArray:
        return ar1_simulate(theta, n, rng).values

    @property
    def embedding_default(self) -> EmbeddingSpec:
        return EmbeddingSpec("delay", lags=(1,))

    @property
    def has_loglik(self) -> bool:
        return True

    def loglik(self, theta: ArrayLike, data: Any) -> float:
        return ar1_loglik(theta, data)
