"""Bivariate Normal location model with its conjugate posterior."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from dataclasses import dataclass
import math
from typing import TYPE_CHECKING, Any, Final

import numpy as np

from wabc._cloud import PointCloud, as_cloud
from wabc._stats.norm import mvn_logpdf
from wabc.models._base import GenerativeModel
from wabc.models._registry import register_model
from wabc.prior import IndependentPrior, Normal
from wabc.random import as_generator

if TYPE_CHECKING:
    from wabc.models._base import RngLike
    from wabc.typing import ArrayLike, FloatArray

NOISE_COV: Final = np.array([[1.0, 0.5], [0.5, 1.0]])
PRIOR_VAR: Final = 25.0


def normal_location_simulate(
    theta: ArrayLike, n: int, rng: RngLike = None
) -> PointCloud:
    """``n`` i.i.d. draws from ``N(theta, [[1, .5], [.5, 1]])``."""
    mean = np.asarray(theta, dtype=float).reshape(2)
    chol = np.linalg.cholesky(NOISE_COV)
    z = as_generator(rng).standard_normal((n, 2))
    return PointCloud(mean + z @ chol.T)


@dataclass(frozen=True, slots=True)
class GaussianPosterior:
    """Multivariate Normal distribution."""

    mean: FloatArray
    cov: FloatArray

    def logpdf(self, theta: ArrayLike) -> FloatArray:
        points = np.atleast_2d(np.asarray(theta, dtype=float))
        return mvn_logpdf(points, self.mean, self.cov)

    def sample(self, rng: RngLike = None, size: int = 1) -> FloatArray:
        return as_generator(rng).multivariate_normal(self.mean, self.cov, size=size)


def normal_location_posterior(
    data: Any, *, prior_var: float = PRIOR_VAR, noise_cov: FloatArray = NOISE_COV
) -> GaussianPosterior:
    """Exact posterior of the location under a centred Normal prior.

    With prior precision ``L0 = I / prior_var`` and ``S = noise_cov``, the
    posterior is ``N(P^-1 (n S^-1 ybar), P^-1)`` with ``P = L0 + n S^-1``.

    Parameters
    ----------
    data : PointCloud
        Observations of dimension 2.
    prior_var : float, keyword-only
        Prior variance of each coordinate.
    noise_cov : (2, 2) ndarray, keyword-only
        Known observation covariance.

    Raises
    ------
    CloudValidationError
        If ``data`` is empty.
    """
    cloud = as_cloud(data)
    d = noise_cov.shape[0]
    noise_prec = np.linalg.inv(noise_cov)
    precision = np.eye(d) / prior_var + cloud.n * noise_prec
    cov = np.linalg.inv(precision)
    mean = cov @ (cloud.n * noise_prec @ cloud.points.mean(axis=0))
    return GaussianPosterior(mean, (cov + cov.T) / 2)


@register_model
@dataclass(frozen=True)
class NormalLocation(GenerativeModel):
    """Bivariate Normal with unknown mean and known covariance."""

    name = "normal_location"

    def _build_prior(self) -> IndependentPrior:
        scale = math.sqrt(PRIOR_VAR)
        return IndependentPrior(
            ("theta1", "theta2"), (Normal(0, scale), Normal(0, scale))
        )

    def _simulate(
        self, theta: FloatArray, n: int, rng: np.random.Generator, /
    ) -> FloatArray:
        return normal_location_simulate(theta, n, rng).points

    @property
    def has_loglik(self) -> bool:
        return True

    def loglik(self, theta: ArrayLike, data: Any) -> float:
        cloud = as_cloud(data)
        mean = np.asarray(theta, dtype=float)
        return float(mvn_logpdf(cloud.points, mean, NOISE_COV).sum())

    def posterior(self, data: Any) -> GaussianPosterior:
        """The exact posterior given ``data``."""
        return normal_location_posterior(data)
