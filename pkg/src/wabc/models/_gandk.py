"""Univariate and bivariate g-and-k distributions."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from dataclasses import dataclass
import math
from typing import TYPE_CHECKING, Any

import numpy as np
from scipy.special import ndtri

from wabc._cloud import PointCloud, as_cloud
from wabc._stats import gandk
from wabc._stats.norm import log2pi
from wabc.models._base import GenerativeModel
from wabc.models._registry import register_model
from wabc.prior import IndependentPrior, Uniform
from wabc.random import as_generator

if TYPE_CHECKING:
    from wabc.models._base import RngLike
    from wabc.typing import ArrayLike, FloatArray


def _unpack(theta: ArrayLike) -> tuple[float, float, float, float]:
    a, b, g, k = (float(v) for v in np.asarray(theta, dtype=float).reshape(4))
    if not b > 0:
        msg = f"b must be positive, got {b}"
        raise ValueError(msg)
    if not k > -0.5:  # noqa: PLR2004
        msg = f"k must exceed -0.5, got {k}"
        raise ValueError(msg)
    return a, b, g, k


def gandk_quantile(r: ArrayLike, theta: ArrayLike) -> FloatArray:
    """Quantile function at probability level ``r``.

    Parameters
    ----------
    r : array-like
        Levels in the open interval ``(0, 1)``.
    theta : (4,) array-like
        ``(a, b, g, k)`` with ``b > 0`` and ``k > -0.5``.

    Raises
    ------
    ValueError
        If a level is outside ``(0, 1)``.

    Examples
    --------
    >>> float(gandk_quantile(0.5, (3.0, 1.0, 2.0, 0.5)))
    3.0
    """
    rr = np.asarray(r, dtype=float)
    if not np.all((rr > 0) & (rr < 1)):
        msg = "quantile levels must lie in (0, 1)"
        raise ValueError(msg)
    return gandk.quantile_z(ndtri(rr), *_unpack(theta))


def gandk_simulate(theta: ArrayLike, n: int, rng: RngLike = None) -> PointCloud:
    """``n`` i.i.d. draws, the quantile function applied to Normal draws."""
    params = _unpack(theta)
    z = as_generator(rng).standard_normal(n)
    return PointCloud(gandk.quantile_z(z, *params))


def gandk_logpdf(y: ArrayLike, theta: ArrayLike) -> FloatArray:
    """Log-density by numerical inversion of the quantile function.

    Raises
    ------
    RootFindingError
        If the inversion fails.
    """
    return gandk.logpdf(np.asarray(y, dtype=float), *_unpack(theta))


def _rho(theta: FloatArray) -> float:
    rho = float(theta[8])
    if not abs(rho) < 1:
        msg = f"rho must lie in (-1, 1), got {rho}"
        raise ValueError(msg)
    return rho


def bigandk_simulate(theta: ArrayLike, n: int, rng: RngLike = None) -> PointCloud:
    """Correlated Normal pairs pushed through two g-and-k quantile functions.

    ``theta = (a1, b1, g1, k1, a2, b2, g2, k2, rho)``.
    """
    vec = np.asarray(theta, dtype=float).reshape(9)
    first, second, rho = _unpack(vec[:4]), _unpack(vec[4:8]), _rho(vec)
    gen = as_generator(rng)
    z1 = gen.standard_normal(n)
    z2 = rho * z1 + math.sqrt(1 - rho**2) * gen.standard_normal(n)
    return PointCloud(
        np.column_stack([gandk.quantile_z(z1, *first), gandk.quantile_z(z2, *second)])
    )


def bigandk_loglik(theta: ArrayLike, data: Any) -> float:
    """Log-likelihood through the Gaussian copula of the two marginals.

    Each coordinate is mapped back to its Normal score ``z`` and the joint
    density is the correlated bivariate Normal density of the scores divided
    by both quantile-function derivatives.
    """
    vec = np.asarray(theta, dtype=float).reshape(9)
    first, second, rho = _unpack(vec[:4]), _unpack(vec[4:8]), _rho(vec)
    y = as_cloud(data).points
    z1 = gandk.invert(y[:, 0], *first)
    z2 = gandk.invert(y[:, 1], *second)
    if not (np.all(np.isfinite(z1)) and np.all(np.isfinite(z2))):
        return -math.inf
    one_m = 1 - rho**2
    quad = (z1**2 - 2 * rho * z1 * z2 + z2**2) / one_m
    log_scores = -log2pi - 0.5 * math.log(one_m) - 0.5 * quad
    log_jac = np.log(gandk.dquantile_z(z1, *first)) + np.log(
        gandk.dquantile_z(z2, *second)
    )
    return float((log_scores - log_jac).sum())


@register_model
@dataclass(frozen=True)
class GAndK(GenerativeModel):
    """Univariate g-and-k distribution with a uniform prior on ``[0, 10]^4``."""

    name = "gandk"

    def _build_prior(self) -> IndependentPrior:
        return IndependentPrior(
            ("a", "b", "g", "k"), tuple(Uniform(0, 10) for _ in range(4))
        )

    def _simulate(
        self, theta: FloatArray, n: int, rng: np.random.Generator, /
    ) -> FloatArray:
        return gandk_simulate(theta, n, rng).points

    @property
    def has_loglik(self) -> bool:
        return True

    def loglik(self, theta: ArrayLike, data: Any) -> float:
        try:
            params = _unpack(theta)
        except ValueError:
            return -math.inf
        return float(gandk.logpdf(as_cloud(data).points[:, 0], *params).sum())


@register_model
@dataclass(frozen=True)
class BivariateGAndK(GenerativeModel):
    """Bivariate g-and-k with a Gaussian copula of correlation ``rho``."""

    name = "bigandk"

    def _build_prior(self) -> IndependentPrior:
        names = ("a1", "b1", "g1", "k1", "a2", "b2", "g2", "k2", "rho")
        comps = (*(Uniform(0, 10) for _ in range(8)), Uniform(-1, 1))
        return IndependentPrior(names, comps)

    def _simulate(
        self, theta: FloatArray, n: int, rng: np.random.Generator, /
    ) -> FloatArray:
        return bigandk_simulate(theta, n, rng).points

    @property
    def has_loglik(self) -> bool:
        return True

    def loglik(self, theta: ArrayLike, data: Any) -> float:
        try:
            return bigandk_loglik(theta, data)
        except ValueError:
            return -math.inf
