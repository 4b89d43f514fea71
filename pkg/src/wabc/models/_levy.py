"""Stochastic volatility driven by a compound Poisson Levy process."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from dataclasses import dataclass
import math
from typing import TYPE_CHECKING

import numpy as np
from scipy.signal import lfilter

from wabc.models._base import GenerativeModel
from wabc.models._registry import register_model
from wabc.prior import Exponential, IndependentPrior, Normal
from wabc.random import as_generator
from wabc.timeseries import EmbeddingSpec, Series

if TYPE_CHECKING:
    from wabc.models._base import RngLike
    from wabc.typing import ArrayLike, FloatArray


def levy_sv_recursion(
    z0: float, lam: float, decayed: ArrayLike, total: ArrayLike
) -> tuple[FloatArray, FloatArray]:
    """Spot and integrated volatility given the per-period jump sums.

    For period ``t`` with jump sizes ``e_j`` at distances ``u_j = t + 1 - c_j``
    before the period end::

        z_{t+1} = exp(-lam) z_t + sum_j exp(-lam u_j) e_j
        v_{t+1} = (z_t - z_{t+1} + sum_j e_j) / lam

    Parameters
    ----------
    z0 : float
        Initial spot volatility.
    lam : float
        Decay rate, ``> 0``.
    decayed : (n,) array-like
        ``sum_j exp(-lam u_j) e_j`` per period.
    total : (n,) array-like
        ``sum_j e_j`` per period.

    Returns
    -------
    z, v : (n,) ndarray
        ``z_1..z_n`` and ``v_1..v_n``.

    Examples
    --------
    >>> z, v = levy_sv_recursion(1.0, math.log(2), [0.0], [0.0])
    >>> float(z[0]), round(float(v[0]), 12) == round(0.5 / math.log(2), 12)
    (0.5, True)
    """
    d = np.asarray(decayed, dtype=float)
    e = np.asarray(total, dtype=float)
    rho = math.exp(-lam)
    z, _ = lfilter([1.0], [1.0, -rho], d, zi=[rho * z0])
    z_prev = np.concatenate([[z0], z[:-1]])
    # z_t - z_{t+1} + sum e == (1 - rho) z_t + sum e (1 - exp(-lam u))
    v = (-math.expm1(-lam) * z_prev + (e - d)) / lam
    return z, v


def levy_sv_simulate(theta: ArrayLike, n: int, rng: RngLike = None) -> Series:
    """Simulate ``n`` log-returns ``y_t ~ N(mu + beta v_t, v_t)``.

    ``theta = (mu, beta, xi, omega2, lam)``. The spot volatility starts from
    its stationary law ``Gamma(xi**2 / omega2, rate=xi / omega2)``; each
    period has ``Poisson(lam xi**2 / omega2)`` jumps at uniform times with
    ``Exp(rate=xi / omega2)`` sizes.

    Raises
    ------
    ValueError
        Unless ``xi``, ``omega2`` and ``lam`` are positive.
    """
    mu, beta, xi, omega2, lam = (
        float(v) for v in np.asarray(theta, dtype=float).reshape(5)
    )
    if min(xi, omega2, lam) <= 0:
        msg = f"xi, omega2 and lam must be positive, got {(xi, omega2, lam)}"
        raise ValueError(msg)
    gen = as_generator(rng)
    shape, rate = xi**2 / omega2, xi / omega2
    z0 = gen.gamma(shape, 1 / rate)

    counts = gen.poisson(lam * shape, n)
    period = np.repeat(np.arange(n), counts)
    before_end = gen.uniform(size=period.size)
    sizes = gen.exponential(1 / rate, period.size)
    decayed = np.bincount(period, sizes * np.exp(-lam * before_end), minlength=n)
    total = np.bincount(period, sizes, minlength=n)

    _, v = levy_sv_recursion(z0, lam, decayed, total)
    return Series(mu + beta * v + np.sqrt(v) * gen.standard_normal(n))


@register_model
@dataclass(frozen=True)
class LevySV(GenerativeModel):
    """Levy-driven stochastic volatility.

    Priors: ``N(0, 2)`` (variance 2) on ``mu`` and ``beta``, ``Exp(0.2)`` on
    ``xi`` and ``omega2``, ``Exp(1)`` on ``lam``.
    """

    name = "levy_sv"
    output = "series"

    def _build_prior(self) -> IndependentPrior:
        sd = math.sqrt(2)
        return IndependentPrior(
            ("mu", "beta", "xi", "omega2", "lam"),
            (
                Normal(0, sd),
                Normal(0, sd),
                Exponential(0.2),
                Exponential(0.2),
                Exponential(1.0),
            ),
        )

    def _simulate(
        self, theta: FloatArray, n: int, rng: np.random.Generator, /
    ) -> FloatArray:
        return levy_sv_simulate(theta, n, rng).values

    @property
    def embedding_default(self) -> EmbeddingSpec:
        return EmbeddingSpec("delay", lags=(1,))
