"""Residual reconstruction: inverting a time-series model at a parameter."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

import math
from typing import TYPE_CHECKING

import numpy as np

from wabc._cloud import PointCloud
from wabc.timeseries._series import Series

if TYPE_CHECKING:
    from collections.abc import Callable

    from wabc.typing import ArrayLike, FloatArray


def _scale(log_sigma: float) -> float:
    sigma = math.exp(log_sigma)
    if not sigma > 0:
        msg = f"sigma must be positive, got {sigma}"
        raise ValueError(msg)
    return sigma


def ar1_residuals(y: FloatArray, theta: FloatArray) -> FloatArray:
    """``w_t = (y_t - phi * y_{t-1}) / sigma`` for ``t = 2..T``.

    ``theta = (phi, log sigma)``.
    """
    phi, log_sigma = float(theta[0]), float(theta[1])
    return (y[1:] - phi * y[:-1]) / _scale(log_sigma)


def cosine_residuals(y: FloatArray, theta: FloatArray) -> FloatArray:
    """``w_t = (y_t - A cos(2 pi omega t + phi)) / sigma`` for ``t = 1..T``.

    ``theta = (omega, phi, log sigma, log A)``.
    """
    omega, phase, log_sigma, log_amp = (float(v) for v in theta[:4])
    t = np.arange(1, y.shape[0] + 1)
    signal = math.exp(log_amp) * np.cos(2 * math.pi * omega * t + phase)
    return (y - signal) / _scale(log_sigma)


RESIDUAL_REGISTRY: dict[str, Callable[[FloatArray, FloatArray], FloatArray]] = {
    "ar1": ar1_residuals,
    "cosine": cosine_residuals,
}


def residual_reconstruct(
    s: Series | ArrayLike, model: str, theta: ArrayLike
) -> PointCloud:
    """Cloud of the residuals implied by ``theta``.

    At the data-generating parameter the residuals are i.i.d. standard
    Normal.

    Parameters
    ----------
    s : Series
        Univariate series.
    model : str
        Key of :data:`RESIDUAL_REGISTRY`.
    theta : array-like
        Parameter vector in the model's coordinates.

    Raises
    ------
    ValueError
        For an unknown model tag or a non-positive scale.

    Examples
    --------
    >>> residual_reconstruct([1.0, 2.0, 3.0], "ar1", [0.0, 0.0]).points[:, 0]
    array([2., 3.])
    """
    try:
        fn = RESIDUAL_REGISTRY[model]
    except KeyError:
        msg = f"unknown residual model {model!r}; known: {sorted(RESIDUAL_REGISTRY)}"
        raise ValueError(msg) from None
    series = s if isinstance(s, Series) else Series(np.asarray(s, dtype=float))
    return PointCloud(fn(series.flat, np.asarray(theta, dtype=float)))
