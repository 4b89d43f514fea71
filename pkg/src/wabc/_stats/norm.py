"""Gaussian distribution functions."""

from __future__ import annotations

__all__ = ("logpdf", "mvn_logpdf")

import math
from typing import TYPE_CHECKING

import numpy as np
from scipy.linalg import cho_factor, cho_solve

if TYPE_CHECKING:
    from wabc.typing import FloatArray

log2pi = math.log(2 * math.pi)
logsqrt2pi = log2pi / 2


def logpdf(
    x: FloatArray | float, loc: FloatArray | float, scale: FloatArray | float
) -> FloatArray:
    """Log-PDF of a Gaussian distribution.

    Parameters
    ----------
    x : (N,) array | float
        The input.
    loc : (N,) array | float
        The location parameter.
    scale : (N,) array | float
        The standard deviation, ``> 0``.

    Returns
    -------
    array
    """
    return -0.5 * ((np.asarray(x) - loc) / scale) ** 2 - np.log(scale) - logsqrt2pi


def mvn_logpdf(x: FloatArray, mean: FloatArray, cov: FloatArray) -> FloatArray:
    """Log-PDF of a multivariate Gaussian, row-wise over ``x``.

    Parameters
    ----------
    x : (N, D) array
    mean : (D,) array
    cov : (D, D) array
        Symmetric positive definite.

    Returns
    -------
    (N,) array
    """
    c, low = cho_factor(cov, lower=True)
    diff = np.atleast_2d(x) - mean
    maha = np.einsum("ij,ji->i", diff, cho_solve((c, low), diff.T))
    logdet = 2 * np.log(np.diag(c)).sum()
    return -0.5 * (maha + logdet + diff.shape[1] * log2pi)
