"""Exponential distribution."""

from __future__ import annotations

__all__ = ("logpdf",)

from math import inf
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from wabc.typing import FloatArray


def logpdf(x: FloatArray | float, rate: float, *, nil: float = -inf) -> FloatArray:
    """Log-pdf of an exponential distribution with the given ``rate``.

    Parameters
    ----------
    x : (N,) array | float
        The input.
    rate : float
        The rate, ``> 0``.
    nil : float, keyword-only
        The value to use for negative ``x``.

    Returns
    -------
    array
    """
    x = np.asarray(x, dtype=float)
    return np.where(x >= 0, np.log(rate) - rate * x, nil)
