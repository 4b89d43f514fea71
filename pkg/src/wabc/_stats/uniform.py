from __future__ import annotations

__all__ = ("logpdf",)

from math import inf
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from wabc.typing import FloatArray


def logpdf(
    x: FloatArray | float, /, a: float, b: float, *, nil: float = -inf
) -> FloatArray:
    """Log-pdf of a uniform distribution on ``[a, b]``.

    Parameters
    ----------
    x : (N,) array | float, positional-only
        The data.
    a, b : float
        The lower and upper bounds of the uniform distribution.
    nil : float, keyword-only
        The value to return when the data is outside the bounds. Default is
        negative infinity.

    Returns
    -------
    array
    """
    x = np.asarray(x, dtype=float)
    # the log-pdf is -log(b - a) for x in [a, b], and nil otherwise
    return np.where((a <= x) & (x <= b), -np.log(b - a), nil)
