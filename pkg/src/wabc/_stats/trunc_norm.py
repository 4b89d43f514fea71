"""Truncated Gaussian sampling."""

from __future__ import annotations

__all__ = ("sample_above",)

import logging
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from wabc.typing import FloatArray

logger = logging.getLogger(__name__)


def sample_above(
    loc: FloatArray,
    scale: FloatArray | float,
    lower: float,
    rng: np.random.Generator,
    *,
    max_rounds: int = 100,
) -> FloatArray:
    """Draw ``N(loc, scale**2)`` truncated to ``[lower, inf)``, elementwise.

    Sampling is by rejection from the untruncated Gaussian. Entries still
    below ``lower`` after ``max_rounds`` redraws are clamped to ``lower``.
    Entries with zero scale are clamped directly.

    Parameters
    ----------
    loc : (N,) array
    scale : (N,) array | float
        Standard deviations, ``>= 0``.
    lower : float
    rng : Generator
    max_rounds : int, keyword-only

    Returns
    -------
    (N,) array
    """
    loc = np.asarray(loc, dtype=float)
    scale = np.broadcast_to(np.asarray(scale, dtype=float), loc.shape)
    out = loc + scale * rng.standard_normal(loc.shape)
    bad = out < lower
    for _ in range(max_rounds):
        if not bad.any():
            break
        idx = np.flatnonzero(bad & (scale > 0))
        if idx.size == 0:
            break
        out[idx] = loc[idx] + scale[idx] * rng.standard_normal(idx.size)
        bad = out < lower
    if bad.any():
        logger.debug("clamping %d truncated-normal draws to %g", bad.sum(), lower)
        out[bad] = lower
    return out
