"""Summary statistics of data sets."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from typing import TYPE_CHECKING, Any

import numpy as np

from wabc._cloud import as_cloud

if TYPE_CHECKING:
    from collections.abc import Callable

    from wabc.typing import FloatArray


def mean_summary(data: Any) -> FloatArray:
    """Sample mean of the observations, one entry per coordinate."""
    return as_cloud(data).points.mean(axis=0)


def acf_summary(data: Any, L: int = 50) -> float:  # noqa: N803
    """Sum of the first ``L`` sample autocorrelations of the squared series.

    Autocovariances use the biased ``1 / T`` normalization.

    Raises
    ------
    ValueError
        If the series is multivariate, not longer than ``L``, or its square
        is constant.

    Examples
    --------
    >>> acf_summary([1.0, 2.0, 3.0, 4.0], L=2) == -9.25 / 129
    True
    """
    points = as_cloud(data).points
    if points.shape[1] != 1:
        msg = f"acf_summary needs a univariate series, got d={points.shape[1]}"
        raise ValueError(msg)
    sq = points[:, 0] ** 2
    T = sq.size  # noqa: N806
    if T <= L:
        msg = f"series of length {T} is too short for {L} lags"
        raise ValueError(msg)
    c = sq - sq.mean()
    denom = float(c @ c)
    if denom == 0:
        msg = "autocorrelations are undefined for a constant squared series"
        raise ValueError(msg)
    return float(sum(c[:-lag] @ c[lag:] for lag in range(1, L + 1)) / denom)


SUMMARY_REGISTRY: dict[str, Callable[[Any], FloatArray | float]] = {
    "mean": mean_summary,
    "acf": acf_summary,
}
