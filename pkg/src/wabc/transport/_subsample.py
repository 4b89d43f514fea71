"""Sub-sampling and the vector (index-matched) distance."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from typing import TYPE_CHECKING, Any

import numpy as np

from wabc._cloud import as_cloud
from wabc.metric import GroundMetric, paired_costs
from wabc.random import as_generator
from wabc.transport._base import DistanceResult, coerce_pair, root

if TYPE_CHECKING:
    from wabc._cloud import PointCloud
    from wabc.random import RandomStream


def subsample(
    x: PointCloud | Any, m: int, rng: RandomStream | np.random.Generator
) -> PointCloud:
    """Draw ``m`` rows of ``x`` without replacement, keeping their order.

    Parameters
    ----------
    x : PointCloud
    m : int
        ``1 <= m <= n``.
    rng : RandomStream | Generator

    Returns
    -------
    PointCloud

    Raises
    ------
    ValueError
        If ``m`` is out of range.
    """
    cx = as_cloud(x)
    if not 1 <= m <= cx.n:
        msg = f"subsample size must be in [1, {cx.n}], got {m}"
        raise ValueError(msg)
    if m == cx.n:
        return cx
    idx = np.sort(as_generator(rng).choice(cx.n, size=m, replace=False))
    return cx.take(idx)


def euclidean_vector_distance(
    x: PointCloud | Any, y: PointCloud | Any, m: GroundMetric | None = None
) -> DistanceResult:
    """Distance between data sets compared row by row.

    ``(mean_t rho(x_t, y_t)**p)**(1/p)``: the data sets are treated as
    vectors, so the row order matters.

    Examples
    --------
    >>> euclidean_vector_distance([[0.0], [1.0]], [[1.0], [0.0]]).value
    1.0
    """
    m = GroundMetric() if m is None else m
    cx, cy = coerce_pair(x, y)
    return DistanceResult(
        root(paired_costs(cx.points, cy.points, m).mean(), m.p), "euclidean"
    )
