"""Maximum mean discrepancy with a Gaussian kernel."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from typing import TYPE_CHECKING, Any

import numpy as np
from scipy.spatial.distance import cdist, pdist

from wabc._cloud import as_cloud
from wabc.transport._base import BandwidthError, DegenerateCloudError, coerce_pair

if TYPE_CHECKING:
    from wabc._cloud import PointCloud
    from wabc.typing import FloatArray


def _kernel_mean(a: FloatArray, b: FloatArray, bandwidth: float) -> float:
    return float(np.exp(-cdist(a, b, "sqeuclidean") / (2 * bandwidth**2)).mean())


def mmd_squared(x: PointCloud | Any, y: PointCloud | Any, bandwidth: float) -> float:
    """Squared MMD between two clouds, as a V-statistic.

    With ``k(a, b) = exp(-||a - b||**2 / (2 h**2))`` the value is::

        mean k(x_i, x_j) + mean k(y_i, y_j) - 2 mean k(x_i, y_j)

    Parameters
    ----------
    x : (n, d) PointCloud
    y : (m, d) PointCloud
    bandwidth : float
        Kernel bandwidth ``h > 0``.

    Returns
    -------
    float

    Raises
    ------
    BandwidthError
        If ``bandwidth <= 0``.

    Examples
    --------
    >>> mmd_squared([[0.0]], [[0.0]], bandwidth=1.0)
    0.0
    """
    if not bandwidth > 0:
        raise BandwidthError(bandwidth)
    cx, cy = coerce_pair(x, y, same_size=False)
    xx = _kernel_mean(cx.points, cx.points, bandwidth)
    yy = _kernel_mean(cy.points, cy.points, bandwidth)
    xy = _kernel_mean(cx.points, cy.points, bandwidth)
    return xx + yy - 2 * xy


def median_heuristic_bandwidth(
    x: PointCloud | Any, *, include_diagonal: bool = False
) -> float:
    """Median of the pairwise L1 distances within ``x``.

    Parameters
    ----------
    x : PointCloud
        At least two points.
    include_diagonal : bool, optional keyword-only
        Also count the ``i = j`` pairs (distance 0) and both orders of each
        pair. Off by default, since the zeros pull the median down.

    Returns
    -------
    float

    Raises
    ------
    ValueError
        If ``x`` has fewer than two points.
    DegenerateCloudError
        If the median is zero, e.g. all points identical.

    Examples
    --------
    >>> median_heuristic_bandwidth([[0.0], [1.0], [2.0]])
    1.0
    """
    cx = as_cloud(x)
    if cx.n < 2:  # noqa: PLR2004
        msg = f"the median heuristic needs n >= 2 points, got {cx.n}"
        raise ValueError(msg)
    dists = pdist(cx.points, "cityblock")
    if include_diagonal:
        dists = np.concatenate([dists, dists, np.zeros(cx.n)])
    h = float(np.median(dists))
    if h <= 0:
        msg = "median pairwise distance is zero (degenerate cloud)"
        raise DegenerateCloudError(msg)
    return h
