"""Exact Wasserstein distances between uniform empirical measures."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from itertools import permutations
from typing import TYPE_CHECKING, Any

import numpy as np
from scipy.optimize import linear_sum_assignment

from wabc._cloud import CloudValidationError
from wabc.metric import GroundMetric, cost_matrix
from wabc.setup_package import BRUTE_FORCE_MAX_N
from wabc.transport._base import Assignment, DistanceResult, coerce_pair, root

if TYPE_CHECKING:
    from wabc._cloud import PointCloud


def wasserstein_1d(
    x: PointCloud | Any, y: PointCloud | Any, p: float = 1.0
) -> DistanceResult:
    """Wasserstein distance of order ``p`` between two 1-D clouds by sorting.

    Parameters
    ----------
    x, y : PointCloud
        Equal-size clouds of dimension 1.
    p : float, optional
        Order, ``p >= 1``.

    Returns
    -------
    DistanceResult
        With the monotone matching as ``assignment``.

    Raises
    ------
    SizeMismatchError
        If the sizes differ.
    CloudValidationError
        If either cloud is not one-dimensional.

    Examples
    --------
    >>> wasserstein_1d([0.0, 2.0], [3.0, 1.0]).value
    1.0
    """
    cx, cy = coerce_pair(x, y)
    if cx.d != 1:
        msg = f"wasserstein_1d needs d = 1, got {cx.d}"
        raise CloudValidationError("dimension", msg)
    if p < 1:
        msg = f"p must be >= 1, got {p}"
        raise ValueError(msg)

    ox = np.argsort(cx.points[:, 0], kind="stable")
    oy = np.argsort(cy.points[:, 0], kind="stable")
    cost = np.abs(cx.points[ox, 0] - cy.points[oy, 0])
    if p != 1:
        cost = cost**p

    sigma = np.empty_like(ox)
    sigma[ox] = oy
    return DistanceResult(
        root(cost.mean(), p), "wasserstein_1d", assignment=Assignment(sigma)
    )


def exact_wasserstein(
    x: PointCloud | Any, y: PointCloud | Any, m: GroundMetric | None = None
) -> DistanceResult:
    """Exact Wasserstein distance via the linear sum assignment problem.

    ``value**p`` is the minimum over permutations of the mean of
    ``rho(x_i, y_sigma(i))**p``. The solver is the Jonker-Volgenant variant
    in :func:`scipy.optimize.linear_sum_assignment`, ``O(n**3)``.

    Parameters
    ----------
    x, y : PointCloud
        Equal-size clouds of equal dimension.
    m : GroundMetric, optional
        Ground metric and order. Defaults to Euclidean with ``p = 1``.

    Returns
    -------
    DistanceResult
        With the optimal ``assignment``.
    """
    m = GroundMetric() if m is None else m
    cx, cy = coerce_pair(x, y)
    c = cost_matrix(cx.points, cy.points, m)
    rows, cols = linear_sum_assignment(c)
    sigma = np.empty(cx.n, dtype=np.intp)
    sigma[rows] = cols
    return DistanceResult(
        root(c[rows, cols].mean(), m.p), "wasserstein", assignment=Assignment(sigma)
    )


def brute_force_wasserstein(
    x: PointCloud | Any, y: PointCloud | Any, m: GroundMetric | None = None
) -> DistanceResult:
    """Exact Wasserstein distance by enumerating every permutation.

    Ties are resolved to the lexicographically first permutation.

    Raises
    ------
    ValueError
        If ``n > 9``.
    """
    m = GroundMetric() if m is None else m
    cx, cy = coerce_pair(x, y)
    if cx.n > BRUTE_FORCE_MAX_N:
        msg = f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}, got {cx.n}"
        raise ValueError(msg)

    c = cost_matrix(cx.points, cy.points, m)
    perms = np.array(list(permutations(range(cx.n))), dtype=np.intp)
    totals = c[np.arange(cx.n), perms].sum(axis=1)
    best = int(np.argmin(totals))
    return DistanceResult(
        root(totals[best] / cx.n, m.p),
        "brute_force",
        iterations=len(perms),
        assignment=Assignment(perms[best]),
    )
