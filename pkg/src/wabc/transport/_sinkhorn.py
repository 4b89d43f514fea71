"""Entropically regularized transport, solved with POT."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

import logging
from typing import TYPE_CHECKING, Any

import numpy as np
import ot

from wabc.metric import GroundMetric, cost_matrix
from wabc.setup_package import SINKHORN_MAX_ITER, SINKHORN_TOL, SINKHORN_ZETA_FACTOR
from wabc.transport._base import (
    DistanceResult,
    SinkhornConvergenceError,
    TransportPlan,
    coerce_pair,
)

if TYPE_CHECKING:
    from wabc._cloud import PointCloud
    from wabc.typing import FloatArray

logger = logging.getLogger(__name__)


def default_zeta(c: FloatArray) -> float:
    """``0.05`` times the median entry of the cost matrix ``c``.

    Falls back to the mean when the median is zero.
    """
    scale = float(np.median(c))
    if scale <= 0:
        scale = float(c.mean())
    return SINKHORN_ZETA_FACTOR * scale


def sinkhorn_divergence(  # noqa: PLR0913
    x: PointCloud | Any,
    y: PointCloud | Any,
    m: GroundMetric | None = None,
    zeta: float | None = None,
    tol: float = SINKHORN_TOL,
    max_iter: int = SINKHORN_MAX_ITER,
) -> tuple[DistanceResult, TransportPlan]:
    """Transport cost of the entropically regularized optimal coupling.

    Returns :math:`\\sum_{ij} \\rho(x_i, y_j)^p \\gamma_{ij}` where
    :math:`\\gamma` solves the transport problem penalized by ``zeta`` times
    the negative entropy. The log-domain solver of :func:`ot.sinkhorn` runs
    until the column marginals are within ``tol`` of ``1/m``; the row marginals
    are exact after each update. The plan is then checked against both
    marginals.

    Unlike the other methods the value is a transport cost, on the scale of
    the exact Wasserstein distance raised to the power ``p``. The clouds may
    differ in size.

    Parameters
    ----------
    x : (n, d) PointCloud
    y : (m, d) PointCloud
    m : GroundMetric, optional
        Defaults to Euclidean with ``p = 1``.
    zeta : float, optional
        Regularization, ``> 0``. Defaults to ``0.05`` times the median cost.
    tol : float, optional
        Allowed marginal violation.
    max_iter : int, optional
        Maximum number of (f, g) update pairs.

    Returns
    -------
    DistanceResult
    TransportPlan

    Raises
    ------
    ValueError
        If ``zeta <= 0``.
    SinkhornConvergenceError
        If the marginals are not met within ``max_iter`` iterations.
    """
    m = GroundMetric() if m is None else m
    cx, cy = coerce_pair(x, y, same_size=False)
    if zeta is not None and not zeta > 0:
        msg = f"zeta must be positive, got {zeta}"
        raise ValueError(msg)

    c = cost_matrix(cx.points, cy.points, m)
    n, k = c.shape
    if n == 1 or k == 1 or not c.any():
        # the independent coupling is optimal: unique or zero-cost
        gamma = np.full((n, k), 1 / (n * k))
        result = DistanceResult(float((c * gamma).sum()), "sinkhorn")
        return result, TransportPlan(gamma)

    zeta = default_zeta(c) if zeta is None else float(zeta)
    a, b = ot.unif(n), ot.unif(k)
    gamma, log = ot.sinkhorn(
        a,
        b,
        c,
        zeta,
        method="sinkhorn_log",
        numItermax=max_iter,
        stopThr=tol,
        log=True,
        warn=False,
    )
    plan = TransportPlan(gamma)
    violation = plan.marginal_violation()
    if violation > tol:
        raise SinkhornConvergenceError(violation, max_iter)

    it = int(log["niter"]) + 1
    logger.debug("sinkhorn converged in %d iterations (zeta=%g)", it, zeta)
    return DistanceResult(float((c * gamma).sum()), "sinkhorn", iterations=it), plan
