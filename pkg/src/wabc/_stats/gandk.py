"""g-and-k distribution functions.

The distribution is defined by its quantile function in terms of a standard
Normal quantile ``z``::

    Q(z) = a + b * (1 + c * tanh(g z / 2)) * (1 + z**2)**k * z

with ``c = 0.8``. ``tanh(g z / 2)`` equals ``(1 - exp(-g z)) / (1 + exp(-g z))``.
"""

from __future__ import annotations

__all__ = ("quantile_z", "dquantile_z", "invert", "logpdf", "RootFindingError")

import logging
from typing import TYPE_CHECKING, Final

import numpy as np
from scipy.special import ndtri

from wabc._stats.norm import logsqrt2pi

if TYPE_CHECKING:
    from wabc.typing import FloatArray

logger = logging.getLogger(__name__)

C: Final = 0.8
R_EPS: Final = 1e-12
Y_TOL: Final = 1e-10
MAX_BISECT: Final = 200


class RootFindingError(RuntimeError):
    """Raised when the quantile function cannot be inverted."""


def quantile_z(
    z: FloatArray | float, a: float, b: float, g: float, k: float
) -> FloatArray:
    """Quantile function evaluated at the standard-Normal quantile ``z``."""
    z = np.asarray(z, dtype=float)
    return a + b * (1 + C * np.tanh(g * z / 2)) * (1 + z**2) ** k * z


def dquantile_z(
    z: FloatArray | float, a: float, b: float, g: float, k: float
) -> FloatArray:
    """Derivative of :func:`quantile_z` with respect to ``z``."""
    z = np.asarray(z, dtype=float)
    t = np.tanh(g * z / 2)
    z2 = 1 + z**2
    skew = C * (g / 2) * (1 - t**2) * z * z2**k
    body = (1 + C * t) * z2 ** (k - 1) * (1 + (1 + 2 * k) * z**2)
    return b * (skew + body)


def invert(y: FloatArray, a: float, b: float, g: float, k: float) -> FloatArray:
    """Solve ``quantile_z(z) = y`` for ``z`` by bisection.

    The search is on ``z`` in ``[ndtri(1e-12), ndtri(1 - 1e-12)]``; ``y``
    outside the bracket maps to ``-inf`` or ``inf``.

    Raises
    ------
    RootFindingError
        If the bracket does not converge to ``|Q(z) - y| <= 1e-10`` or to
        float resolution in ``z``.
    """
    y = np.asarray(y, dtype=float)
    lo = np.full(y.shape, ndtri(R_EPS))
    hi = np.full(y.shape, ndtri(1 - R_EPS))
    below = y < quantile_z(lo, a, b, g, k)
    above = y > quantile_z(hi, a, b, g, k)

    mid = (lo + hi) / 2
    done = below | above
    for _ in range(MAX_BISECT):
        q = quantile_z(mid, a, b, g, k)
        resolved = hi - lo <= 4 * np.spacing(np.abs(mid) + 1)
        done |= (np.abs(q - y) <= Y_TOL) | resolved
        if done.all():
            break
        go_up = (q < y) & ~done
        go_down = (q > y) & ~done
        lo = np.where(go_up, mid, lo)
        hi = np.where(go_down, mid, hi)
        mid = np.where(done, mid, (lo + hi) / 2)
    else:
        msg = f"bisection did not converge for {int((~done).sum())} values"
        raise RootFindingError(msg)

    return np.where(below, -np.inf, np.where(above, np.inf, mid))


def logpdf(
    y: FloatArray | float, a: float, b: float, g: float, k: float
) -> FloatArray:
    """Log-density of the g-and-k distribution.

    Computed as ``log phi(z) - log Q'(z)`` at the numerically inverted
    ``z``. Values beyond the ``1e-12`` tail quantiles get ``-inf``.

    Raises
    ------
    RootFindingError
        If the quantile function is not increasing at a solution, which
        happens outside the valid parameter region (``b <= 0`` or
        ``k < -0.5``).

    Examples
    --------
    >>> import math
    >>> float(logpdf(0.0, 0.0, 1.0, 0.0, 0.0)) == -0.5 * math.log(2 * math.pi)
    True
    """
    y = np.asarray(y, dtype=float)
    z = invert(y, a, b, g, k)
    finite = np.isfinite(z)
    zf = np.where(finite, z, 0.0)
    dq = dquantile_z(zf, a, b, g, k)
    if np.any(dq[finite] <= 0):
        msg = f"quantile function is not increasing at (a, b, g, k)={(a, b, g, k)}"
        raise RootFindingError(msg)
    if not finite.all():
        logger.debug("%d values beyond the tail quantiles", (~finite).sum())
    out = -0.5 * zf**2 - logsqrt2pi - np.log(np.where(finite, dq, 1.0))
    return np.where(finite, out, -np.inf)
