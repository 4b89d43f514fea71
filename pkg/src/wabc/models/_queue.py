"""M/G/1 queue observed through interdeparture times."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from dataclasses import dataclass
import logging
from typing import TYPE_CHECKING, Any

import numpy as np

from wabc._cloud import as_cloud
from wabc.models._base import GenerativeModel
from wabc.models._registry import register_model
from wabc.prior import IndependentPrior, Uniform
from wabc.random import as_generator
from wabc.timeseries import Series

if TYPE_CHECKING:
    from wabc.models._base import RngLike
    from wabc.typing import ArrayLike, FloatArray

logger = logging.getLogger(__name__)


def mg1_recursion(u: ArrayLike, w: ArrayLike) -> Series:
    """Interdeparture times from service and interarrival times.

    ``y_i = u_i + max(0, sum_{j <= i} w_j - sum_{j < i} y_j)``. Departure
    times are a running maximum, so no Python loop is needed.

    Raises
    ------
    ValueError
        If the lengths differ or an input is negative.

    Examples
    --------
    >>> mg1_recursion([1.0, 1.0], [0.5, 0.1]).flat
    array([1.5, 1. ])
    """
    uu = np.asarray(u, dtype=float).reshape(-1)
    ww = np.asarray(w, dtype=float).reshape(-1)
    if uu.shape != ww.shape:
        msg = f"service and interarrival lengths differ: {uu.size} != {ww.size}"
        raise ValueError(msg)
    if np.any(uu < 0) or np.any(ww < 0):
        msg = "service and interarrival times must be non-negative"
        raise ValueError(msg)

    arrivals = np.cumsum(ww)
    served = np.cumsum(uu)
    departures = served + np.maximum.accumulate(arrivals - (served - uu))
    previous = np.concatenate([[0.0], departures[:-1]])
    return Series(uu + np.maximum(0.0, arrivals - previous))


def mg1_simulate(theta: ArrayLike, n: int, rng: RngLike = None) -> Series:
    """Simulate ``n`` interdeparture times.

    ``theta = (theta1, theta2 - theta1, theta3)``: service times are uniform
    on ``[theta1, theta2]`` and interarrival times exponential with rate
    ``theta3``.

    Raises
    ------
    ValueError
        Unless ``theta1 >= 0``, ``theta2 > theta1`` and ``theta3 > 0``.
    """
    t1, width, rate = (float(v) for v in np.asarray(theta, dtype=float).reshape(3))
    if t1 < 0 or width <= 0 or rate <= 0:
        msg = f"need theta1 >= 0, theta2 > theta1, theta3 > 0; got {(t1, width, rate)}"
        raise ValueError(msg)
    gen = as_generator(rng)
    w = gen.exponential(1 / rate, n)
    u = gen.uniform(t1, t1 + width, n)
    return mg1_recursion(u, w)


@register_model
@dataclass(frozen=True)
class MG1Queue(GenerativeModel):
    """M/G/1 queue with a uniform prior on ``[0, 10]^2 x [0, 1/3]``.

    Parameters
    ----------
    theta1_upper : float | None
        Upper end of the prior on ``theta1``. Setting it to the smallest
        observation encodes the constraint ``theta1 <= min y``; see
        :meth:`constrained`.
    """

    name = "mg1"
    output = "series"

    theta1_upper: float | None = None

    def __post_init__(self) -> None:
        if self.theta1_upper is not None and not self.theta1_upper > 0:
            msg = f"theta1_upper must be positive, got {self.theta1_upper}"
            raise ValueError(msg)
        super().__post_init__()

    @classmethod
    def constrained(cls, data: Any) -> MG1Queue:
        """The model whose prior on ``theta1`` stops at ``min y``."""
        upper = float(as_cloud(data).points.min())
        logger.info("constraining theta1 to [0, %g]", upper)
        return cls(theta1_upper=upper)

    def _build_prior(self) -> IndependentPrior:
        hi = 10.0 if self.theta1_upper is None else self.theta1_upper
        return IndependentPrior(
            ("theta1", "theta2_minus_theta1", "theta3"),
            (Uniform(0, hi), Uniform(0, 10), Uniform(0, 1 / 3)),
        )

    def _simulate(
        self, theta: FloatArray, n: int, rng: np.random.Generator, /
    ) -> FloatArray:
        return mg1_simulate(theta, n, rng).values
