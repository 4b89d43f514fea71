"""Toggle switch model of two mutually repressing genes."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Final

import numpy as np

from wabc._cloud import PointCloud
from wabc._stats.trunc_norm import sample_above
from wabc.models._base import GenerativeModel
from wabc.models._registry import register_model
from wabc.prior import IndependentPrior, Uniform
from wabc.random import as_generator

if TYPE_CHECKING:
    from wabc.models._base import RngLike
    from wabc.typing import ArrayLike, FloatArray

DEFAULT_HORIZON: Final = 300
INITIAL_LEVEL: Final = 10.0
DECAY: Final = 0.03
INNOVATION_SCALE: Final = 0.5
LEVEL_FLOOR: Final = 1e-8
REDRAW_ROUNDS: Final = 100

logger = logging.getLogger(__name__)


def _redraw_zero_levels(
    u: FloatArray, loc: FloatArray, scale: float, gen: np.random.Generator
) -> FloatArray:
    """Redraw the last innovation of cells that ended at zero.

    Cells still at zero after ``REDRAW_ROUNDS`` redraws, or with no
    innovation noise, are clamped to ``LEVEL_FLOOR``.
    """
    zero = np.flatnonzero(u <= 0)
    for _ in range(REDRAW_ROUNDS):
        if zero.size == 0 or scale <= 0:
            break
        u[zero] = loc[zero] + scale * gen.standard_normal(zero.size)
        zero = zero[u[zero] <= 0]
    if zero.size:
        logger.debug("clamping %d zero levels to %g", zero.size, LEVEL_FLOOR)
        u[zero] = LEVEL_FLOOR
    return u


def toggleswitch_simulate(
    theta: ArrayLike,
    n: int,
    rng: RngLike = None,
    T: int = DEFAULT_HORIZON,  # noqa: N803
    *,
    innovation_scale: float = INNOVATION_SCALE,
) -> PointCloud:
    """Terminal expression of ``n`` independent cells, observed with noise.

    Each cell starts at ``(u, v) = (10, 10)`` and is iterated ``T`` times::

        u' = u + a1 / (1 + v**b1) - (1 + 0.03 u) + s * xi1
        v' = v + a2 / (1 + u**b2) - (1 + 0.03 v) + s * xi2

    where ``s = innovation_scale`` and the Normal innovations are truncated so
    the levels stay non-negative. The observation is
    ``N(mu + u_T, mu**2 sigma**2 / u_T**(2 gamma))`` truncated to ``[0, inf)``.
    When ``gamma > 0`` a cell ending at ``u_T = 0`` has its last innovation
    redrawn, and is clamped to a small positive level if that keeps failing.

    Parameters
    ----------
    theta : (7,) array-like
        ``(a1, a2, b1, b2, mu, sigma, gamma)``.
    n : int
        Number of cells.
    rng : RandomStream | Generator | int | None
    T : int
        Number of time steps, ``>= 1``.
    innovation_scale : float, keyword-only
        Innovation standard deviation.
    """
    if T < 1:
        msg = f"T must be >= 1, got {T}"
        raise ValueError(msg)
    a1, a2, b1, b2, mu, sigma, gamma = (
        float(v) for v in np.asarray(theta, dtype=float).reshape(7)
    )
    gen = as_generator(rng)
    u = np.full(n, INITIAL_LEVEL)
    v = np.full(n, INITIAL_LEVEL)
    for _ in range(T):
        du = u + a1 / (1 + v**b1) - (1 + DECAY * u)
        dv = v + a2 / (1 + u**b2) - (1 + DECAY * v)
        u = sample_above(du, innovation_scale, 0.0, gen)
        v = sample_above(dv, innovation_scale, 0.0, gen)

    if gamma > 0:
        u = _redraw_zero_levels(u, du, innovation_scale, gen)
    scale = mu * sigma / u**gamma
    return PointCloud(sample_above(mu + u, scale, 0.0, gen))


@register_model
@dataclass(frozen=True)
class ToggleSwitch(GenerativeModel):
    """Toggle switch with uniform priors on the boxes of the original study.

    Parameters
    ----------
    T : int
        Number of time steps per cell.
    innovation_scale : float
        Standard deviation of the state innovations.
    """

    name = "toggleswitch"

    T: int = DEFAULT_HORIZON
    innovation_scale: float = INNOVATION_SCALE

    def __post_init__(self) -> None:
        if self.T < 1:
            msg = f"T must be >= 1, got {self.T}"
            raise ValueError(msg)
        if self.innovation_scale < 0:
            msg = f"innovation_scale must be >= 0, got {self.innovation_scale}"
            raise ValueError(msg)
        super().__post_init__()

    def _build_prior(self) -> IndependentPrior:
        names = ("alpha1", "alpha2", "beta1", "beta2", "mu", "sigma", "gamma")
        boxes = ((0, 50), (0, 50), (0, 5), (0, 5), (250, 450), (0, 0.5), (0, 0.4))
        return IndependentPrior(names, tuple(Uniform(lo, hi) for lo, hi in boxes))

    def _simulate(
        self, theta: FloatArray, n: int, rng: np.random.Generator, /
    ) -> FloatArray:
        return toggleswitch_simulate(
            theta, n, rng, self.T, innovation_scale=self.innovation_scale
        ).points
