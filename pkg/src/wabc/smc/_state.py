"""Particles, populations and the threshold trace."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from dataclasses import KW_ONLY, dataclass, field
import math
from typing import TYPE_CHECKING, Any

import numpy as np

if TYPE_CHECKING:
    from collections.abc import Iterator

    from wabc._cloud import PointCloud
    from wabc.timeseries import Series
    from wabc.typing import FloatArray, IntArray


@dataclass(frozen=True, slots=True)
class Particle:
    """A parameter with its cached synthetic data set and distance.

    Parameters
    ----------
    theta : (d,) ndarray
    synthetic : PointCloud | Series
        The data set simulated at ``theta``.
    dist : float
        Distance to the observed data, ``>= 0``; ``inf`` when a frozen
        constraint is violated.
    primary : float | None, keyword-only
        Stage-one distance under a combined distance.
    """

    theta: FloatArray
    synthetic: PointCloud | Series
    dist: float
    _: KW_ONLY
    primary: float | None = None

    def __post_init__(self) -> None:
        if not self.dist >= 0:  # also rejects NaN
            msg = f"dist must be >= 0, got {self.dist}"
            raise ValueError(msg)
        theta = np.array(self.theta, dtype=float).reshape(-1)
        theta.flags.writeable = False
        object.__setattr__(self, "theta", theta)


@dataclass(frozen=True, slots=True)
class SmcState:
    """A population at one step of the sampler.

    Parameters
    ----------
    particles : tuple[Particle, ...]
    epsilon : float
        Current threshold; ``inf`` for the prior population.
    step : int
    simulations : int
        Cumulative model simulations.
    """

    particles: tuple[Particle, ...]
    epsilon: float = math.inf
    step: int = 0
    simulations: int = 0

    def __post_init__(self) -> None:
        if not self.particles:
            msg = "a population needs at least one particle"
            raise ValueError(msg)
        object.__setattr__(self, "particles", tuple(self.particles))

    def __len__(self) -> int:
        return len(self.particles)

    @property
    def thetas(self) -> FloatArray:
        """Parameters as an ``(N, d)`` array."""
        return np.stack([p.theta for p in self.particles])

    @property
    def dists(self) -> FloatArray:
        """Distances as an ``(N,)`` array."""
        return np.array([p.dist for p in self.particles])

    def unique_index(self) -> IntArray:
        """Index of the first particle of every distinct parameter."""
        _, idx = np.unique(self.thetas, axis=0, return_index=True)
        return np.sort(idx)

    @property
    def unique_count(self) -> int:
        """Number of distinct parameters."""
        return int(self.unique_index().size)


@dataclass(frozen=True, slots=True)
class TraceRow:
    """One step of the threshold trace."""

    step: int
    epsilon: float
    simulations: int
    unique: int
    wall_time: float


@dataclass(frozen=True)
class ThresholdTrace:
    """Thresholds of a run, ``inf`` at step 0 and strictly decreasing after.

    Examples
    --------
    >>> trace = ThresholdTrace().append(TraceRow(0, float("inf"), 4, 4, 0.0))
    >>> trace.append(TraceRow(1, 2.0, 10, 3, 0.1)).epsilons
    array([inf,  2.])
    """

    rows: tuple[TraceRow, ...] = field(default=())

    def append(self, row: TraceRow) -> ThresholdTrace:
        """Return a new trace ending with ``row``."""
        if self.rows and not row.epsilon < self.rows[-1].epsilon:
            msg = (
                f"thresholds must decrease strictly: {row.epsilon} after "
                f"{self.rows[-1].epsilon}"
            )
            raise ValueError(msg)
        return ThresholdTrace((*self.rows, row))

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[TraceRow]:
        return iter(self.rows)

    @property
    def epsilons(self) -> FloatArray:
        return np.array([r.epsilon for r in self.rows])

    @property
    def simulations(self) -> Any:
        return np.array([r.simulations for r in self.rows], dtype=np.int64)

    def as_table(self) -> tuple[tuple[str, ...], FloatArray]:
        """Column names and a float table, one row per step."""
        names = ("step", "epsilon", "simulations", "unique", "wall_time")
        table = np.array(
            [
                (r.step, r.epsilon, r.simulations, r.unique, r.wall_time)
                for r in self.rows
            ],
            dtype=float,
        ).reshape(-1, len(names))
        return names, table


@dataclass(frozen=True, slots=True)
class SmcResult:
    """Final population, threshold trace and optional per-step history."""

    state: SmcState
    trace: ThresholdTrace
    history: tuple[SmcState, ...] = ()
