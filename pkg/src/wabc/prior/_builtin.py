"""Built-in univariate priors."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from dataclasses import dataclass
import math
from typing import TYPE_CHECKING

import numpy as np

from wabc._stats import exponential, norm, uniform
from wabc.params import Interval, Support, Unbounded
from wabc.prior._base import Prior

if TYPE_CHECKING:
    from wabc.typing import FloatArray


@dataclass(frozen=True)
class Uniform(Prior):
    """Uniform prior on ``[lo, hi]``."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            msg = "uniform bounds must be finite"
            raise ValueError(msg)
        if self.lo >= self.hi:
            msg = f"lower must be less than upper, got [{self.lo}, {self.hi}]"
            raise ValueError(msg)

    @property
    def support(self) -> Support:
        return Interval(self.lo, self.hi)

    def logpdf(self, x: FloatArray | float, /) -> FloatArray:
        return uniform.logpdf(x, self.lo, self.hi)

    def sample(
        self, rng: np.random.Generator, size: int | None = None, /
    ) -> FloatArray:
        return np.asarray(rng.uniform(self.lo, self.hi, size))

    @property
    def mean(self) -> float:
        return (self.lo + self.hi) / 2

    @property
    def var(self) -> float:
        return (self.hi - self.lo) ** 2 / 12


@dataclass(frozen=True)
class Normal(Prior):
    """Gaussian prior with mean ``loc`` and standard deviation ``scale``."""

    loc: float = 0.0
    scale: float = 1.0

    def __post_init__(self) -> None:
        if not self.scale > 0:
            msg = f"scale must be positive, got {self.scale}"
            raise ValueError(msg)

    @property
    def support(self) -> Support:
        return Unbounded()

    def logpdf(self, x: FloatArray | float, /) -> FloatArray:
        return norm.logpdf(x, self.loc, self.scale)

    def sample(
        self, rng: np.random.Generator, size: int | None = None, /
    ) -> FloatArray:
        return np.asarray(rng.normal(self.loc, self.scale, size))

    @property
    def mean(self) -> float:
        return self.loc

    @property
    def var(self) -> float:
        return self.scale**2


@dataclass(frozen=True)
class Exponential(Prior):
    """Exponential prior with the given ``rate``."""

    rate: float = 1.0

    def __post_init__(self) -> None:
        if not self.rate > 0:
            msg = f"rate must be positive, got {self.rate}"
            raise ValueError(msg)

    @property
    def support(self) -> Support:
        return Interval(0.0, math.inf)

    def logpdf(self, x: FloatArray | float, /) -> FloatArray:
        return exponential.logpdf(x, self.rate)

    def sample(
        self, rng: np.random.Generator, size: int | None = None, /
    ) -> FloatArray:
        return np.asarray(rng.exponential(1 / self.rate, size))

    @property
    def mean(self) -> float:
        return 1 / self.rate

    @property
    def var(self) -> float:
        return 1 / self.rate**2
