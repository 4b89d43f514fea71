"""Per-coordinate supports."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from abc import ABCMeta, abstractmethod
from dataclasses import dataclass
import math
from typing import TYPE_CHECKING, Any

import numpy as np

from wabc.utils import within_bounds

if TYPE_CHECKING:
    from wabc.typing import BoolArray


@dataclass(frozen=True, slots=True)
class Support(metaclass=ABCMeta):
    """Support of a single parameter coordinate."""

    @property
    @abstractmethod
    def lower(self) -> float:
        """Lower end (may be ``-inf``)."""

    @property
    @abstractmethod
    def upper(self) -> float:
        """Upper end (may be ``inf``)."""

    def contains(self, value: Any, /) -> BoolArray | bool:
        """Whether ``value`` lies in the support."""
        return within_bounds(value, self.lower, self.upper)

    def clip(self, value: Any, /) -> Any:
        """Project ``value`` onto the support."""
        return np.clip(value, self.lower, self.upper)


@dataclass(frozen=True, slots=True)
class Unbounded(Support):
    """The whole real line."""

    @property
    def lower(self) -> float:
        return -math.inf

    @property
    def upper(self) -> float:
        return math.inf

    def contains(self, value: Any, /) -> BoolArray | bool:
        return within_bounds(value, None, None)


@dataclass(frozen=True, slots=True)
class Interval(Support):
    """Closed interval ``[lo, hi]`` with ``lo < hi``.

    Either end may be infinite, making a half line.
    """

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if math.isnan(self.lo) or math.isnan(self.hi):
            msg = "interval ends must not be NaN"
            raise ValueError(msg)
        if self.lo >= self.hi:
            msg = f"lower must be less than upper, got [{self.lo}, {self.hi}]"
            raise ValueError(msg)

    @property
    def lower(self) -> float:
        return self.lo

    @property
    def upper(self) -> float:
        return self.hi
