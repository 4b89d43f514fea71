"""Univariate prior base class."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from abc import ABCMeta, abstractmethod
from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    import numpy as np

    from wabc.params import Support
    from wabc.typing import FloatArray


@dataclass(frozen=True)
class Prior(metaclass=ABCMeta):
    """Univariate prior on one parameter coordinate."""

    @property
    @abstractmethod
    def support(self) -> Support:
        """The support of the distribution."""

    @abstractmethod
    def logpdf(self, x: FloatArray | float, /) -> FloatArray:
        """Evaluate the log-density, ``-inf`` outside the support.

        Parameters
        ----------
        x : array | float, positional-only
            The points at which to evaluate.

        Returns
        -------
        array
        """
        ...

    @abstractmethod
    def sample(
        self, rng: np.random.Generator, size: int | None = None, /
    ) -> FloatArray:
        """Draw from the prior.

        Parameters
        ----------
        rng : Generator, positional-only
            Source of randomness.
        size : int | None, optional positional-only
            Number of draws. `None` draws a single value.

        Returns
        -------
        array
        """
        ...

    @property
    @abstractmethod
    def mean(self) -> float:
        """Analytic mean."""

    @property
    @abstractmethod
    def var(self) -> float:
        """Analytic variance."""
