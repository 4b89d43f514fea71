"""Generative model base class."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from abc import ABCMeta, abstractmethod
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, ClassVar, Literal, TypeAlias

import numpy as np

from wabc._cloud import PointCloud
from wabc.random import as_generator
from wabc.timeseries import EmbeddingSpec, Series

if TYPE_CHECKING:
    from wabc.params import ParamSpace
    from wabc.prior import IndependentPrior
    from wabc.random import RandomStream
    from wabc.typing import ArrayLike, FloatArray

    RngLike: TypeAlias = RandomStream | np.random.Generator | int | None

OutputKind: TypeAlias = Literal["cloud", "series"]


@dataclass(frozen=True)
class GenerativeModel(metaclass=ABCMeta):
    """A simulator with a prior and, optionally, a tractable likelihood.

    Subclasses set :attr:`name` and :attr:`output`, build their prior in
    :meth:`_build_prior` and draw raw observations in :meth:`_simulate`.
    """

    name: ClassVar[str]
    output: ClassVar[OutputKind] = "cloud"

    prior: IndependentPrior = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "prior", self._build_prior())

    @abstractmethod
    def _build_prior(self) -> IndependentPrior:
        """Construct the prior distribution."""

    @abstractmethod
    def _simulate(
        self, theta: FloatArray, n: int, rng: np.random.Generator, /
    ) -> FloatArray:
        """Draw ``n`` observations as an ``(n, d)`` or ``(n,)`` array."""

    @property
    def param_space(self) -> ParamSpace:
        """Names and supports of the parameter vector."""
        return self.prior.space

    @property
    def embedding_default(self) -> EmbeddingSpec:
        """Embedding applied to data sets unless the caller overrides it."""
        return EmbeddingSpec("none")

    def simulate(
        self, theta: ArrayLike, n: int, rng: RngLike = None
    ) -> PointCloud | Series:
        """Simulate a data set of exactly ``n`` observations.

        Parameters
        ----------
        theta : array-like
            Parameter vector in the declared coordinate order.
        n : int
            Number of observations, ``>= 1``.
        rng : RandomStream | Generator | int | None
            Source of randomness. A given stream always gives the same data.

        Raises
        ------
        ParameterSupportError
            If ``theta`` lies outside the prior support.
        """
        if n < 1:
            msg = f"n must be >= 1, got {n}"
            raise ValueError(msg)
        vec = self.param_space.validate(theta)
        raw = np.asarray(self._simulate(vec, int(n), as_generator(rng)), dtype=float)
        if self.output == "series":
            return Series(raw)
        return PointCloud(raw, names=self.observation_names(raw))

    def observation_names(self, raw: FloatArray) -> tuple[str, ...]:
        """Column names of simulated clouds."""
        d = 1 if raw.ndim == 1 else raw.shape[1]
        return tuple(f"y{i + 1}" for i in range(d))

    def prior_sample(self, rng: RngLike = None, size: int | None = None) -> FloatArray:
        """Draw one parameter vector, or ``size`` of them as rows."""
        return self.prior.sample(as_generator(rng), size)

    def prior_logdensity(self, theta: ArrayLike) -> float:
        """Prior log-density, ``-inf`` outside the support."""
        return self.prior.logpdf(theta)

    @property
    def has_loglik(self) -> bool:
        """Whether :meth:`loglik` is available."""
        return False

    def loglik(self, theta: ArrayLike, data: Any) -> float:
        """Log-likelihood of ``data`` at ``theta``.

        Raises
        ------
        NotImplementedError
            For models without a tractable likelihood.
        """
        msg = f"model {self.name!r} has no tractable likelihood"
        raise NotImplementedError(msg)
