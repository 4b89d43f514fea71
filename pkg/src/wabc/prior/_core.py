"""Product priors over a parameter vector."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from dataclasses import dataclass, field
import math
from typing import TYPE_CHECKING

import numpy as np

from wabc.params import ParamSpace

if TYPE_CHECKING:
    from wabc.prior._base import Prior
    from wabc.typing import ArrayLike, FloatArray


@dataclass(frozen=True)
class IndependentPrior:
    """Product of independent univariate priors, one per coordinate.

    Parameters
    ----------
    names : tuple[str, ...]
        Coordinate names.
    components : tuple[Prior, ...]
        One prior per name.

    Examples
    --------
    >>> from wabc.prior import Normal, Uniform
    >>> prior = IndependentPrior(("mu", "s"), (Normal(0, 1), Uniform(0, 2)))
    >>> prior.logpdf([0.0, 3.0])
    -inf
    """

    names: tuple[str, ...]
    components: tuple[Prior, ...]
    space: ParamSpace = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.names) != len(self.components):
            msg = (
                f"Number of names ({len(self.names)}) does not match number of "
                f"components ({len(self.components)})."
            )
            raise ValueError(msg)
        space = ParamSpace(self.names, tuple(c.support for c in self.components))
        object.__setattr__(self, "space", space)

    @property
    def dim(self) -> int:
        """Number of coordinates."""
        return len(self.components)

    def logpdf(self, theta: ArrayLike, /) -> float:
        """Joint log-density, ``-inf`` outside the support."""
        vec = np.asarray(theta, dtype=float).reshape(-1)
        if vec.shape[0] != self.dim or not np.all(np.isfinite(vec)):
            return -math.inf
        return float(
            sum(float(c.logpdf(v)) for c, v in zip(self.components, vec, strict=True))
        )

    def sample(
        self, rng: np.random.Generator, size: int | None = None, /
    ) -> FloatArray:
        """Draw one vector (``size=None``) or a ``(size, dim)`` matrix."""
        draws = [np.asarray(c.sample(rng, size), dtype=float) for c in self.components]
        return np.stack(draws, axis=-1)

    @property
    def mean(self) -> FloatArray:
        """Analytic mean vector."""
        return np.array([c.mean for c in self.components])

    @property
    def cov(self) -> FloatArray:
        """Analytic (diagonal) covariance matrix."""
        return np.diag([c.var for c in self.components])
