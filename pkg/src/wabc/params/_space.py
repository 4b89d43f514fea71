"""Parameter space."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from wabc.params._bounds import Support, Unbounded

if TYPE_CHECKING:
    from wabc.typing import ArrayLike, FloatArray


class ParameterSupportError(ValueError):
    """Raised when a parameter vector lies outside its declared support."""

    def __init__(self, name: str, value: float, support: Support) -> None:
        self.name = name
        self.value = value
        super().__init__(
            f"parameter {name!r}={value!r} outside [{support.lower}, {support.upper}]"
        )


@dataclass(frozen=True, slots=True)
class ParamSpace:
    """Names and supports of a model's parameter vector.

    Parameters
    ----------
    names : tuple[str, ...]
        Coordinate names, in declared order.
    supports : tuple[Support, ...]
        One support per coordinate. Empty means every coordinate is
        unbounded.

    Examples
    --------
    >>> from wabc.params import Interval
    >>> space = ParamSpace(("a", "b"), (Interval(0, 1), Unbounded()))
    >>> space.dim
    2
    >>> space.contains([0.5, -3.0])
    True
    """

    names: tuple[str, ...]
    supports: tuple[Support, ...] = ()

    def __post_init__(self) -> None:
        if not self.names:
            msg = "a parameter space needs at least one coordinate"
            raise ValueError(msg)
        if len(set(self.names)) != len(self.names):
            msg = f"duplicate parameter names in {self.names}"
            raise ValueError(msg)
        if not self.supports:
            supports = tuple(Unbounded() for _ in self.names)
            object.__setattr__(self, "supports", supports)
        elif len(self.supports) != len(self.names):
            msg = (
                f"Number of supports ({len(self.supports)}) does not match number "
                f"of names ({len(self.names)})."
            )
            raise ValueError(msg)

    @property
    def dim(self) -> int:
        """Dimension of the parameter vector."""
        return len(self.names)

    @property
    def lower(self) -> FloatArray:
        """Lower ends of the supports."""
        return np.array([s.lower for s in self.supports])

    @property
    def upper(self) -> FloatArray:
        """Upper ends of the supports."""
        return np.array([s.upper for s in self.supports])

    def as_vector(self, theta: ArrayLike, /) -> FloatArray:
        """Coerce ``theta`` to a float vector of length :attr:`dim`.

        Raises
        ------
        ValueError
            If the arity is wrong or an entry is not finite.
        """
        vec = np.asarray(theta, dtype=float).reshape(-1)
        if vec.shape[0] != self.dim:
            msg = f"expected {self.dim} parameters {self.names}, got {vec.shape[0]}"
            raise ValueError(msg)
        if not np.all(np.isfinite(vec)):
            msg = f"parameters must be finite, got {vec}"
            raise ValueError(msg)
        return vec

    def contains(self, theta: ArrayLike, /) -> bool:
        """Whether every coordinate of ``theta`` lies in its support."""
        vec = np.asarray(theta, dtype=float).reshape(-1)
        return vec.shape[0] == self.dim and all(
            bool(s.contains(float(v))) for s, v in zip(self.supports, vec, strict=True)
        )

    def validate(self, theta: ArrayLike, /) -> FloatArray:
        """Return ``theta`` as a vector, raising if it leaves the support.

        Raises
        ------
        ParameterSupportError
            Naming the first offending coordinate.
        """
        vec = self.as_vector(theta)
        for name, s, v in zip(self.names, self.supports, vec, strict=True):
            if not s.contains(float(v)):
                raise ParameterSupportError(name, float(v), s)
        return vec
