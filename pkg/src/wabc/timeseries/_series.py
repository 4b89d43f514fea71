"""Time series."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import numpy as np

from wabc._cloud import CloudValidationError, validate_cloud

if TYPE_CHECKING:
    from collections.abc import Callable

    from wabc.typing import FloatArray


@dataclass(frozen=True, slots=True)
class Series:
    """A length-``T`` series of ``d_y``-dimensional observations.

    Time indices are implicit, ``1, ..., T``.

    Parameters
    ----------
    values : (T,) | (T, d_y) array-like
        Observations in time order. A vector is read as ``d_y = 1``.

    Raises
    ------
    CloudValidationError
        If the series is empty or holds non-finite values.
    """

    values: FloatArray

    def __post_init__(self) -> None:
        try:
            arr = validate_cloud(self.values).copy()
        except CloudValidationError as e:
            msg = f"invalid series: {e}"
            raise CloudValidationError(e.reason, msg) from e
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def T(self) -> int:  # noqa: N802
        """Length of the series."""
        return int(self.values.shape[0])

    @property
    def dy(self) -> int:
        """Dimension of each observation."""
        return int(self.values.shape[1])

    @property
    def times(self) -> FloatArray:
        """Time indices ``1, ..., T``."""
        return np.arange(1, self.T + 1, dtype=float)

    def __len__(self) -> int:
        return self.T

    @property
    def flat(self) -> FloatArray:
        """The values as a vector; only for ``d_y = 1``."""
        if self.dy != 1:
            msg = f"series has d_y={self.dy}, expected 1"
            raise ValueError(msg)
        return self.values[:, 0]

    def to_format(self, fmt: str, /, **kwargs: Any) -> Any:
        """Convert the series to another registered format."""
        return SERIES_TO_FORMAT_REGISTRY[fmt](self, **kwargs)

    @classmethod
    def from_format(cls, data: Any, /, fmt: str, **kwargs: Any) -> Series:
        """Read a series from another registered format."""
        return SERIES_FROM_FORMAT_REGISTRY[fmt](data, **kwargs)


SERIES_FROM_FORMAT_REGISTRY: dict[str, Callable[..., Series]] = {}
SERIES_TO_FORMAT_REGISTRY: dict[str, Callable[..., Any]] = {}
