"""Type aliases."""

from __future__ import annotations

__all__ = (
    "FloatArray",
    "IntArray",
    "BoolArray",
    "BoundsT",
    "StreamId",
    "ArrayLike",
)

from typing import TypeAlias

import numpy as np
import numpy.typing as npt

FloatArray: TypeAlias = npt.NDArray[np.float64]
IntArray: TypeAlias = npt.NDArray[np.intp]
BoolArray: TypeAlias = npt.NDArray[np.bool_]
ArrayLike: TypeAlias = npt.ArrayLike

BoundsT: TypeAlias = tuple[float, float]

StreamId: TypeAlias = tuple[int, ...]
