"""Small array helpers."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from functools import singledispatch
from typing import TYPE_CHECKING, Any

import numpy as np

if TYPE_CHECKING:
    from wabc.typing import BoolArray


@singledispatch
def within_bounds(
    value: Any,
    /,
    lower_bound: Any,
    upper_bound: Any,
    *,
    lower_inclusive: bool = True,
    upper_inclusive: bool = True,
) -> Any:
    """Check if a value is within the given bounds.

    Parameters
    ----------
    value : ndarray | float
        Value to check.
    lower_bound, upper_bound : ndarray | float
        Bounds to check against. ``None`` means unbounded.
    lower_inclusive, upper_inclusive : bool, optional
        Whether to include the bounds in the check, by default `True`.

    Returns
    -------
    ndarray | bool
        Whether the value is within the bounds.
    """
    raise NotImplementedError


@within_bounds.register(float)
@within_bounds.register(int)
@within_bounds.register(np.floating)
def _within_bounds_scalar(
    value: float,
    /,
    lower_bound: float | None,
    upper_bound: float | None,
    *,
    lower_inclusive: bool = True,
    upper_inclusive: bool = True,
) -> bool:
    return bool(
        _within_bounds_array(
            np.asarray(value),
            lower_bound,
            upper_bound,
            lower_inclusive=lower_inclusive,
            upper_inclusive=upper_inclusive,
        )
    )


@within_bounds.register(np.ndarray)
def _within_bounds_array(
    value: np.ndarray[Any, Any],
    /,
    lower_bound: Any,
    upper_bound: Any,
    *,
    lower_inclusive: bool = True,
    upper_inclusive: bool = True,
) -> BoolArray:
    inbounds = np.ones(value.shape, dtype=bool)
    if lower_bound is not None:
        inbounds &= (value >= lower_bound) if lower_inclusive else (value > lower_bound)
    if upper_bound is not None:
        inbounds &= (value <= upper_bound) if upper_inclusive else (value < upper_bound)
    return inbounds
