"""Empirical measures."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from dataclasses import KW_ONLY, dataclass
from textwrap import indent
from typing import TYPE_CHECKING, Any, Final, Literal, TypeAlias

import numpy as np

if TYPE_CHECKING:
    from collections.abc import Callable

    from wabc.typing import ArrayLike, FloatArray, IntArray


CloudReason: TypeAlias = Literal["empty", "ragged", "non-finite", "dimension"]


class CloudValidationError(ValueError):
    """Raised when an array does not describe a valid point cloud.

    Parameters
    ----------
    reason : {'empty', 'ragged', 'non-finite', 'dimension'}
        Which invariant is violated.
    detail : str, optional
        Extra context appended to the message.
    """

    def __init__(self, reason: CloudReason, detail: str = "") -> None:
        self.reason: CloudReason = reason
        msg = f"invalid point cloud ({reason})"
        super().__init__(msg + (f": {detail}" if detail else ""))


def _as_matrix(points: ArrayLike, /) -> FloatArray:
    """Coerce ``points`` to a 2D float64 array, raising on ragged input."""
    if isinstance(points, np.ndarray):
        arr = points
    else:
        try:
            arr = np.asarray(points, dtype=float)
        except ValueError as e:  # inhomogeneous nested sequences
            raise CloudValidationError("ragged", str(e)) from e
    if arr.dtype == object:
        raise CloudValidationError("ragged")
    arr = np.asarray(arr, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:  # noqa: PLR2004
        raise CloudValidationError("dimension", f"expected 2 axes, got {arr.ndim}")
    return arr


def validate_cloud(points: ArrayLike, /) -> FloatArray:
    """Check the point-cloud invariants, returning the coerced matrix.

    The first violated invariant is reported.

    Parameters
    ----------
    points : array-like
        ``(n, d)`` matrix, or a length-``n`` vector for ``d = 1``.

    Returns
    -------
    ndarray
        A C-contiguous ``(n, d)`` float64 array.

    Raises
    ------
    CloudValidationError
        With ``reason`` one of ``empty``, ``ragged``, ``non-finite`` or
        ``dimension``.

    Examples
    --------
    >>> validate_cloud([[0.0, 1.0], [2.0, 3.0], [4.0, 5.0]]).shape
    (3, 2)
    >>> validate_cloud([[0.0, float("nan")]])
    Traceback (most recent call last):
    ...
    wabc._cloud.CloudValidationError: invalid point cloud (non-finite)
    """
    arr = _as_matrix(points)
    if arr.shape[0] == 0:
        raise CloudValidationError("empty")
    if arr.shape[1] == 0:
        raise CloudValidationError("dimension", "points have no coordinates")
    if not np.all(np.isfinite(arr)):
        raise CloudValidationError("non-finite")
    return np.ascontiguousarray(arr)


@dataclass(frozen=True, slots=True)
class PointCloud:
    """Uniformly weighted empirical measure on ``d``-dimensional points.

    Parameters
    ----------
    points : (n, d) array-like
        Support points, one per row. Weights are implicitly ``1/n``.
    names : tuple[str, ...], optional keyword-only
        Column names. Defaults to ``x1, ..., xd``.

    Raises
    ------
    CloudValidationError
        If ``points`` is empty, ragged, or not finite.
    ValueError
        If the number of names does not match the number of columns.
    """

    points: FloatArray
    _: KW_ONLY
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        arr = validate_cloud(self.points).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "points", arr)

        if not self.names:
            object.__setattr__(
                self, "names", tuple(f"x{i + 1}" for i in range(arr.shape[1]))
            )
        elif len(self.names) != arr.shape[1]:
            msg = (
                f"Number of names ({len(self.names)}) does not match number of "
                f"columns ({arr.shape[1]}) in the cloud."
            )
            raise ValueError(msg)

    @property
    def n(self) -> int:
        """Number of support points."""
        return int(self.points.shape[0])

    @property
    def d(self) -> int:
        """Dimension of each point."""
        return int(self.points.shape[1])

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        prefix: Final = "\t"
        return (
            "\n\t".join(
                (
                    f"{type(self).__name__}(",
                    f"names: {self.names!r}",
                    f"points: {indent(repr(self.points), prefix=prefix)[1:]}",
                )
            )
            + "\n)"
        )

    def take(self, index: IntArray | slice, /) -> PointCloud:
        """Return the cloud restricted to the given rows."""
        return type(self)(self.points[index], names=self.names)

    # =========================================================================
    # I/O

    def to_format(self, fmt: str, /, **kwargs: Any) -> Any:
        """Convert the cloud to another format.

        Parameters
        ----------
        fmt : str
            Registered format name, e.g. ``"csv"`` or ``"numpy.structured"``.
        **kwargs : Any
            Passed to the writer.
        """
        return TO_FORMAT_REGISTRY[fmt](self, **kwargs)

    @classmethod
    def from_format(cls, data: Any, /, fmt: str, **kwargs: Any) -> PointCloud:
        """Read a cloud from another format.

        Parameters
        ----------
        data : Any, positional-only
            The object (or path) to convert.
        fmt : str
            Registered format name.
        **kwargs : Any
            Passed to the reader.
        """
        return FROM_FORMAT_REGISTRY[fmt](data, **kwargs)


FROM_FORMAT_REGISTRY: dict[str, Callable[..., PointCloud]] = {}
TO_FORMAT_REGISTRY: dict[str, Callable[..., Any]] = {}


def as_cloud(data: Any, /) -> PointCloud:
    """Return ``data`` as a :class:`PointCloud`, wrapping arrays and series."""
    if isinstance(data, PointCloud):
        return data
    values = getattr(data, "values", None)  # a Series
    if values is not None:
        return PointCloud(values)
    return PointCloud(np.asarray(data, dtype=float))


