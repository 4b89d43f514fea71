"""Readers and writers for point clouds and series."""

from __future__ import annotations

__all__ = ("read_table", "write_table")

from pathlib import Path
from typing import TYPE_CHECKING, Any, cast

import numpy as np
from numpy.lib.recfunctions import (
    structured_to_unstructured,
    unstructured_to_structured,
)

from wabc._cloud import FROM_FORMAT_REGISTRY, TO_FORMAT_REGISTRY, PointCloud
from wabc.setup_package import CSV_DELIMITER, FLOAT_FMT
from wabc.timeseries._series import (
    SERIES_FROM_FORMAT_REGISTRY,
    SERIES_TO_FORMAT_REGISTRY,
    Series,
)

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from wabc.typing import FloatArray


#####################################################################
# CSV


def write_table(
    path: str | Path, array: FloatArray, names: tuple[str, ...] | list[str]
) -> Path:
    """Write a header row and float rows with 17 significant digits.

    Parameters
    ----------
    path : str | Path
        Destination file.
    array : (N, F) array
        Rows to write.
    names : sequence of str
        Header, one name per column.

    Returns
    -------
    Path
    """
    path = Path(path)
    np.savetxt(
        path,
        np.atleast_2d(array),
        fmt=FLOAT_FMT,
        delimiter=CSV_DELIMITER,
        header=CSV_DELIMITER.join(names),
        comments="",
    )
    return path


def read_table(path: str | Path) -> tuple[tuple[str, ...], FloatArray]:
    """Read a CSV with a mandatory header row.

    Returns
    -------
    names : tuple[str, ...]
    array : (N, F) array
    """
    path = Path(path)
    with path.open() as f:
        header = f.readline().strip()
    if not header:
        msg = f"{path} has no header row"
        raise ValueError(msg)
    names = tuple(h.strip() for h in header.split(CSV_DELIMITER))
    array = np.loadtxt(path, delimiter=CSV_DELIMITER, skiprows=1, ndmin=2)
    if array.size and array.shape[1] != len(names):
        msg = f"{path}: header has {len(names)} columns, rows have {array.shape[1]}"
        raise ValueError(msg)
    return names, array.reshape(-1, len(names))


def _cloud_from_csv(path: str | Path, /) -> PointCloud:
    """Read a cloud written with header ``x1,...,xd``."""
    names, array = read_table(path)
    return PointCloud(array, names=names)


def _cloud_to_csv(cloud: PointCloud, /, path: str | Path) -> Path:
    return write_table(path, cloud.points, cloud.names)


def _series_from_csv(path: str | Path, /) -> Series:
    """Read a series written with header ``t,y1,...,yd``; rows in time order."""
    names, array = read_table(path)
    if names[0] != "t":
        msg = f"series CSV must start with a 't' column, got {names[0]!r}"
        raise ValueError(msg)
    t = array[:, 0]
    if t.size and not np.array_equal(t, np.arange(1, t.size + 1)):
        msg = "series CSV rows must be in time order with t = 1..T"
        raise ValueError(msg)
    return Series(array[:, 1:])


def _series_to_csv(series: Series, /, path: str | Path) -> Path:
    names = ("t", *(f"y{i + 1}" for i in range(series.dy)))
    return write_table(path, np.column_stack([series.times, series.values]), names)


FROM_FORMAT_REGISTRY["csv"] = _cloud_from_csv
TO_FORMAT_REGISTRY["csv"] = _cloud_to_csv
SERIES_FROM_FORMAT_REGISTRY["csv"] = _series_from_csv
SERIES_TO_FORMAT_REGISTRY["csv"] = _series_to_csv


#####################################################################
# NUMPY


def _from_structured_array(array: NDArray[Any], /, **kwargs: Any) -> PointCloud:
    """Create a `PointCloud` from a structured numpy array.

    Parameters
    ----------
    array : ndarray
        The structured array.
    **kwargs : Any
        Additional keyword arguments. Possible values are:

        - names : tuple[str, ...] | None
            The names of the columns to keep. Default (`None`) is to keep all
            columns.

    Returns
    -------
    PointCloud
    """
    if not isinstance(array.dtype.names, tuple):
        msg = "The array must be structured."
        raise TypeError(msg)

    names = _names if (_names := kwargs.get("names")) is not None else array.dtype.names
    return PointCloud(
        structured_to_unstructured(array[list(names)]).astype(float),
        names=tuple(names),
    )


def _to_structured_array(cloud: PointCloud, /) -> NDArray[Any]:
    return cast(
        "NDArray[Any]", unstructured_to_structured(cloud.points, names=cloud.names)
    )


FROM_FORMAT_REGISTRY["numpy.structured"] = _from_structured_array
TO_FORMAT_REGISTRY["numpy.structured"] = _to_structured_array
