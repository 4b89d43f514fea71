"""Ground metrics on observation space."""

from __future__ import annotations

__all__ = ("GroundMetric", "ground_distance", "cost_matrix", "paired_costs")

from dataclasses import KW_ONLY, dataclass
import math
from typing import TYPE_CHECKING, Literal, TypeAlias

import numpy as np
from scipy.spatial.distance import cdist

from wabc._cloud import CloudValidationError

if TYPE_CHECKING:
    from wabc.typing import ArrayLike, FloatArray


MetricKind: TypeAlias = Literal["euclidean", "l1", "curve_match"]
_KINDS: tuple[MetricKind, ...] = ("euclidean", "l1", "curve_match")


@dataclass(frozen=True, slots=True)
class GroundMetric:
    """Base distance :math:`\\rho` and Wasserstein order ``p``.

    Parameters
    ----------
    kind : {'euclidean', 'l1', 'curve_match'}
        ``curve_match`` treats the first coordinate as a time index and
        measures ``||y - z|| + lam * |t - s|`` with the Euclidean norm on the
        remaining coordinates.
    p : float, keyword-only
        Transport order, ``p >= 1``.
    lam : float, keyword-only
        Time weight of ``curve_match``; ignored by the other kinds.
    """

    kind: MetricKind = "euclidean"
    _: KW_ONLY
    p: float = 1.0
    lam: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            msg = f"kind must be one of {_KINDS}, got {self.kind!r}"
            raise ValueError(msg)
        if not (math.isfinite(self.p) and self.p >= 1):
            msg = f"p must be a finite real >= 1, got {self.p}"
            raise ValueError(msg)
        if not (math.isfinite(self.lam) and self.lam >= 0):
            msg = f"lam must be a finite real >= 0, got {self.lam}"
            raise ValueError(msg)

    @property
    def min_dim(self) -> int:
        """Smallest point dimension the metric accepts."""
        return 2 if self.kind == "curve_match" else 1


def _check_pair(a: FloatArray, b: FloatArray, m: GroundMetric) -> None:
    if a.shape[-1] != b.shape[-1]:
        msg = f"dimensions differ: {a.shape[-1]} != {b.shape[-1]}"
        raise CloudValidationError("dimension", msg)
    if a.shape[-1] < m.min_dim:
        msg = f"{m.kind} needs points of dimension >= {m.min_dim}"
        raise CloudValidationError("dimension", msg)
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise CloudValidationError("non-finite")


def ground_distance(a: ArrayLike, b: ArrayLike, m: GroundMetric) -> float:
    """Distance between two points under ``m``.

    Examples
    --------
    >>> ground_distance((0, 0), (3, 4), GroundMetric("euclidean"))
    5.0
    >>> ground_distance((1, 2.0), (3, 2.0), GroundMetric("curve_match", lam=1.0))
    2.0
    """
    aa = np.atleast_1d(np.asarray(a, dtype=float))
    bb = np.atleast_1d(np.asarray(b, dtype=float))
    _check_pair(aa, bb, m)
    return float(cost_matrix(aa[None, :], bb[None, :], m, power=False)[0, 0])


def cost_matrix(
    x: FloatArray, y: FloatArray, m: GroundMetric, *, power: bool = True
) -> FloatArray:
    """Pairwise ground distances between the rows of ``x`` and ``y``.

    Parameters
    ----------
    x : (n, d) ndarray
    y : (m, d) ndarray
    m : GroundMetric
    power : bool, optional keyword-only
        Return :math:`\\rho^p` (the transport cost) when `True` (default),
        :math:`\\rho` otherwise.

    Returns
    -------
    (n, m) ndarray
    """
    _check_pair(x, y, m)
    if m.kind == "euclidean":
        c = cdist(x, y, "euclidean")
    elif m.kind == "l1":
        c = cdist(x, y, "cityblock")
    else:
        c = cdist(x[:, 1:], y[:, 1:], "euclidean")
        if m.lam > 0:
            c += m.lam * np.abs(x[:, :1] - y[:, :1].T)
    if power and m.p != 1:
        c **= m.p
    return c


def paired_costs(
    x: FloatArray, y: FloatArray, m: GroundMetric, *, power: bool = True
) -> FloatArray:
    """Ground distances between matching rows, ``rho(x_i, y_i)``.

    Parameters
    ----------
    x, y : (n, d) ndarray
    m : GroundMetric
    power : bool, optional keyword-only
        Raise to the power ``p`` when `True` (default).

    Returns
    -------
    (n,) ndarray
    """
    _check_pair(x, y, m)
    diff = x - y
    if m.kind == "euclidean":
        c = np.sqrt(np.einsum("ij,ij->i", diff, diff))
    elif m.kind == "l1":
        c = np.abs(diff).sum(axis=1)
    else:
        v = diff[:, 1:]
        c = np.sqrt(np.einsum("ij,ij->i", v, v)) + m.lam * np.abs(diff[:, 0])
    if power and m.p != 1:
        c = c**m.p
    return c
