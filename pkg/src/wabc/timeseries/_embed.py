"""Point-cloud embeddings of time series."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from dataclasses import KW_ONLY, dataclass
import math
from typing import TYPE_CHECKING, Any, Literal, TypeAlias

import numpy as np

from wabc._cloud import PointCloud, as_cloud
from wabc.timeseries._series import Series

if TYPE_CHECKING:
    from wabc.typing import ArrayLike

EmbeddingKind: TypeAlias = Literal["none", "curve", "delay", "residual"]
_KINDS: tuple[EmbeddingKind, ...] = ("none", "curve", "delay", "residual")


@dataclass(frozen=True, slots=True)
class EmbeddingSpec:
    """How a data set is turned into a point cloud.

    Parameters
    ----------
    kind : {'none', 'curve', 'delay', 'residual'}
        ``none`` uses the observations as points. ``curve`` pairs each value
        with its time index; ``delay`` stacks lagged values; ``residual``
        inverts a time-series model at the parameter being evaluated.
    lam : float | None, keyword-only
        Time weight of the curve-matching ground metric. `None` derives it
        from the observed series with :func:`aspect_ratio_lambda`.
    aspect : tuple[float, float], keyword-only
        ``(H, V)`` aspect ratio used when ``lam`` is `None`.
    lags : tuple[int, ...], keyword-only
        Strictly increasing positive lags of the delay embedding.
    stride : int, keyword-only
        Keep every ``stride``-th delay vector.
    model : str | None, keyword-only
        Residual model tag, ``'ar1'`` or ``'cosine'``.
    """

    kind: EmbeddingKind = "none"
    _: KW_ONLY
    lam: float | None = None
    aspect: tuple[float, float] = (1.0, 1.0)
    lags: tuple[int, ...] = (1,)
    stride: int = 1
    model: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            msg = f"kind must be one of {_KINDS}, got {self.kind!r}"
            raise ValueError(msg)
        if self.lam is not None and not (math.isfinite(self.lam) and self.lam >= 0):
            msg = f"lam must be a finite real >= 0, got {self.lam}"
            raise ValueError(msg)
        if min(self.aspect) <= 0 or len(self.aspect) != 2:  # noqa: PLR2004
            msg = f"aspect must be two positive reals, got {self.aspect}"
            raise ValueError(msg)
        lags = tuple(int(t) for t in self.lags)
        if not lags or lags[0] < 1 or any(b <= a for a, b in zip(lags, lags[1:])):
            msg = f"lags must be strictly increasing positive integers, got {lags}"
            raise ValueError(msg)
        object.__setattr__(self, "lags", lags)
        if self.stride < 1:
            msg = f"stride must be >= 1, got {self.stride}"
            raise ValueError(msg)
        if self.kind == "residual" and self.model is None:
            msg = "a residual embedding needs a model tag"
            raise ValueError(msg)

    @property
    def depends_on_theta(self) -> bool:
        """Whether the embedding of a data set changes with the parameter."""
        return self.kind == "residual"


def _as_series(s: Series | ArrayLike) -> Series:
    return s if isinstance(s, Series) else Series(np.asarray(s, dtype=float))


def curve_embed(s: Series | ArrayLike) -> PointCloud:
    """Points ``(t, y_t)`` for ``t = 1..T``.

    The time coordinate is the raw index; pair the result with the
    ``curve_match`` ground metric to weight it.

    Examples
    --------
    >>> curve_embed([5.0, 7.0]).points
    array([[1., 5.],
           [2., 7.]])
    """
    series = _as_series(s)
    return PointCloud(
        np.column_stack([series.times, series.values]),
        names=("t", *(f"y{i + 1}" for i in range(series.dy))),
    )


def aspect_ratio_lambda(  # noqa: N803
    s: Series | ArrayLike, H: float = 1.0, V: float = 1.0
) -> float:
    """Curve-matching time weight for an ``H:V`` aspect ratio.

    ``lam = ((max y - min y) / V) * (H / T)``.

    Raises
    ------
    ValueError
        If the series is multivariate, shorter than 2, or constant.

    Examples
    --------
    >>> aspect_ratio_lambda([0.0, 2.0], H=2.0, V=2.0)
    1.0
    """
    series = _as_series(s)
    if H <= 0 or V <= 0:
        msg = f"H and V must be positive, got {H}, {V}"
        raise ValueError(msg)
    y = series.flat
    if series.T < 2:  # noqa: PLR2004
        msg = "aspect_ratio_lambda needs T >= 2"
        raise ValueError(msg)
    spread = float(y.max() - y.min())
    if spread <= 0:
        msg = "aspect_ratio_lambda is undefined for a constant series"
        raise ValueError(msg)
    return (spread / V) * (H / series.T)


def delay_embed(
    s: Series | ArrayLike, lags: tuple[int, ...] = (1,), stride: int = 1
) -> PointCloud:
    """Delay vectors ``(y_t, y_{t - lag_1}, ..., y_{t - lag_k})``.

    Vectors start at ``t = lag_k + 1`` and step by ``stride``, giving
    ``ceil((T - lag_k) / stride)`` points of dimension ``(k + 1) * d_y``.

    Raises
    ------
    ValueError
        If the series is not longer than the largest lag.

    Examples
    --------
    >>> delay_embed([1.0, 2.0, 3.0, 4.0, 5.0], lags=(1,), stride=2).points
    array([[2., 1.],
           [4., 3.]])
    """
    spec = EmbeddingSpec("delay", lags=lags, stride=stride)
    series = _as_series(s)
    top = spec.lags[-1]
    if series.T <= top:
        msg = f"series of length {series.T} is too short for lag {top}"
        raise ValueError(msg)
    rows = np.arange(top, series.T, spec.stride)
    offsets = np.array((0, *spec.lags))
    idx = rows[:, None] - offsets[None, :]
    points = series.values[idx].reshape(rows.size, -1)
    return PointCloud(points)


def embed(
    data: Any, spec: EmbeddingSpec, theta: ArrayLike | None = None
) -> PointCloud:
    """Apply ``spec`` to a data set.

    Parameters
    ----------
    data : PointCloud | Series | array-like
    spec : EmbeddingSpec
    theta : array-like, optional
        Parameter vector; required by residual embeddings.
    """
    if spec.kind == "none":
        return as_cloud(data)
    if spec.kind == "curve":
        return curve_embed(data)
    if spec.kind == "delay":
        return delay_embed(data, spec.lags, spec.stride)

    from wabc.timeseries._residual import residual_reconstruct

    if theta is None:
        msg = "residual embeddings need the parameter vector"
        raise ValueError(msg)
    return residual_reconstruct(data, spec.model or "", theta)
