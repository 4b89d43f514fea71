"""Threshold adaptation and resampling."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

import math
from typing import TYPE_CHECKING

import numpy as np

from wabc.random import as_generator

if TYPE_CHECKING:
    from wabc.random import RandomStream
    from wabc.smc._state import SmcState
    from wabc.typing import ArrayLike, IntArray


def select_threshold(
    dists: ArrayLike, n: int, alpha: float, previous: float = math.inf
) -> float | None:
    """Threshold keeping ``ceil(alpha * n)`` of the given unique distances.

    Parameters
    ----------
    dists : array-like
        One distance per distinct particle.
    n : int
        Population size.
    alpha : float
        Target fraction, in ``(0, 1]``.
    previous : float, optional
        Current threshold; the result must be strictly smaller.

    Returns
    -------
    float | None
        `None` when the threshold cannot decrease.

    Examples
    --------
    >>> select_threshold([4.0, 1.0, 3.0, 2.0], 4, 0.5)
    2.0
    >>> select_threshold([1.0, 1.0], 2, 0.5) is None
    True
    """
    d = np.sort(np.asarray(dists, dtype=float))
    if d.size == 0 or d[0] == d[-1]:
        return None
    k = math.ceil(alpha * n)
    eps = float(d[min(k, d.size) - 1])
    if not (math.isfinite(eps) and eps < previous):
        return None
    return eps


def adapt_threshold(state: SmcState, alpha: float) -> float | None:
    """Next threshold of the sampler, or `None` to stop.

    The ``ceil(alpha N)``-th smallest distance among distinct particles, so
    at least that many distinct particles survive, provided it lies strictly
    below the current threshold and the distinct distances are not all equal.
    """
    idx = state.unique_index()
    return select_threshold(state.dists[idx], len(state), alpha, state.epsilon)


def systematic_resample(
    weights: ArrayLike, rng: RandomStream | np.random.Generator
) -> IntArray:
    """Systematic resampling: one uniform offset, ``N`` evenly spaced strata.

    Index ``i`` is drawn between ``floor(N w_i)`` and ``ceil(N w_i)`` times.

    Parameters
    ----------
    weights : (N,) array-like
        Non-negative weights; normalized here.
    rng : RandomStream | Generator

    Returns
    -------
    (N,) ndarray of int
        Sorted ancestor indices.

    Raises
    ------
    ValueError
        If a weight is negative or not finite, or all are zero.

    Examples
    --------
    >>> systematic_resample([0.5, 0.25, 0.25, 0.0], 1).tolist()
    [0, 0, 1, 2]
    """
    w = np.asarray(weights, dtype=float).reshape(-1)
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        msg = "weights must be finite and non-negative"
        raise ValueError(msg)
    total = w.sum()
    if total <= 0:
        msg = "weights are all zero"
        raise ValueError(msg)
    n = w.size
    cum = np.cumsum(w / total)
    cum[-1] = 1.0
    u = (as_generator(rng).uniform() + np.arange(n)) / n
    return np.searchsorted(cum, u, side="right").astype(np.intp)
