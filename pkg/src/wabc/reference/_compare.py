"""Comparing samples of a parameter distribution."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from typing import TYPE_CHECKING, Any

from wabc._cloud import CloudValidationError, as_cloud
from wabc.metric import GroundMetric
from wabc.random import RandomStream, as_generator
from wabc.setup_package import StreamPurpose
from wabc.transport import exact_wasserstein, subsample

if TYPE_CHECKING:
    import numpy as np


def cloud_w1(
    a: Any, b: Any, rng: RandomStream | np.random.Generator | int | None = None
) -> float:
    """Exact Euclidean W1 between two parameter samples.

    The larger sample is sub-sampled without replacement to the size of the
    smaller one.

    Raises
    ------
    CloudValidationError
        If the dimensions differ.

    Examples
    --------
    >>> cloud_w1([[0.0, 0.0], [1.0, 1.0]], [[1.0, 0.0], [2.0, 1.0]])
    1.0
    """
    ca, cb = as_cloud(a), as_cloud(b)
    if ca.d != cb.d:
        msg = f"dimensions differ: {ca.d} != {cb.d}"
        raise CloudValidationError("dimension", msg)
    if ca.n != cb.n:
        gen = as_generator(
            RandomStream().child(StreamPurpose.REFERENCE) if rng is None else rng
        )
        m = min(ca.n, cb.n)
        if ca.n > m:
            ca = subsample(ca, m, gen)
        else:
            cb = subsample(cb, m, gen)
    return exact_wasserstein(ca, cb, GroundMetric("euclidean")).value
