"""Distances between observed and simulated data sets."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from dataclasses import KW_ONLY, dataclass, field, replace
import logging
import math
from typing import TYPE_CHECKING, Any, Literal, TypeAlias

import numpy as np

from wabc.metric import GroundMetric
from wabc.models import SUMMARY_REGISTRY
from wabc.random import as_generator
from wabc.setup_package import SWAP_MAX_SWEEPS
from wabc.timeseries import EmbeddingSpec, aspect_ratio_lambda, embed
from wabc.transport import (
    euclidean_vector_distance,
    exact_wasserstein,
    hilbert_distance,
    median_heuristic_bandwidth,
    mmd_squared,
    sinkhorn_divergence,
    subsample,
    swapping_distance,
    wasserstein_1d,
)
from wabc.transport._base import root

if TYPE_CHECKING:
    from wabc._cloud import PointCloud
    from wabc.random import RandomStream
    from wabc.typing import ArrayLike

logger = logging.getLogger(__name__)

Method: TypeAlias = Literal[
    "wasserstein", "hilbert", "swap", "sinkhorn", "mmd", "euclidean", "summary"
]
METHODS: tuple[Method, ...] = (
    "wasserstein",
    "hilbert",
    "swap",
    "sinkhorn",
    "mmd",
    "euclidean",
    "summary",
)


class NonFiniteDistanceError(RuntimeError):
    """Raised when a distance keeps evaluating to NaN or infinity."""


@dataclass(frozen=True, slots=True)
class FrozenConstraint:
    """Hard constraint ``primary <= threshold`` of a combined distance."""

    spec: DistanceSpec
    threshold: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.threshold) and self.threshold >= 0):
            msg = f"frozen threshold must be finite and >= 0, got {self.threshold}"
            raise ValueError(msg)
        if self.spec.frozen is not None:
            msg = "frozen constraints do not nest"
            raise ValueError(msg)


@dataclass(frozen=True, slots=True)
class DistanceSpec:
    """How two data sets are compared.

    Parameters
    ----------
    method : str
        One of ``wasserstein``, ``hilbert``, ``swap``, ``sinkhorn``, ``mmd``,
        ``euclidean`` or ``summary``.
    embedding : EmbeddingSpec, keyword-only
        Applied to both data sets before a transport method. A curve
        embedding switches the ground metric to ``curve_match``.
    metric : GroundMetric, keyword-only
    subsample : int | None, keyword-only
        Compare random subsets of this many points of each embedded cloud.
    summary : str | None, keyword-only
        Summary statistic of the ``summary`` method.
    zeta : float | None, keyword-only
        Sinkhorn regularization; default scales with the median cost.
    bandwidth : float | None, keyword-only
        MMD bandwidth; default is the median heuristic on the observed cloud.
    bits : int | None, keyword-only
        Hilbert bits per axis.
    max_sweeps : int, keyword-only
        Swap sweeps.
    frozen : FrozenConstraint | None, keyword-only
        Make this the second stage of a combined distance: the value is
        ``inf`` whenever the frozen primary distance exceeds its threshold.
    """

    method: Method = "wasserstein"
    _: KW_ONLY
    embedding: EmbeddingSpec = field(default_factory=EmbeddingSpec)
    metric: GroundMetric = field(default_factory=GroundMetric)
    subsample: int | None = None
    summary: str | None = None
    zeta: float | None = None
    bandwidth: float | None = None
    bits: int | None = None
    max_sweeps: int = SWAP_MAX_SWEEPS
    frozen: FrozenConstraint | None = None

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            msg = f"method must be one of {METHODS}, got {self.method!r}"
            raise ValueError(msg)
        if self.method == "summary":
            if self.summary not in SUMMARY_REGISTRY:
                msg = (
                    f"summary must be one of {sorted(SUMMARY_REGISTRY)}, "
                    f"got {self.summary!r}"
                )
                raise ValueError(msg)
        elif self.summary is not None:
            msg = "summary is only used by the summary method"
            raise ValueError(msg)
        if self.subsample is not None and self.subsample < 1:
            msg = f"subsample must be >= 1, got {self.subsample}"
            raise ValueError(msg)
        if self.max_sweeps < 1:
            msg = f"max_sweeps must be >= 1, got {self.max_sweeps}"
            raise ValueError(msg)
        for name in ("zeta", "bandwidth"):
            value = getattr(self, name)
            if value is not None and not (math.isfinite(value) and value > 0):
                msg = f"{name} must be a positive real, got {value}"
                raise ValueError(msg)


def _resolve_metric(spec: DistanceSpec, observed: Any) -> GroundMetric:
    if spec.embedding.kind != "curve":
        return spec.metric
    lam = spec.embedding.lam
    if lam is None:
        lam = aspect_ratio_lambda(observed, *spec.embedding.aspect)
        logger.debug("curve-matching lambda from aspect ratio: %g", lam)
    return replace(spec.metric, kind="curve_match", lam=lam)


class DistanceFunction:
    """Distance from simulated data sets to one observed data set.

    The observed embedding, the curve-matching weight and the MMD bandwidth
    are computed once, except for residual embeddings, which change with the
    parameter.

    Parameters
    ----------
    spec : DistanceSpec
    observed : PointCloud | Series
    """

    def __init__(self, spec: DistanceSpec, observed: Any) -> None:
        self.spec = spec
        self.observed = observed
        self.metric = _resolve_metric(spec, observed)
        self.n_obs = len(observed)

        self._obs_summary = None
        self._obs_cloud: PointCloud | None = None
        self._bandwidth = spec.bandwidth
        if spec.method == "summary":
            self._obs_summary = np.atleast_1d(SUMMARY_REGISTRY[spec.summary](observed))
        elif not spec.embedding.depends_on_theta:
            self._obs_cloud = embed(observed, spec.embedding)
            if spec.method == "mmd" and self._bandwidth is None:
                self._bandwidth = median_heuristic_bandwidth(self._obs_cloud)

        self.frozen = (
            None
            if spec.frozen is None
            else DistanceFunction(spec.frozen.spec, observed)
        )

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec!r})"

    def primary(
        self,
        synthetic: Any,
        theta: ArrayLike | None = None,
        rng: RandomStream | np.random.Generator | None = None,
    ) -> float:
        """The distance of this spec, ignoring any frozen constraint."""
        spec = self.spec
        if spec.method == "summary":
            eta = np.atleast_1d(SUMMARY_REGISTRY[spec.summary](synthetic))
            return float(np.linalg.norm(eta - self._obs_summary))

        x = self._obs_cloud
        if x is None:
            x = embed(self.observed, spec.embedding, theta)
        y = embed(synthetic, spec.embedding, theta)
        if spec.subsample is not None:
            gen = as_generator(rng)
            x = subsample(x, min(spec.subsample, x.n), gen)
            y = subsample(y, min(spec.subsample, y.n), gen)
        return self._transport(x, y)

    def _transport(self, x: PointCloud, y: PointCloud) -> float:
        spec, m = self.spec, self.metric
        if spec.method == "wasserstein":
            if x.d == 1 and m.kind != "curve_match":
                return wasserstein_1d(x, y, m.p).value
            return exact_wasserstein(x, y, m).value
        if spec.method == "hilbert":
            return hilbert_distance(x, y, m, bits=spec.bits).value
        if spec.method == "swap":
            return swapping_distance(x, y, m, spec.max_sweeps, bits=spec.bits).value
        if spec.method == "sinkhorn":
            result, _ = sinkhorn_divergence(x, y, m, spec.zeta)
            return root(result.value, m.p)
        if spec.method == "mmd":
            bw = self._bandwidth or median_heuristic_bandwidth(x)
            return math.sqrt(max(mmd_squared(x, y, bw), 0.0))
        return euclidean_vector_distance(x, y, m).value

    def pair(
        self,
        synthetic: Any,
        theta: ArrayLike | None = None,
        rng: RandomStream | np.random.Generator | None = None,
    ) -> tuple[float | None, float]:
        """``(primary, value)``; the primary is `None` without a constraint."""
        if self.frozen is None or self.spec.frozen is None:
            return None, self.primary(synthetic, theta, rng)
        first = self.frozen.primary(synthetic, theta, rng)
        if not first <= self.spec.frozen.threshold:
            return first, math.inf
        return first, self.primary(synthetic, theta, rng)

    def __call__(
        self,
        synthetic: Any,
        theta: ArrayLike | None = None,
        rng: RandomStream | np.random.Generator | None = None,
    ) -> float:
        _, value = self.pair(synthetic, theta, rng)
        if math.isnan(value):
            msg = f"distance is NaN for theta={theta}"
            raise NonFiniteDistanceError(msg)
        return value


def combined_distance(
    distance: DistanceFunction,
    synthetic: Any,
    theta: ArrayLike | None = None,
    rng: RandomStream | np.random.Generator | None = None,
) -> tuple[float, float]:
    """Primary and secondary values of a combined distance.

    The secondary is ``inf`` whenever the primary exceeds the frozen
    threshold, so accepting on the secondary accepts on both.

    Raises
    ------
    ValueError
        If ``distance`` has no frozen constraint.
    """
    first, second = distance.pair(synthetic, theta, rng)
    if first is None:
        msg = "combined_distance needs a spec with a frozen constraint"
        raise ValueError(msg)
    return first, second
