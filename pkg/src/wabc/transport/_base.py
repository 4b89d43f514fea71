"""Transport results and shared checks."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from dataclasses import KW_ONLY, dataclass
import math
from typing import TYPE_CHECKING, Any, Literal, TypeAlias

import numpy as np

from wabc._cloud import CloudValidationError, as_cloud

if TYPE_CHECKING:
    from wabc._cloud import PointCloud
    from wabc.typing import FloatArray, IntArray


MethodTag: TypeAlias = Literal[
    "wasserstein_1d",
    "wasserstein",
    "brute_force",
    "hilbert",
    "swap",
    "sinkhorn",
    "mmd",
    "euclidean",
]


class SizeMismatchError(ValueError):
    """Raised when two clouds must have equal sizes but do not."""

    def __init__(self, n: int, m: int) -> None:
        super().__init__(f"clouds must have equal sizes, got {n} and {m}")


class BandwidthError(ValueError):
    """Raised for a non-positive kernel bandwidth."""

    def __init__(self, bandwidth: float) -> None:
        super().__init__(f"bandwidth must be positive, got {bandwidth}")


class DegenerateCloudError(ValueError):
    """Raised when a cloud has too little spread for the requested operation."""


class SinkhornConvergenceError(RuntimeError):
    """Raised when Sinkhorn iterations exhaust ``max_iter``.

    Attributes
    ----------
    violation : float
        Largest marginal violation reached.
    iterations : int
        Iterations performed.
    """

    def __init__(self, violation: float, iterations: int) -> None:
        self.violation = violation
        self.iterations = iterations
        super().__init__(
            f"Sinkhorn did not converge in {iterations} iterations "
            f"(marginal violation {violation:.3g})"
        )


@dataclass(frozen=True, slots=True)
class Assignment:
    """A bijection matching row ``i`` of one cloud to row ``sigma[i]`` of another.

    Indices are zero-based.
    """

    sigma: IntArray

    def __post_init__(self) -> None:
        sigma = np.asarray(self.sigma, dtype=np.intp).copy()
        n = sigma.shape[0]
        if sigma.ndim != 1 or not np.array_equal(np.sort(sigma), np.arange(n)):
            msg = "sigma must be a permutation of 0..n-1"
            raise ValueError(msg)
        sigma.flags.writeable = False
        object.__setattr__(self, "sigma", sigma)

    @property
    def n(self) -> int:
        """Size of the permutation."""
        return int(self.sigma.shape[0])

    def inverse(self) -> Assignment:
        """The inverse bijection."""
        inv = np.empty_like(self.sigma)
        inv[self.sigma] = np.arange(self.n)
        return Assignment(inv)


@dataclass(frozen=True, slots=True)
class TransportPlan:
    """A coupling ``gamma`` between uniform measures of sizes ``n`` and ``m``.

    Row sums are ``1/n`` and column sums ``1/m`` up to the solver tolerance.
    """

    gamma: FloatArray

    def __post_init__(self) -> None:
        gamma = np.asarray(self.gamma, dtype=float)
        finite = bool(np.all(np.isfinite(gamma)))
        if gamma.ndim != 2 or not finite or np.any(gamma < 0):  # noqa: PLR2004
            msg = "gamma must be a finite non-negative matrix"
            raise ValueError(msg)
        object.__setattr__(self, "gamma", gamma)

    def marginal_violation(self) -> float:
        """Largest deviation of a row or column sum from its target."""
        n, m = self.gamma.shape
        rows = np.abs(self.gamma.sum(axis=1) - 1 / n).max()
        cols = np.abs(self.gamma.sum(axis=0) - 1 / m).max()
        return float(max(rows, cols))


@dataclass(frozen=True, slots=True)
class DistanceResult:
    """Outcome of a distance computation.

    Parameters
    ----------
    value : float
        Non-negative finite distance (or transport cost, see the method).
    method : str
        Which algorithm produced the value.
    iterations : int, keyword-only
        Solver iterations or sweeps; ``0`` for direct methods.
    assignment : Assignment | None, keyword-only
        Matching realizing ``value``, when the method produces one.
    """

    value: float
    method: MethodTag
    _: KW_ONLY
    iterations: int = 0
    assignment: Assignment | None = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.value) and self.value >= 0):
            msg = f"distance must be finite and non-negative, got {self.value}"
            raise ValueError(msg)
        if self.iterations < 0:
            msg = f"iterations must be >= 0, got {self.iterations}"
            raise ValueError(msg)

    def __float__(self) -> float:
        return float(self.value)


def coerce_pair(
    x: Any, y: Any, *, same_size: bool = True
) -> tuple[PointCloud, PointCloud]:
    """Wrap ``x`` and ``y`` as clouds and check their shapes agree."""
    cx, cy = as_cloud(x), as_cloud(y)
    if cx.d != cy.d:
        msg = f"dimensions differ: {cx.d} != {cy.d}"
        raise CloudValidationError("dimension", msg)
    if same_size and cx.n != cy.n:
        raise SizeMismatchError(cx.n, cy.n)
    return cx, cy


def root(cost: float, p: float) -> float:
    """Turn a mean transport cost into a distance, ``cost ** (1/p)``."""
    cost = max(float(cost), 0.0)
    return cost if p == 1 else cost ** (1 / p)
