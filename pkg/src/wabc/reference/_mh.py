"""Random-walk Metropolis-Hastings on models with a tractable likelihood."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from concurrent.futures import ThreadPoolExecutor
from dataclasses import KW_ONLY, dataclass
import logging
import math
from typing import TYPE_CHECKING, Any

import numpy as np

from wabc.random import RandomStream
from wabc.setup_package import (
    COV_JITTER,
    DEFAULT_SEED,
    MH_INIT_ATTEMPTS,
    MH_PILOT_ITERATIONS,
    MH_PILOT_SCALE,
    StreamPurpose,
)

if TYPE_CHECKING:
    from collections.abc import Callable

    from wabc.models import GenerativeModel
    from wabc.typing import FloatArray

logger = logging.getLogger(__name__)

PILOT_SCALE: float = 2.38**2


@dataclass(frozen=True, slots=True)
class MhConfig:
    """Settings of the reference Metropolis-Hastings sampler.

    Parameters
    ----------
    iterations : int
        Iterations per chain, burn-in included.
    burn_in : int, keyword-only
        Leading iterations dropped from each chain, ``< iterations``.
    step_cov : (d, d) array-like | None, keyword-only
        Random-walk covariance. `None` tunes it on a pilot run as
        ``2.38**2 / d`` times the pilot sample covariance.
    seed : int, keyword-only
    thin : int, keyword-only
        Keep every ``thin``-th iteration after burn-in.
    chains : int, keyword-only
        Independent chains, concatenated in the output.
    pilot_iterations : int, keyword-only
    workers : int, keyword-only
        Threads running chains; results do not depend on it.
    """

    iterations: int
    _: KW_ONLY
    burn_in: int = 0
    step_cov: Any = None
    seed: int = DEFAULT_SEED
    thin: int = 1
    chains: int = 1
    pilot_iterations: int = MH_PILOT_ITERATIONS
    workers: int = 1

    def __post_init__(self) -> None:
        if self.iterations < 1:
            msg = f"iterations must be >= 1, got {self.iterations}"
            raise ValueError(msg)
        if not 0 <= self.burn_in < self.iterations:
            msg = f"burn_in must lie in [0, iterations), got {self.burn_in}"
            raise ValueError(msg)
        for name in ("thin", "chains", "workers", "pilot_iterations"):
            if getattr(self, name) < 1:
                msg = f"{name} must be >= 1, got {getattr(self, name)}"
                raise ValueError(msg)
        if self.step_cov is not None:
            cov = np.atleast_2d(np.asarray(self.step_cov, dtype=float))
            if cov.shape[0] != cov.shape[1] or not np.allclose(cov, cov.T):
                msg = "step_cov must be a symmetric square matrix"
                raise ValueError(msg)
            try:
                np.linalg.cholesky(cov)
            except np.linalg.LinAlgError:
                msg = "step_cov must be positive definite"
                raise ValueError(msg) from None
            object.__setattr__(self, "step_cov", cov)


@dataclass(frozen=True, slots=True)
class MhResult:
    """Concatenated post-burn-in draws of all chains.

    Parameters
    ----------
    samples : (M, d) ndarray
    logpost : (M,) ndarray
        Unnormalized log-posterior of each draw.
    iteration : (M,) ndarray of int
        Iteration number of each draw within its chain.
    acceptance : tuple[float, ...]
        Acceptance rate of each chain.
    names : tuple[str, ...]
    """

    samples: FloatArray
    logpost: FloatArray
    iteration: Any
    acceptance: tuple[float, ...]
    names: tuple[str, ...]

    def as_table(self) -> tuple[tuple[str, ...], FloatArray]:
        """Column names and rows ``(iteration, theta..., logpost)``."""
        table = np.column_stack([self.iteration, self.samples, self.logpost])
        return ("iteration", *self.names, "logpost"), table


def _log_target(model: GenerativeModel, data: Any) -> Callable[[FloatArray], float]:
    def log_target(theta: FloatArray) -> float:
        lp = model.prior_logdensity(theta)
        if lp == -math.inf:
            return lp
        ll = model.loglik(theta, data)
        return lp + ll if math.isfinite(ll) else -math.inf

    return log_target


def _initial_point(
    model: GenerativeModel,
    target: Callable[[FloatArray], float],
    gen: np.random.Generator,
) -> tuple[FloatArray, float]:
    for _ in range(MH_INIT_ATTEMPTS):
        theta = model.prior_sample(gen)
        lp = target(theta)
        if math.isfinite(lp):
            return theta, lp
    msg = f"no prior draw with a finite likelihood in {MH_INIT_ATTEMPTS} attempts"
    raise RuntimeError(msg)


def _chain(
    target: Callable[[FloatArray], float],
    theta: FloatArray,
    lp: float,
    chol: FloatArray,
    iterations: int,
    gen: np.random.Generator,
) -> tuple[FloatArray, FloatArray, float]:
    d = theta.size
    out = np.empty((iterations, d))
    logpost = np.empty(iterations)
    accepted = 0
    for t in range(iterations):
        proposed = theta + chol @ gen.standard_normal(d)
        lp_new = target(proposed)
        if gen.uniform() < math.exp(min(lp_new - lp, 0.0)):
            theta, lp = proposed, lp_new
            accepted += 1
        out[t], logpost[t] = theta, lp
    return out, logpost, accepted / iterations


def _pilot_cov(
    model: GenerativeModel, target: Callable[[FloatArray], float], config: MhConfig
) -> FloatArray:
    gen = RandomStream(config.seed, (StreamPurpose.PILOT,)).generator()
    d = model.param_space.dim
    theta, lp = _initial_point(model, target, gen)
    start = MH_PILOT_SCALE * PILOT_SCALE / d * np.atleast_2d(model.prior.cov)
    draws, _, rate = _chain(
        target, theta, lp, np.linalg.cholesky(start), config.pilot_iterations, gen
    )
    logger.info("pilot run acceptance rate %.3f", rate)
    cov = np.atleast_2d(np.cov(draws[draws.shape[0] // 2 :], rowvar=False))
    if not np.trace(cov) > 0:
        logger.warning("pilot run did not move; keeping the pilot covariance")
        return start
    return PILOT_SCALE / d * (cov + COV_JITTER * np.trace(cov) / d * np.eye(d))


def metropolis_hastings(
    model: GenerativeModel, data: Any, config: MhConfig
) -> MhResult:
    """Sample the exact posterior with random-walk Metropolis-Hastings.

    Each chain starts from a prior draw with a finite likelihood (up to 100
    attempts) and uses the stream ``(MH, chain)``.

    Parameters
    ----------
    model : GenerativeModel
        Must expose :meth:`~wabc.models.GenerativeModel.loglik`.
    data : PointCloud | Series
    config : MhConfig

    Returns
    -------
    MhResult

    Raises
    ------
    NotImplementedError
        If the model has no likelihood.
    RuntimeError
        If no starting point with a finite likelihood is found.
    """
    if not model.has_loglik:
        msg = f"model {model.name!r} has no tractable likelihood"
        raise NotImplementedError(msg)
    target = _log_target(model, data)
    cov = config.step_cov
    if cov is None:
        cov = _pilot_cov(model, target, config)
    chol = np.linalg.cholesky(np.atleast_2d(cov))

    def run_chain(c: int) -> tuple[FloatArray, FloatArray, float]:
        gen = RandomStream(config.seed, (StreamPurpose.MH, c)).generator()
        theta, lp = _initial_point(model, target, gen)
        draws, logpost, rate = _chain(target, theta, lp, chol, config.iterations, gen)
        logger.info("chain %d acceptance rate %.3f", c, rate)
        return draws, logpost, rate

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            chains = list(pool.map(run_chain, range(config.chains)))
    else:
        chains = [run_chain(c) for c in range(config.chains)]

    keep = np.arange(config.burn_in, config.iterations, config.thin)
    return MhResult(
        samples=np.concatenate([draws[keep] for draws, _, _ in chains]),
        logpost=np.concatenate([lp[keep] for _, lp, _ in chains]),
        iteration=np.tile(keep + 1, config.chains),
        acceptance=tuple(rate for _, _, rate in chains),
        names=model.param_space.names,
    )
