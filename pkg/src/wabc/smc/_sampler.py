"""Adaptive ABC-SMC with r-hit rejuvenation."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from concurrent.futures import ThreadPoolExecutor
import dataclasses
import logging
import math
import time
from typing import TYPE_CHECKING, Any, TypeVar

import numpy as np
from tqdm.auto import tqdm

from wabc.random import RandomStream
from wabc.setup_package import INIT_RETRIES, MIXTURE_FALLBACK_SCALE, StreamPurpose
from wabc.smc._distance import (
    DistanceFunction,
    DistanceSpec,
    FrozenConstraint,
    NonFiniteDistanceError,
)
from wabc.smc._kernel import rhit_mcmc_step
from wabc.smc._mixture import fit_mixture_proposal
from wabc.smc._resample import adapt_threshold, systematic_resample
from wabc.smc._state import Particle, SmcResult, SmcState, ThresholdTrace, TraceRow

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from wabc.models import GenerativeModel
    from wabc.smc._config import SmcConfig
    from wabc.smc._mixture import MixtureProposal

logger = logging.getLogger(__name__)

T = TypeVar("T")


def _parallel_map(fn: Callable[[int], T], n: int, workers: int) -> list[T]:
    """``[fn(i) for i in range(n)]``, in order, on ``workers`` threads."""
    if workers <= 1:
        return [fn(i) for i in range(n)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(n)))


def _as_distance(
    spec: DistanceSpec | DistanceFunction, observed: Any
) -> DistanceFunction:
    if isinstance(spec, DistanceFunction):
        return spec
    return DistanceFunction(spec, observed)


def init_population(
    model: GenerativeModel,
    observed: Any,
    spec: DistanceSpec | DistanceFunction,
    config: SmcConfig,
) -> SmcState:
    """Draw ``N`` particles from the prior, one simulated data set each.

    Particle ``i`` uses the stream ``(INIT, i)``, so the population does not
    depend on the number of workers. A non-finite distance is retried once on a
    fresh stream before :class:`NonFiniteDistanceError` is raised.
    """
    distance = _as_distance(spec, observed)
    root = RandomStream(config.seed)

    def draw(i: int) -> tuple[Particle, int]:
        sims = 0
        for attempt in range(INIT_RETRIES + 1):
            gen = root.child(StreamPurpose.INIT, i, attempt).generator()
            theta = model.prior_sample(gen)
            synthetic = model.simulate(theta, distance.n_obs, gen)
            sims += 1
            primary, dist = distance.pair(synthetic, theta, gen)
            if math.isfinite(dist):
                return Particle(theta, synthetic, dist, primary=primary), sims
            logger.warning(
                "distance %r for initial particle %d (attempt %d)", dist, i, attempt
            )
        msg = f"distance is not finite for particle {i} after {INIT_RETRIES} retry"
        raise NonFiniteDistanceError(msg)

    drawn = _parallel_map(draw, config.n_particles, config.workers)
    particles = tuple(p for p, _ in drawn)
    sims = sum(s for _, s in drawn)
    logger.info(
        "initial population: %d particles, %d simulations", len(particles), sims
    )
    return SmcState(particles, math.inf, 0, sims)


def _rejuvenate(  # noqa: PLR0913
    particles: Sequence[Particle],
    epsilon: float,
    step: int,
    model: GenerativeModel,
    distance: DistanceFunction,
    proposal: MixtureProposal,
    config: SmcConfig,
) -> tuple[tuple[Particle, ...], int, int]:
    root = RandomStream(config.seed)

    def move(i: int) -> tuple[Particle, int, int]:
        gen = root.child(StreamPurpose.KERNEL, step, i).generator()
        current, sims, accepted = particles[i], 0, 0
        for _ in range(config.passes):
            new, used = rhit_mcmc_step(
                current,
                epsilon,
                model,
                distance,
                proposal,
                config.hits,
                gen,
                trial_cap=config.trial_cap,
            )
            accepted += new is not current
            current, sims = new, sims + used
        return current, sims, accepted

    moved = _parallel_map(move, len(particles), config.workers)
    return (
        tuple(p for p, _, _ in moved),
        sum(s for _, s, _ in moved),
        sum(a for _, _, a in moved),
    )


def _row(state: SmcState, start: float) -> TraceRow:
    return TraceRow(
        state.step,
        state.epsilon,
        state.simulations,
        state.unique_count,
        time.perf_counter() - start,
    )


def _iterate(  # noqa: PLR0913
    state: SmcState,
    model: GenerativeModel,
    distance: DistanceFunction,
    config: SmcConfig,
    *,
    spent: int,
    start: float,
) -> SmcResult:
    """Run threshold/resample/rejuvenate steps from ``state``.

    ``spent`` simulations count against the budget before the first step.
    """
    trace = ThresholdTrace().append(_row(state, start))
    history = [state] if config.keep_history else []
    fallback = MIXTURE_FALLBACK_SCALE * model.prior.cov
    used = spent

    bar = tqdm(
        total=config.budget,
        initial=min(used, config.budget),
        disable=not config.progress,
        unit="sim",
    )
    with bar:
        while used < config.budget:
            eps = adapt_threshold(state, config.alpha)
            if eps is None:
                logger.info(
                    "threshold cannot decrease below %g; stopping", state.epsilon
                )
                break
            step = state.step + 1
            root = RandomStream(config.seed)

            weights = (state.dists <= eps).astype(float)
            proposal = fit_mixture_proposal(
                state.thetas,
                weights,
                config.mix_components,
                root.child(StreamPurpose.MIXTURE, step),
                fallback_cov=fallback,
            )
            ancestors = systematic_resample(
                weights, root.child(StreamPurpose.RESAMPLE, step)
            )
            resampled = [state.particles[i] for i in ancestors]

            particles, sims, accepted = _rejuvenate(
                resampled, eps, step, model, distance, proposal, config
            )
            used += sims
            state = SmcState(particles, eps, step, state.simulations + sims)
            trace = trace.append(_row(state, start))
            if config.keep_history:
                history.append(state)
            bar.update(min(sims, config.budget - bar.n))
            logger.info(
                "step %d: epsilon=%.6g simulations=%d unique=%d acceptance=%.3f",
                step,
                eps,
                state.simulations,
                state.unique_count,
                accepted / (len(particles) * config.passes),
            )
    return SmcResult(state, trace, tuple(history))


def run(
    model: GenerativeModel,
    observed: Any,
    spec: DistanceSpec,
    config: SmcConfig,
) -> SmcResult:
    """Adaptive ABC-SMC until the budget is spent or the threshold stalls.

    Each step picks the threshold keeping ``ceil(alpha N)`` distinct
    particles, fits a Gaussian mixture to the survivors, resamples them
    systematically and moves every particle with the r-hit kernel. Results
    depend only on ``config.seed``, never on ``config.workers``.

    Parameters
    ----------
    model : GenerativeModel
    observed : PointCloud | Series
    spec : DistanceSpec
    config : SmcConfig

    Returns
    -------
    SmcResult
        Final population, threshold trace and, with ``keep_history``, every
        intermediate population.
    """
    start = time.perf_counter()
    distance = DistanceFunction(spec, observed)
    state = init_population(model, observed, distance, config)
    return _iterate(
        state, model, distance, config, spent=state.simulations, start=start
    )


def run_two_stage(
    stage1: SmcResult | SmcState,
    model: GenerativeModel,
    observed: Any,
    spec: DistanceSpec,
    summary: str,
    config: SmcConfig,
) -> SmcResult:
    """Continue on a summary distance with the stage-one threshold frozen.

    The new distance is ``|eta(y) - eta(z)|`` when the stage-one distance is
    within the stage-one threshold and ``inf`` otherwise, so every accepted
    data set satisfies both. Particle distances are recomputed from their
    cached data sets; stage two has its own simulation budget.

    Parameters
    ----------
    stage1 : SmcResult | SmcState
        Output of :func:`run` with a finite final threshold.
    model : GenerativeModel
    observed : PointCloud | Series
    spec : DistanceSpec
        The stage-one distance.
    summary : str
        Name of the summary statistic.
    config : SmcConfig
        Stage-two settings.

    Raises
    ------
    ValueError
        If no stage-one particle satisfies the frozen constraint.
    """
    start = time.perf_counter()
    state1 = stage1.state if isinstance(stage1, SmcResult) else stage1
    frozen = FrozenConstraint(spec, state1.epsilon)
    stage2 = DistanceSpec("summary", summary=summary, frozen=frozen)
    distance = DistanceFunction(stage2, observed)

    particles = []
    for p in state1.particles:
        primary, dist = distance.pair(p.synthetic, p.theta)
        particles.append(dataclasses.replace(p, dist=dist, primary=primary))
    if not any(math.isfinite(p.dist) for p in particles):
        msg = "no stage-one particle satisfies the frozen constraint"
        raise ValueError(msg)
    logger.info("stage two: frozen threshold %g, summary %r", state1.epsilon, summary)
    # step numbers continue so the kernel streams differ from stage one
    state = SmcState(tuple(particles), math.inf, state1.step, 0)
    return _iterate(state, model, distance, config, spent=0, start=start)


def particle_table(state: SmcState) -> np.ndarray[Any, Any]:
    """Rows ``(theta..., dist)`` of a population."""
    return np.column_stack([state.thetas, state.dists])
