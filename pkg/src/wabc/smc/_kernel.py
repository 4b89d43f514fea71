"""The r-hit ABC-MCMC kernel."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

import logging
import math
from typing import TYPE_CHECKING

import numpy as np

from wabc.random import as_generator
from wabc.setup_package import SMC_HITS, SMC_TRIAL_CAP
from wabc.smc._state import Particle

if TYPE_CHECKING:
    from wabc.models import GenerativeModel
    from wabc.random import RandomStream
    from wabc.smc._distance import DistanceFunction
    from wabc.smc._mixture import MixtureProposal
    from wabc.typing import FloatArray

logger = logging.getLogger(__name__)


def _trials_until(  # noqa: PLR0913
    theta: FloatArray,
    hits: int,
    epsilon: float,
    model: GenerativeModel,
    distance: DistanceFunction,
    gen: np.random.Generator,
    cap: int,
) -> tuple[int, Particle | None, bool]:
    """Simulate at ``theta`` until ``hits`` data sets fall within ``epsilon``.

    Returns the number of trials, the particle of the first hit and whether
    the target was reached within ``cap`` trials.
    """
    first: Particle | None = None
    found = trials = 0
    while found < hits:
        if trials >= cap:
            return trials, first, False
        synthetic = model.simulate(theta, distance.n_obs, gen)
        primary, dist = distance.pair(synthetic, theta, gen)
        trials += 1
        if dist <= epsilon:
            found += 1
            if first is None:
                first = Particle(theta, synthetic, dist, primary=primary)
    return trials, first, True


def rhit_mcmc_step(  # noqa: PLR0913
    particle: Particle,
    epsilon: float,
    model: GenerativeModel,
    distance: DistanceFunction,
    proposal: MixtureProposal,
    r: int = SMC_HITS,
    rng: RandomStream | np.random.Generator | None = None,
    *,
    trial_cap: int = SMC_TRIAL_CAP,
) -> tuple[Particle, int]:
    """One step of the r-hit kernel with an independence proposal.

    A parameter ``theta'`` is drawn from ``proposal``. Data sets are simulated
    at ``theta'`` until ``r`` of them fall within ``epsilon`` (``N'`` trials)
    and at the current parameter until ``r - 1`` do (``N`` trials). The move
    is accepted with probability::

        min(1, prior(theta') q(theta) / (prior(theta) q(theta')) * N / (N' - 1))

    which leaves the ABC posterior at threshold ``epsilon`` invariant. An
    accepted particle carries the first hitting data set at ``theta'``.

    Parameters
    ----------
    particle : Particle
        Current state, with ``dist <= epsilon``.
    epsilon : float
        Finite threshold.
    model : GenerativeModel
    distance : DistanceFunction
    proposal : MixtureProposal
    r : int
        Number of hits, ``>= 2``.
    rng : RandomStream | Generator | None
    trial_cap : int, keyword-only
        Trials allowed at each parameter; reaching it rejects the move.

    Returns
    -------
    Particle
        The new state (``particle`` itself on rejection).
    int
        Number of model simulations used.
    """
    if not math.isfinite(epsilon):
        msg = "the r-hit kernel needs a finite threshold"
        raise ValueError(msg)
    if r < 2:  # noqa: PLR2004
        msg = f"r must be >= 2, got {r}"
        raise ValueError(msg)
    gen = as_generator(rng)
    theta = particle.theta
    proposed = proposal.sample(gen)
    log_prior_new = model.prior_logdensity(proposed)
    if log_prior_new == -math.inf:
        return particle, 0

    log_ratio = (
        log_prior_new
        - model.prior_logdensity(theta)
        + float(proposal.logpdf(theta)[0])
        - float(proposal.logpdf(proposed)[0])
    )

    n_new, hit, ok = _trials_until(
        proposed, r, epsilon, model, distance, gen, trial_cap
    )
    if not ok:
        logger.debug("proposal hit the trial cap of %d", trial_cap)
        return particle, n_new
    n_cur, _, ok = _trials_until(theta, r - 1, epsilon, model, distance, gen, trial_cap)
    sims = n_new + n_cur
    if not ok:
        logger.debug("current parameter hit the trial cap of %d", trial_cap)
        return particle, sims

    log_alpha = log_ratio + math.log(n_cur) - math.log(n_new - 1)
    if gen.uniform() < math.exp(min(log_alpha, 0.0)):
        assert hit is not None  # noqa: S101
        return hit, sims
    return particle, sims
