"""Sampler configuration."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from dataclasses import KW_ONLY, dataclass

from wabc.setup_package import (
    DEFAULT_SEED,
    SMC_ALPHA,
    SMC_BUDGET,
    SMC_HITS,
    SMC_MIX_COMPONENTS,
    SMC_N_PARTICLES,
    SMC_TRIAL_CAP,
)


@dataclass(frozen=True, slots=True)
class SmcConfig:
    """Settings of the adaptive ABC-SMC sampler.

    Parameters
    ----------
    n_particles : int
        Population size ``N >= 2``.
    alpha : float, keyword-only
        Fraction of unique particles kept by each threshold, in ``(0, 1]``.
    hits : int, keyword-only
        Number of hits ``r >= 2`` of the rejuvenation kernel.
    mix_components : int, keyword-only
        Components of the Gaussian-mixture proposal.
    budget : int, keyword-only
        Model simulations after which the sampler stops, ``>= N``.
    seed : int, keyword-only
        Root seed of every random stream.
    workers : int, keyword-only
        Threads used to rejuvenate particles. Results do not depend on it.
    passes : int, keyword-only
        Kernel applications per particle and step.
    trial_cap : int, keyword-only
        Simulations allowed per parameter within one kernel step.
    keep_history : bool, keyword-only
        Keep the population of every step.
    progress : bool, keyword-only
        Show a progress bar over the budget.
    """

    n_particles: int = SMC_N_PARTICLES
    _: KW_ONLY
    alpha: float = SMC_ALPHA
    hits: int = SMC_HITS
    mix_components: int = SMC_MIX_COMPONENTS
    budget: int = SMC_BUDGET
    seed: int = DEFAULT_SEED
    workers: int = 1
    passes: int = 1
    trial_cap: int = SMC_TRIAL_CAP
    keep_history: bool = False
    progress: bool = False

    def __post_init__(self) -> None:
        if self.n_particles < 2:  # noqa: PLR2004
            msg = f"n_particles must be >= 2, got {self.n_particles}"
            raise ValueError(msg)
        if not 0 < self.alpha <= 1:
            msg = f"alpha must lie in (0, 1], got {self.alpha}"
            raise ValueError(msg)
        if self.hits < 2:  # noqa: PLR2004
            msg = f"hits must be >= 2, got {self.hits}"
            raise ValueError(msg)
        for name in ("mix_components", "workers", "passes", "trial_cap"):
            if getattr(self, name) < 1:
                msg = f"{name} must be >= 1, got {getattr(self, name)}"
                raise ValueError(msg)
        if self.budget < self.n_particles:
            msg = (
                f"budget ({self.budget}) must cover the initial population "
                f"({self.n_particles})"
            )
            raise ValueError(msg)
        if not 0 <= self.seed < 2**64:
            msg = f"seed must be a 64-bit unsigned integer, got {self.seed}"
            raise ValueError(msg)
