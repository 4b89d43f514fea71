"""Tests for the adaptive ABC-SMC sampler."""

import math

import numpy as np
import pytest

from wabc import RandomStream
from wabc.models import NormalLocation
from wabc.smc import (
    DistanceFunction,
    DistanceSpec,
    FrozenConstraint,
    MixtureProposal,
    NonFiniteDistanceError,
    Particle,
    SmcConfig,
    SmcState,
    ThresholdTrace,
    TraceRow,
    adapt_threshold,
    combined_distance,
    fit_mixture_proposal,
    init_population,
    rhit_mcmc_step,
    run,
    run_two_stage,
    select_threshold,
    systematic_resample,
)

TRUTH = np.array([1.0, -0.5])


@pytest.fixture(scope="module")
def model():
    return NormalLocation()


@pytest.fixture(scope="module")
def observed(model):
    return model.simulate(TRUTH, 20, RandomStream(1, (0,)))


##############################################################################
# Thresholds


def test_select_threshold():
    """Test the quantile rule and the stopping cases."""
    assert select_threshold([4.0, 1.0, 3.0, 2.0], 4, 0.5) == 2.0
    assert select_threshold([4.0, 1.0, 3.0, 2.0], 4, 1.0) == 4.0
    # fewer distinct particles than the target keeps them all
    assert select_threshold([1.0, 2.0], 4, 1.0) == 2.0
    assert select_threshold([1.0, 2.0, 3.0, 4.0], 4, 0.5, previous=2.0) is None
    assert select_threshold([3.0, 3.0, 3.0], 3, 0.5) is None
    assert select_threshold([], 3, 0.5) is None
    assert select_threshold([1.0, math.inf], 2, 1.0) is None


def test_adapt_threshold_uses_distinct_particles():
    """Test that duplicated particles count once."""
    a = Particle([0.0], None, 1.0)
    b = Particle([1.0], None, 2.0)
    c = Particle([2.0], None, 3.0)
    state = SmcState((a, a, a, b, c), math.inf)
    # distinct distances are 1, 2, 3 and ceil(0.4 * 5) = 2
    assert adapt_threshold(state, 0.4) == 2.0
    assert state.unique_count == 3


def test_trace_must_decrease():
    """Test that the threshold trace refuses a non-decreasing threshold."""
    trace = ThresholdTrace().append(TraceRow(0, math.inf, 4, 4, 0.0))
    trace = trace.append(TraceRow(1, 2.0, 10, 3, 0.1))
    with pytest.raises(ValueError, match="decrease strictly"):
        trace.append(TraceRow(2, 2.0, 12, 3, 0.2))
    names, table = trace.as_table()
    assert names[1] == "epsilon"
    assert table.shape == (2, 5)


##############################################################################
# Resampling


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_systematic_resample_counts(seed):
    """Test that every index is drawn floor or ceil of N w times."""
    rng = np.random.default_rng(seed)
    w = rng.exponential(size=50)
    w[3::7] = 0.0
    ancestors = systematic_resample(w, RandomStream(seed))
    assert ancestors.size == 50
    assert np.all(np.diff(ancestors) >= 0)
    counts = np.bincount(ancestors, minlength=50)
    expected = 50 * w / w.sum()
    assert np.all(counts >= np.floor(expected))
    assert np.all(counts <= np.ceil(expected))


def test_systematic_resample_errors():
    """Test the weight validation."""
    with pytest.raises(ValueError, match="all zero"):
        systematic_resample([0.0, 0.0], 1)
    with pytest.raises(ValueError, match="non-negative"):
        systematic_resample([1.0, -0.5], 1)
    with pytest.raises(ValueError, match="finite"):
        systematic_resample([1.0, np.nan], 1)


##############################################################################
# Mixture proposals


def test_mixture_matches_weighted_moments():
    """Test that the fitted mixture keeps the weighted mean and covariance."""
    rng = np.random.default_rng(5)
    x = np.vstack(
        [rng.normal(-2.0, 0.5, size=(150, 2)), rng.normal(3.0, 1.0, size=(150, 2))]
    )
    w = rng.uniform(size=300)
    w[:20] = 0.0
    mix = fit_mixture_proposal(x, w, 3, RandomStream(5))
    assert 1 <= mix.n_components <= 3

    wn = w / w.sum()
    mean = wn @ x
    cov = (wn[:, None] * (x - mean)).T @ (x - mean)
    np.testing.assert_allclose(mix.mean, mean, atol=1e-8)
    np.testing.assert_allclose(mix.cov, cov, atol=1e-6 * np.trace(cov))

    draws = mix.sample(RandomStream(6), 4)
    assert draws.shape == (4, 2)
    assert mix.sample(RandomStream(6)).shape == (2,)
    assert np.all(np.isfinite(mix.logpdf(draws)))


def test_mixture_of_identical_particles():
    """Test the single Gaussian used when all particles coincide."""
    fallback = 0.5 * np.eye(2)
    mix = fit_mixture_proposal(np.ones((5, 2)), np.ones(5), 3, fallback_cov=fallback)
    assert mix.n_components == 1
    np.testing.assert_array_equal(mix.means[0], [1.0, 1.0])
    np.testing.assert_array_equal(mix.covs[0], fallback)


def test_mixture_errors():
    """Test the weight and covariance validation."""
    with pytest.raises(ValueError, match="one per particle"):
        fit_mixture_proposal(np.ones((3, 2)), np.ones(2))
    with pytest.raises(ValueError, match="not all zero"):
        fit_mixture_proposal(np.ones((3, 2)), np.zeros(3))
    with pytest.raises(ValueError, match="probability vector"):
        MixtureProposal(np.array([0.5, 0.6]), np.zeros((2, 1)), np.ones((2, 1, 1)))
    with pytest.raises(ValueError, match="positive definite"):
        MixtureProposal(np.ones(1), np.zeros((1, 1)), -np.ones((1, 1, 1)))


##############################################################################
# r-hit kernel


class _Coins:
    """Three parameters with hit probabilities 0.2, 0.5 and 0.8."""

    probs = np.array([0.2, 0.5, 0.8])

    def __init__(self, prior=(1 / 3, 1 / 3, 1 / 3)):
        self.prior = np.asarray(prior)

    def prior_logdensity(self, theta):
        return math.log(self.prior[int(theta[0])])

    def simulate(self, theta, n, gen):
        return bool(gen.uniform() < self.probs[int(theta[0])])


class _Hit:
    n_obs = 1

    def pair(self, synthetic, theta=None, rng=None):
        return None, 0.0 if synthetic else 1.0


class _Choice:
    """Independence proposal over a few parameter values."""

    def __init__(self, values=(0, 1, 2), weights=None):
        self.values = values
        n = len(values)
        self.weights = np.full(n, 1 / n) if weights is None else np.asarray(weights)

    def sample(self, gen):
        i = gen.choice(len(self.values), p=self.weights)
        return np.array([float(self.values[i])])

    def logpdf(self, theta):
        value = int(theta[0])
        if value not in self.values:
            return np.array([-math.inf])
        return np.array([math.log(self.weights[self.values.index(value)])])


@pytest.mark.parametrize("r", [2, 3])
@pytest.mark.parametrize(
    ("prior", "weights"),
    [((1 / 3, 1 / 3, 1 / 3), None), ((0.5, 0.3, 0.2), (0.6, 0.1, 0.3))],
    ids=["uniform", "weighted"],
)
def test_rhit_kernel_leaves_the_abc_posterior_invariant(r, prior, weights):
    """Test the long-run visit frequencies of the kernel on a toy model."""
    coins, proposal = _Coins(prior), _Choice(weights=weights)
    gen = np.random.default_rng(r)
    particle = Particle([0.0], True, 0.0)
    visits = np.zeros(3)
    steps = 15_000
    for _ in range(steps):
        particle, _ = rhit_mcmc_step(particle, 0.5, coins, _Hit(), proposal, r, gen)
        visits[int(particle.theta[0])] += 1
    target = coins.prior * coins.probs
    target /= target.sum()
    assert 0.5 * np.abs(visits / steps - target).sum() <= 0.05


def test_rhit_kernel_trial_cap_rejects():
    """Test that a proposal that never hits is rejected at the cap."""
    coins = _Coins()
    coins.probs = np.array([0.0, 0.5, 0.8])
    particle = Particle([2.0], True, 0.0)
    new, sims = rhit_mcmc_step(
        particle, 0.5, coins, _Hit(), _Choice((0,)), 2, 1, trial_cap=5
    )
    assert new is particle
    assert sims == 5


def test_rhit_kernel_errors():
    """Test the threshold and hit-count validation."""
    particle = Particle([0.0], True, 0.0)
    with pytest.raises(ValueError, match="finite threshold"):
        rhit_mcmc_step(particle, math.inf, _Coins(), _Hit(), _Choice())
    with pytest.raises(ValueError, match="r must be"):
        rhit_mcmc_step(particle, 0.5, _Coins(), _Hit(), _Choice(), 1)


##############################################################################
# Distances


def test_distance_function(model, observed):
    """Test the distance of the observed data to itself and to a shift."""
    distance = DistanceFunction(DistanceSpec("wasserstein"), observed)
    assert distance.n_obs == 20
    assert distance(observed) == pytest.approx(0.0, abs=1e-12)
    shifted = model.simulate(TRUTH + 3.0, 20, RandomStream(2))
    assert distance(shifted) > 1.0
    with pytest.raises(ValueError, match="method must be"):
        DistanceSpec("energy")
    with pytest.raises(ValueError, match="summary must be"):
        DistanceSpec("summary")
    with pytest.raises(ValueError, match="only used by the summary"):
        DistanceSpec("wasserstein", summary="mean")


def test_combined_distance(model, observed):
    """Test that the secondary is inf whenever the primary is too large."""
    plain = DistanceFunction(DistanceSpec(), observed)
    with pytest.raises(ValueError, match="frozen constraint"):
        combined_distance(plain, observed)

    near = model.simulate(TRUTH, 20, RandomStream(3))
    w = plain(near)
    loose = FrozenConstraint(DistanceSpec(), w + 1.0)
    distance = DistanceFunction(
        DistanceSpec("summary", summary="mean", frozen=loose), observed
    )
    primary, secondary = combined_distance(distance, near)
    assert primary == pytest.approx(w)
    expected = np.linalg.norm(near.points.mean(axis=0) - observed.points.mean(axis=0))
    assert secondary == pytest.approx(expected)

    tight = FrozenConstraint(DistanceSpec(), w / 2)
    distance = DistanceFunction(
        DistanceSpec("summary", summary="mean", frozen=tight), observed
    )
    assert combined_distance(distance, near)[1] == math.inf
    with pytest.raises(ValueError, match="finite"):
        FrozenConstraint(DistanceSpec(), math.inf)


##############################################################################
# Sampler


def test_config_validation():
    """Test the sampler settings checks."""
    with pytest.raises(ValueError, match="n_particles"):
        SmcConfig(1)
    with pytest.raises(ValueError, match="alpha"):
        SmcConfig(10, alpha=0.0)
    with pytest.raises(ValueError, match="hits"):
        SmcConfig(10, hits=1)
    with pytest.raises(ValueError, match="budget"):
        SmcConfig(10, budget=9)
    with pytest.raises(ValueError, match="workers"):
        SmcConfig(10, workers=0)
    with pytest.raises(ValueError, match="seed"):
        SmcConfig(10, seed=-1)


class _InfiniteFirst(DistanceFunction):
    """Reports ``inf`` for the first ``bad`` data sets it sees."""

    def __init__(self, spec, observed, bad):
        super().__init__(spec, observed)
        self.bad = bad
        self.calls = 0

    def pair(self, synthetic, theta=None, rng=None):
        self.calls += 1
        primary, value = super().pair(synthetic, theta, rng)
        return primary, math.inf if self.calls <= self.bad else value


def test_init_population_retries_non_finite_distances(model, observed):
    """Test that an infinite distance is redrawn once, then raised."""
    config = SmcConfig(4, seed=1)
    distance = _InfiniteFirst(DistanceSpec(), observed, bad=1)
    state = init_population(model, observed, distance, config)
    assert state.simulations == 5
    assert np.all(np.isfinite(state.dists))

    distance = _InfiniteFirst(DistanceSpec(), observed, bad=2)
    with pytest.raises(NonFiniteDistanceError, match="particle 0"):
        init_population(model, observed, distance, config)


def test_run_reduces_the_threshold(model, observed):
    """Test the trace and the final population of a small run."""
    config = SmcConfig(64, budget=3000, seed=3, keep_history=True)
    result = run(model, observed, DistanceSpec(), config)
    eps = result.trace.epsilons
    assert eps[0] == math.inf
    assert len(eps) > 2
    assert np.all(np.diff(eps[1:]) < 0)
    assert np.all(np.diff(result.trace.simulations) > 0)
    assert result.trace.simulations[-1] == result.state.simulations
    assert len(result.state) == 64
    assert np.all(result.state.dists <= result.state.epsilon)
    assert len(result.history) == len(eps)
    assert result.history[-1] is result.state


def test_run_does_not_depend_on_workers(model, observed):
    """Test that threads only change the wall time."""
    one = run(model, observed, DistanceSpec(), SmcConfig(32, budget=800, seed=4))
    three = run(
        model, observed, DistanceSpec(), SmcConfig(32, budget=800, seed=4, workers=3)
    )
    np.testing.assert_array_equal(one.state.thetas, three.state.thetas)
    np.testing.assert_array_equal(one.trace.epsilons, three.trace.epsilons)


def test_run_with_budget_of_one_population(model, observed):
    """Test that a budget of N stops after the initial population."""
    result = run(model, observed, DistanceSpec(), SmcConfig(16, budget=16))
    assert len(result.trace) == 1
    assert result.state.epsilon == math.inf
    assert result.state.simulations == 16


def test_run_two_stage_respects_the_frozen_threshold(model, observed):
    """Test that stage two keeps every data set within the stage-one threshold."""
    spec = DistanceSpec()
    stage1 = run(model, observed, spec, SmcConfig(32, budget=600, seed=5))
    assert len(stage1.trace) > 1
    eps1 = stage1.state.epsilon
    stage2 = run_two_stage(
        stage1, model, observed, spec, "mean", SmcConfig(32, budget=600, seed=5)
    )
    assert stage2.trace.rows[0].step == stage1.state.step
    assert stage2.trace.simulations[0] == 0
    assert all(p.primary is not None for p in stage2.state.particles)
    assert all(p.primary <= eps1 for p in stage2.state.particles)
    assert np.all(np.isfinite(stage2.state.dists))
