"""End-to-end runs of the sampler on the benchmark models.

Each model has a reduced run that finishes in seconds and a desk-scale run
marked ``slow``.
"""

import math

import numpy as np
import pytest

from wabc import RandomStream
from wabc.models import (
    AR1,
    Cosine,
    GAndK,
    LevySV,
    MG1Queue,
    NormalLocation,
    normal_location_posterior,
)
from wabc.reference import cloud_w1
from wabc.smc import DistanceSpec, SmcConfig, run, run_two_stage
from wabc.timeseries import EmbeddingSpec


def _observe(model, theta, n, seed):
    return model.simulate(theta, n, RandomStream(seed, (0,)))


def _interval(values, level=0.9):
    return np.quantile(values, [(1 - level) / 2, (1 + level) / 2], axis=0)


##############################################################################
# Normal location

NORMAL_TRUTH = np.array([1.0, -0.5])


def _w1_to_posterior(result, observed, size, seed):
    exact = normal_location_posterior(observed)
    draws = exact.sample(np.random.default_rng(seed), size)
    return np.array([cloud_w1(s.thetas, draws, seed) for s in result.history])


def test_normal_location_approaches_the_posterior():
    """Test that W1 to the exact posterior drops well below its prior value."""
    model = NormalLocation()
    observed = _observe(model, NORMAL_TRUTH, 50, 31)
    config = SmcConfig(128, budget=10_000, seed=31, keep_history=True)
    result = run(model, observed, DistanceSpec(), config)
    w1 = _w1_to_posterior(result, observed, 128, 31)
    assert len(w1) >= 3
    assert w1[-1] < w1[0] / 3
    assert w1[-1] < w1[1]


@pytest.mark.slow()
def test_normal_location_at_desk_scale():
    """Test W1 to the conjugate posterior and its decline over the steps."""
    model = NormalLocation()
    observed = _observe(model, NORMAL_TRUTH, 100, 11)
    config = SmcConfig(512, budget=100_000, seed=11, keep_history=True)
    result = run(model, observed, DistanceSpec(), config)
    w1 = _w1_to_posterior(result, observed, 512, 11)
    assert w1[-1] < 0.4
    assert w1[-1] < w1[1] / 5
    # above the sampling noise floor W1 may only rise by 10% in one step
    trend = [(a, b) for a, b in zip(w1[1:], w1[2:], strict=False) if a > 0.4]
    assert all(b <= 1.1 * a for a, b in trend)


##############################################################################
# AR(1)

AR1_TRUTH = np.array([0.7, 0.9])


def _stationary_variance(thetas):
    thetas = np.atleast_2d(thetas)
    return np.exp(2 * thetas[:, 1]) / (1 - thetas[:, 0] ** 2)


def _variance_error(thetas):
    truth = _stationary_variance(AR1_TRUTH)[0]
    return np.median(np.abs(_stationary_variance(thetas) - truth) / truth)


def _ar1_runs(n, n_particles, budget, seed):
    model = AR1()
    observed = _observe(model, AR1_TRUTH, n, seed)
    config = SmcConfig(n_particles, budget=budget, seed=seed, keep_history=True)
    marginal = DistanceSpec(embedding=EmbeddingSpec("none"))
    delay = DistanceSpec(embedding=EmbeddingSpec("delay", lags=(1,), stride=2))
    return run(model, observed, marginal, config), run(model, observed, delay, config)


def test_ar1_marginal_and_delay_embeddings():
    """Test that only the delay embedding pins down the autocorrelation."""
    marginal, delay = _ar1_runs(200, 128, 6000, 41)
    assert _variance_error(marginal.state.thetas) < 0.75 * _variance_error(
        marginal.history[0].thetas
    )
    phi_marginal = marginal.state.thetas[:, 0]
    phi_delay = delay.state.thetas[:, 0]
    assert phi_marginal.std() > 0.15
    assert phi_delay.std() < phi_marginal.std()
    assert abs(phi_delay.mean() - AR1_TRUTH[0]) < 0.3


@pytest.mark.slow()
def test_ar1_at_desk_scale():
    """Test the stationary variance ridge and the delay posterior mean."""
    marginal, delay = _ar1_runs(1000, 512, 100_000, 41)
    assert _variance_error(marginal.state.thetas) <= 0.25
    assert marginal.state.thetas[:, 0].std() > 0.15
    mean = delay.state.thetas.mean(axis=0)
    assert abs(mean[0] - AR1_TRUTH[0]) <= 0.10
    assert abs(mean[1] - AR1_TRUTH[1]) <= 0.15


##############################################################################
# g-and-k

GANDK_TRUTH = np.array([3.0, 1.0, 2.0, 0.5])


def _gandk_run(n, n_particles, budget, seed):
    model = GAndK()
    observed = _observe(model, GANDK_TRUTH, n, seed)
    config = SmcConfig(n_particles, budget=budget, seed=seed, keep_history=True)
    return run(model, observed, DistanceSpec(), config)


def test_gandk_intervals_cover_the_truth():
    """Test 90% intervals of a, b and k and the narrowing on a."""
    result = _gandk_run(100, 128, 6000, 51)
    lo, hi = _interval(result.state.thetas)
    prior_lo, prior_hi = _interval(result.history[0].thetas)
    for i in (0, 1, 3):
        assert lo[i] <= GANDK_TRUTH[i] <= hi[i]
    assert hi[0] - lo[0] < prior_hi[0] - prior_lo[0]


@pytest.mark.slow()
def test_gandk_at_desk_scale():
    """Test the final threshold and the interval coverage."""
    result = _gandk_run(250, 512, 200_000, 51)
    assert result.state.epsilon <= 0.25
    lo, hi = _interval(result.state.thetas)
    for i in (0, 1, 3):
        assert lo[i] <= GANDK_TRUTH[i] <= hi[i]


##############################################################################
# M/G/1 queue

QUEUE_TRUTH = np.array([1.0, 4.0, 0.2])


def _queue_run(n_particles, budget, seed):
    observed = _observe(MG1Queue(), QUEUE_TRUTH, 50, seed)
    model = MG1Queue.constrained(observed)
    config = SmcConfig(n_particles, budget=budget, seed=seed)
    upper = float(observed.values.min())
    return run(model, observed, DistanceSpec(), config), upper


def test_queue_respects_the_minimum_observation():
    """Test that theta1 stays below min y and concentrates."""
    result, upper = _queue_run(128, 6000, 61)
    theta1 = result.state.thetas[:, 0]
    assert np.all(theta1 <= upper)
    assert theta1.std() < upper / math.sqrt(12)


@pytest.mark.slow()
def test_queue_at_desk_scale():
    """Test that theta1 concentrates well inside its prior."""
    result, upper = _queue_run(512, 500_000, 61)
    theta1 = result.state.thetas[:, 0]
    assert np.all(theta1 <= upper)
    assert theta1.std() < upper / math.sqrt(12) / 3


##############################################################################
# Cosine

COSINE_TRUTH = np.array([1 / 80, math.pi / 4, 0.0, math.log(2)])


def _cosine_runs(n_particles, budget, seed):
    model = Cosine()
    observed = _observe(model, COSINE_TRUTH, 100, seed)
    config = SmcConfig(n_particles, budget=budget, seed=seed)
    curve = DistanceSpec(embedding=EmbeddingSpec("curve"))
    return (
        run(model, observed, curve, config),
        run(model, observed, DistanceSpec("euclidean"), config),
    )


def test_cosine_curve_matching_keeps_the_noise_level():
    """Test that the Euclidean distance shrinks log sigma more than curves do."""
    curve, euclid = _cosine_runs(128, 6000, 71)
    log_sigma = COSINE_TRUTH[2]
    curve_bias = abs(curve.state.thetas[:, 2].mean() - log_sigma)
    euclid_bias = abs(euclid.state.thetas[:, 2].mean() - log_sigma)
    assert curve_bias < euclid_bias


@pytest.mark.slow()
def test_cosine_at_desk_scale():
    """Test the noise level bias of both distances at full budget."""
    curve, euclid = _cosine_runs(512, 100_000, 71)
    log_sigma = COSINE_TRUTH[2]
    assert euclid.state.thetas[:, 2].mean() < log_sigma
    curve_bias = abs(curve.state.thetas[:, 2].mean() - log_sigma)
    assert curve_bias < abs(euclid.state.thetas[:, 2].mean() - log_sigma)


##############################################################################
# Levy-driven stochastic volatility

LEVY_TRUTH = np.array([0.0, 0.0, 0.5, 0.0625, 0.01])


def _levy_runs(n, n_particles, budgets, seed):
    model = LevySV()
    observed = _observe(model, LEVY_TRUTH, n, seed)
    spec = DistanceSpec("hilbert", embedding=EmbeddingSpec("delay", lags=(1,)))
    first, second = budgets
    stage1 = run(model, observed, spec, SmcConfig(n_particles, budget=first, seed=seed))
    config = SmcConfig(n_particles, budget=second, seed=seed)
    stage2 = run_two_stage(stage1, model, observed, spec, "acf", config)
    return model, stage1, stage2


def test_levy_two_stage_refines_the_jump_rate():
    """Test the frozen first threshold and the shift of lambda."""
    _, stage1, stage2 = _levy_runs(500, 128, (3000, 3000), 81)
    assert all(p.primary <= stage1.state.epsilon for p in stage2.state.particles)
    lam1 = np.median(stage1.state.thetas[:, 4])
    lam2 = np.median(stage2.state.thetas[:, 4])
    assert lam2 < lam1


@pytest.mark.slow()
def test_levy_at_desk_scale():
    """Test that stage one leaves lambda at its prior and stage two moves it."""
    model, stage1, stage2 = _levy_runs(2000, 512, (100_000, 50_000), 81)
    prior = model.prior_sample(np.random.default_rng(81), 512)[:, 4:]
    sd = math.sqrt(model.prior.cov[4, 4])
    assert cloud_w1(stage1.state.thetas[:, 4:], prior, 81) < 0.3 * sd
    lam1 = np.median(stage1.state.thetas[:, 4])
    assert np.median(stage2.state.thetas[:, 4]) <= lam1 / 2
