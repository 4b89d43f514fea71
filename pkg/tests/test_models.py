"""Tests for the generative models."""

import math

import numpy as np
import pytest
from scipy.special import ndtr
from scipy.stats import multivariate_normal, norm

from wabc import PointCloud, RandomStream, Series
from wabc.models import (
    AR1,
    MODEL_REGISTRY,
    SUMMARY_REGISTRY,
    MG1Queue,
    NormalLocation,
    ToggleSwitch,
    acf_summary,
    ar1_loglik,
    ar1_simulate,
    ar1_stationary_cov,
    bigandk_loglik,
    bigandk_simulate,
    gandk_logpdf,
    gandk_quantile,
    gandk_simulate,
    get_model,
    levy_sv_simulate,
    mg1_recursion,
    mg1_simulate,
    normal_location_posterior,
)
from wabc.models._toggle import LEVEL_FLOOR, _redraw_zero_levels
from wabc.params import ParameterSupportError

GANDK_THETA = np.array([3.0, 1.0, 2.0, 0.5])


def _values(data):
    return data.values if isinstance(data, Series) else data.points


def test_registry():
    """Test that every model is registered under its name."""
    assert set(MODEL_REGISTRY) == {
        "normal_location",
        "gandk",
        "bigandk",
        "toggleswitch",
        "mg1",
        "ar1",
        "cosine",
        "levy_sv",
    }
    assert get_model("toggleswitch", T=10).T == 10
    with pytest.raises(ValueError, match="unknown model"):
        get_model("lotka_volterra")


@pytest.mark.parametrize("name", sorted(MODEL_REGISTRY))
def test_simulate_is_reproducible(name):
    """Test that a stream fixes the simulated data set."""
    model = get_model(name, T=20) if name == "toggleswitch" else get_model(name)
    theta = model.prior_sample(RandomStream(7))
    assert model.param_space.contains(theta)
    a = model.simulate(theta, 30, RandomStream(1, (0,)))
    b = model.simulate(theta, 30, RandomStream(1, (0,)))
    assert len(a) == 30
    assert isinstance(a, Series if model.output == "series" else PointCloud)
    np.testing.assert_array_equal(_values(a), _values(b))


def test_simulate_checks_support():
    """Test that parameters outside the prior support are refused."""
    model = get_model("gandk")
    with pytest.raises(ParameterSupportError, match="'b'"):
        model.simulate([3.0, -1.0, 2.0, 0.5], 10)
    with pytest.raises(ValueError, match="n must be"):
        model.simulate(GANDK_THETA, 0)


def test_prior_density():
    """Test the prior log-density inside and outside the support."""
    model = get_model("gandk")
    assert model.prior_logdensity(GANDK_THETA) == pytest.approx(4 * math.log(0.1))
    assert model.prior_logdensity([11.0, 1.0, 2.0, 0.5]) == -math.inf
    with pytest.raises(NotImplementedError):
        get_model("toggleswitch").loglik(np.zeros(7), None)


##############################################################################
# Normal location


def test_normal_posterior_matches_bayes_rule():
    """Test that the closed-form posterior is prior times likelihood."""
    model = NormalLocation()
    data = model.simulate([1.0, -0.5], 20, RandomStream(3))
    post = normal_location_posterior(data)
    a, b = np.array([0.9, -0.4]), np.array([1.3, -0.8])

    def unnormalized(t):
        return model.loglik(t, data) + model.prior_logdensity(t)

    lhs = float(post.logpdf(a)[0] - post.logpdf(b)[0])
    assert lhs == pytest.approx(unnormalized(a) - unnormalized(b), rel=1e-9)


##############################################################################
# g-and-k


def test_gandk_quantile():
    """Test the median and the quantile validation."""
    assert float(gandk_quantile(0.5, GANDK_THETA)) == pytest.approx(3.0)
    with pytest.raises(ValueError, match=r"\(0, 1\)"):
        gandk_quantile(1.0, GANDK_THETA)


def test_gandk_logpdf_is_the_change_of_variables():
    """Test the density against a numerical quantile derivative."""
    z = np.linspace(-2.5, 2.5, 11)
    h = 1e-5
    y = gandk_quantile(ndtr(z), GANDK_THETA)
    slope = (
        gandk_quantile(ndtr(z + h), GANDK_THETA)
        - gandk_quantile(ndtr(z - h), GANDK_THETA)
    ) / (2 * h)
    expected = norm.logpdf(z) - np.log(slope)
    actual = gandk_logpdf(y, GANDK_THETA)
    np.testing.assert_allclose(actual, expected, rtol=1e-5, atol=1e-5)


def test_gandk_sample_median():
    """Test the sample median against the location parameter."""
    y = gandk_simulate(GANDK_THETA, 20_000, RandomStream(2)).points[:, 0]
    assert np.median(y) == pytest.approx(3.0, abs=0.05)


def test_bigandk_factorizes_without_correlation():
    """Test that rho = 0 gives the sum of the marginal log-densities."""
    theta = np.array([3.0, 1.0, 1.0, 0.5, 4.0, 0.5, 2.0, 0.5, 0.0])
    data = bigandk_simulate(theta, 50, RandomStream(9))
    expected = gandk_logpdf(data.points[:, 0], theta[:4]).sum() + gandk_logpdf(
        data.points[:, 1], theta[4:8]
    ).sum()
    assert bigandk_loglik(theta, data) == pytest.approx(expected, rel=1e-8)
    assert get_model("bigandk").loglik(np.r_[theta[:8], 1.0], data) == -math.inf


##############################################################################
# Toggle switch


def test_toggleswitch_observations_are_non_negative():
    """Test that the truncated observations stay non-negative."""
    model = ToggleSwitch(T=50)
    theta = [22.0, 12.0, 4.0, 4.5, 325.0, 0.25, 0.15]
    y = model.simulate(theta, 200, RandomStream(4)).points[:, 0]
    assert np.all(np.isfinite(y))
    assert np.all(y >= 0)
    with pytest.raises(ValueError, match="T must be"):
        ToggleSwitch(T=0).simulate(theta, 5)


def test_toggleswitch_cells_that_die_out():
    """Test that a terminal level of zero still gives finite observations."""
    model = ToggleSwitch(T=50, innovation_scale=0.0)
    y = model.simulate([0.5, 0.5, 1, 1, 300, 0.2, 0.3], 5, RandomStream(4)).points
    assert np.all(np.isfinite(y))
    assert np.all(y >= 0)


def test_toggleswitch_zero_levels_are_redrawn():
    """Test the redraw of zero levels and the fallback floor."""
    gen = np.random.default_rng(0)
    u = _redraw_zero_levels(np.array([0.0, 2.0]), np.array([5.0, 2.0]), 1.0, gen)
    assert u[0] > 0
    assert u[1] == 2.0
    u = _redraw_zero_levels(np.zeros(3), np.full(3, -50.0), 0.0, gen)
    assert u.tolist() == [LEVEL_FLOOR] * 3


##############################################################################
# M/G/1 queue


def test_mg1_recursion_by_hand():
    """Test a queue that empties before the last arrival."""
    y = mg1_recursion([1.0, 1.0, 1.0], [0.0, 0.0, 5.0]).flat
    assert y.tolist() == [1.0, 1.0, 4.0]
    with pytest.raises(ValueError, match="lengths differ"):
        mg1_recursion([1.0], [1.0, 2.0])


def test_mg1_interdepartures_exceed_service_floor():
    """Test that no interdeparture time is below the smallest service time."""
    theta = [1.0, 4.0, 0.2]
    y = mg1_simulate(theta, 500, RandomStream(5)).flat
    assert np.all(y >= 1.0)
    model = MG1Queue.constrained(Series(y))
    assert model.prior.space.upper[0] == pytest.approx(y.min())
    with pytest.raises(ValueError, match="positive"):
        MG1Queue(theta1_upper=0.0)


##############################################################################
# AR(1)


def test_ar1_loglik_matches_dense_normal():
    """Test the factorized likelihood against the joint Gaussian density."""
    phi, log_sigma = 0.6, 0.3
    y = ar1_simulate([phi, log_sigma], 30, RandomStream(6)).flat
    cov = ar1_stationary_cov(phi, math.exp(log_sigma), tuple(range(1, 30)))
    expected = multivariate_normal(np.zeros(30), cov).logpdf(y)
    assert ar1_loglik([phi, log_sigma], y) == pytest.approx(expected, rel=1e-9)
    assert ar1_loglik([1.0, 0.0], y) == -math.inf


def test_ar1_stationary_variance():
    """Test the sample variance against sigma**2 / (1 - phi**2)."""
    y = ar1_simulate([0.7, 0.9], 100_000, RandomStream(8)).flat
    assert y.var() == pytest.approx(math.exp(1.8) / 0.51, rel=0.05)
    assert AR1().embedding_default.kind == "delay"


##############################################################################
# Stochastic volatility


def test_levy_sv_mean_square():
    """Test that the mean squared return is the mean volatility."""
    y = levy_sv_simulate([0.0, 0.0, 0.5, 0.0625, 1.0], 20_000, RandomStream(10)).flat
    assert np.all(np.isfinite(y))
    assert np.mean(y**2) == pytest.approx(0.5, rel=0.1)
    with pytest.raises(ValueError, match="positive"):
        levy_sv_simulate([0.0, 0.0, 0.5, 0.0625, 0.0], 10)


##############################################################################
# Summaries


def test_summaries():
    """Test the summary registry and the autocorrelation errors."""
    assert set(SUMMARY_REGISTRY) == {"mean", "acf"}
    assert SUMMARY_REGISTRY["mean"]([[1.0, 2.0], [3.0, 4.0]]).tolist() == [2.0, 3.0]
    with pytest.raises(ValueError, match="univariate"):
        acf_summary(np.ones((60, 2)))
    with pytest.raises(ValueError, match="too short"):
        acf_summary(np.arange(50.0))
    with pytest.raises(ValueError, match="constant"):
        acf_summary(np.ones(60))
