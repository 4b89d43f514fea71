"""Tests for series and their embeddings."""

import itertools

import numpy as np
import pytest

from wabc import GroundMetric
from wabc._cloud import CloudValidationError
from wabc.models import ar1_simulate, ar1_stationary_cov, cosine_simulate
from wabc.timeseries import (
    EmbeddingSpec,
    Series,
    aspect_ratio_lambda,
    curve_embed,
    delay_embed,
    embed,
    residual_reconstruct,
)
from wabc.transport import euclidean_vector_distance, exact_wasserstein, wasserstein_1d


def test_series_shape():
    """Test that a vector becomes a univariate series with times 1..T."""
    s = Series([3.0, 1.0, 2.0])
    assert (s.T, s.dy) == (3, 1)
    assert s.times.tolist() == [1.0, 2.0, 3.0]
    with pytest.raises(CloudValidationError):
        Series([1.0, np.nan])
    with pytest.raises(ValueError, match="d_y=2"):
        Series(np.ones((4, 2))).flat  # noqa: B018


def test_curve_embed():
    """Test that the time index becomes the first coordinate."""
    cloud = curve_embed(Series(np.ones((3, 2))))
    assert cloud.names == ("t", "y1", "y2")
    assert cloud.points[:, 0].tolist() == [1.0, 2.0, 3.0]


def test_aspect_ratio_lambda():
    """Test the time weight heuristic and its undefined cases."""
    y = np.linspace(0.0, 5.0, 50)
    assert aspect_ratio_lambda(y) == pytest.approx(5.0 / 50)
    assert aspect_ratio_lambda(y, H=2.0) == pytest.approx(2 * 5.0 / 50)
    with pytest.raises(ValueError, match="constant"):
        aspect_ratio_lambda(np.ones(10))
    with pytest.raises(ValueError, match="positive"):
        aspect_ratio_lambda(y, V=0.0)


def test_curve_matching_interpolates():
    """Test the limits of the curve-matching distance in the time weight."""
    rng = np.random.default_rng(3)
    y, z = rng.normal(size=20), rng.normal(size=20)
    cy, cz = curve_embed(y), curve_embed(z)
    # lam = 0 compares the marginal distributions
    flat = exact_wasserstein(cy, cz, GroundMetric("curve_match", lam=0.0)).value
    assert flat == pytest.approx(wasserstein_1d(y, z).value)
    # a huge lam forces the index-to-index matching
    span = max(np.ptp(y), np.ptp(z))
    stiff = GroundMetric("curve_match", lam=1e6 * span)
    locked = exact_wasserstein(cy, cz, stiff).value
    vector = euclidean_vector_distance(y[:, None], z[:, None]).value
    assert locked == pytest.approx(vector)
    # in between the value lies between the limits
    mid = GroundMetric("curve_match", lam=aspect_ratio_lambda(y))
    value = exact_wasserstein(cy, cz, mid).value
    assert flat - 1e-12 <= value <= locked + 1e-12


def test_delay_embed_shape():
    """Test the number and dimension of delay vectors."""
    y = np.arange(1.0, 11.0)
    cloud = delay_embed(y, lags=(1, 2), stride=3)
    assert cloud.points.shape == (3, 3)
    assert cloud.points[0].tolist() == [3.0, 2.0, 1.0]
    with pytest.raises(ValueError, match="too short"):
        delay_embed(y[:2], lags=(2,))
    with pytest.raises(ValueError, match="strictly increasing"):
        EmbeddingSpec("delay", lags=(2, 1))


@pytest.mark.parametrize("T", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("p", [1.0, 2.0])
def test_delay_embedding_separates_distinct_series(T, p):
    """Test that lag-1 delay clouds coincide only for the same series."""
    # with distinct entries only the order matters, so one reference suffices
    y = np.arange(T, dtype=float)
    m = GroundMetric(p=p)
    ref = delay_embed(y)
    for order in itertools.permutations(range(T)):
        z = np.array(order, dtype=float)
        value = exact_wasserstein(ref, delay_embed(z), m).value
        if order == tuple(range(T)):
            assert value == 0.0
        else:
            assert value > 1e-12


def test_delay_embed_moments_of_ar1():
    """Test the mean and covariance of delay vectors of a long AR(1) path."""
    s = ar1_simulate([0.7, 0.0], 20_000, np.random.default_rng(6))
    points = delay_embed(s, lags=(1, 2)).points
    np.testing.assert_allclose(points.mean(axis=0), 0.0, atol=0.1)
    np.testing.assert_allclose(
        np.cov(points.T), ar1_stationary_cov(0.7, 1.0, lags=(1, 2)), atol=0.15
    )


def test_residuals_are_standard_normal_at_the_truth():
    """Test that residuals at the generating parameter look N(0, 1)."""
    theta = np.array([0.7, 0.9])
    s = ar1_simulate(theta, 5000, np.random.default_rng(4))
    w = residual_reconstruct(s, "ar1", theta).points[:, 0]
    assert w.size == 4999
    assert abs(w.mean()) < 0.05
    assert w.std() == pytest.approx(1.0, abs=0.05)

    theta = np.array([0.05, 1.0, 0.0, 0.5])
    s = cosine_simulate(theta, 5000, np.random.default_rng(5))
    w = residual_reconstruct(s, "cosine", theta).points[:, 0]
    assert abs(w.mean()) < 0.05
    assert w.std() == pytest.approx(1.0, abs=0.05)


def test_embed_dispatch():
    """Test that embed applies each kind and checks residual inputs."""
    y = np.arange(1.0, 6.0)
    assert embed(y, EmbeddingSpec()).points.shape == (5, 1)
    assert embed(y, EmbeddingSpec("curve")).points.shape == (5, 2)
    assert embed(y, EmbeddingSpec("delay", lags=(1,))).points.shape == (4, 2)
    spec = EmbeddingSpec("residual", model="ar1")
    assert spec.depends_on_theta
    assert embed(y, spec, [0.0, 0.0]).points[:, 0].tolist() == [2.0, 3.0, 4.0, 5.0]
    with pytest.raises(ValueError, match="parameter vector"):
        embed(y, spec)
    with pytest.raises(ValueError, match="unknown residual model"):
        residual_reconstruct(y, "arma", [0.0])
    with pytest.raises(ValueError, match="kind"):
        EmbeddingSpec("spiral")
