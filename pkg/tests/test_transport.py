"""Tests for the transport distances."""

import itertools

import numpy as np
import pytest

from wabc import GroundMetric, PointCloud
from wabc.metric import ground_distance
from wabc._cloud import CloudValidationError
from wabc.transport import (
    BandwidthError,
    DegenerateCloudError,
    SinkhornConvergenceError,
    SizeMismatchError,
    brute_force_wasserstein,
    euclidean_vector_distance,
    exact_wasserstein,
    hilbert_distance,
    hilbert_index,
    hilbert_order,
    joint_box,
    median_heuristic_bandwidth,
    mmd_squared,
    sinkhorn_divergence,
    subsample,
    swapping_distance,
    wasserstein_1d,
)


@pytest.fixture()
def rng():
    return np.random.default_rng(12)


@pytest.fixture()
def pair(rng):
    return rng.normal(size=(40, 2)), rng.normal(loc=0.5, size=(40, 2))


##############################################################################
# Exact


def test_wasserstein_1d_sorted_matching():
    """Test the sorted matching on a two-point example."""
    result = wasserstein_1d([0.0, 2.0], [3.0, 1.0])
    assert result.value == 1.0
    assert result.assignment.sigma.tolist() == [1, 0]


def test_wasserstein_1d_matches_assignment_solver(rng):
    """Test that sorting agrees with the assignment solver in 1-D."""
    x, y = rng.normal(size=30), rng.exponential(size=30)
    for p in (1.0, 2.0):
        m = GroundMetric(p=p)
        assert wasserstein_1d(x, y, p).value == pytest.approx(
            exact_wasserstein(x, y, m).value, rel=1e-12
        )


@pytest.mark.parametrize("p", [1.0, 2.0])
def test_exact_matches_brute_force(p):
    """Test the assignment solver against enumeration on random instances."""
    rng = np.random.default_rng(int(p))
    m = GroundMetric(p=p)
    for _ in range(200):
        n, d = rng.integers(1, 8), rng.integers(1, 4)
        x, y = rng.normal(size=(n, d)), rng.normal(size=(n, d))
        assert exact_wasserstein(x, y, m).value == pytest.approx(
            brute_force_wasserstein(x, y, m).value, abs=1e-9
        )


def test_wasserstein_1d_oracle():
    """Test the sorted matching against the assignment solver on many pairs."""
    rng = np.random.default_rng(3)
    for _ in range(100):
        x, y = rng.normal(size=100), rng.standard_t(3, size=100)
        assert wasserstein_1d(x, y).value == pytest.approx(
            exact_wasserstein(x, y).value, abs=1e-10
        )


def test_brute_force_limit():
    """Test that enumeration refuses more than nine points."""
    x = np.zeros((10, 1))
    with pytest.raises(ValueError, match="n <= 9"):
        brute_force_wasserstein(x, x)


def test_exact_oracles():
    """Test hand-computed distances."""
    assert exact_wasserstein([[0.0, 0.0]], [[3.0, 4.0]]).value == 5.0
    l1 = GroundMetric("l1")
    assert exact_wasserstein([[0.0, 0.0]], [[3.0, 4.0]], l1).value == 7.0
    # a translated cloud is at the length of the translation
    x = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    assert exact_wasserstein(x, x + [3.0, 4.0]).value == pytest.approx(5.0)


def test_exact_is_permutation_invariant(pair, rng):
    """Test that the row order of either cloud does not matter."""
    x, y = pair
    base = exact_wasserstein(x, y).value
    assert exact_wasserstein(x[rng.permutation(40)], y).value == pytest.approx(base)
    assert exact_wasserstein(x, y[rng.permutation(40)]).value == pytest.approx(base)


def test_exact_metric_axioms(rng):
    """Test identity, symmetry and the triangle inequality."""
    x, y, z = (rng.normal(size=(12, 2)) + s for s in (0.0, 1.0, -0.5))
    assert exact_wasserstein(x, x).value == 0.0
    assert exact_wasserstein(x, y).value == pytest.approx(
        exact_wasserstein(y, x).value
    )
    for p in (1.0, 2.0):
        m = GroundMetric(p=p)
        xy = exact_wasserstein(x, y, m).value
        yz = exact_wasserstein(y, z, m).value
        xz = exact_wasserstein(x, z, m).value
        assert xz <= xy + yz + 1e-12


def test_exact_assignment_is_optimal(pair):
    """Test that the returned matching realizes the returned value."""
    x, y = pair
    result = exact_wasserstein(x, y)
    sigma = result.assignment.sigma
    assert sorted(sigma.tolist()) == list(range(40))
    cost = np.linalg.norm(x - y[sigma], axis=1).mean()
    assert cost == pytest.approx(result.value)


def test_input_validation():
    """Test the errors for mismatched or invalid clouds."""
    with pytest.raises(SizeMismatchError):
        exact_wasserstein(np.zeros((3, 1)), np.zeros((4, 1)))
    with pytest.raises(CloudValidationError) as err:
        exact_wasserstein(np.zeros((3, 1)), np.zeros((3, 2)))
    assert err.value.reason == "dimension"
    with pytest.raises(CloudValidationError) as err:
        exact_wasserstein([[np.nan]], [[0.0]])
    assert err.value.reason == "non-finite"
    with pytest.raises(CloudValidationError) as err:
        PointCloud(np.empty((0, 2)))
    assert err.value.reason == "empty"
    with pytest.raises(ValueError, match="p must be"):
        GroundMetric(p=0.5)


@pytest.mark.parametrize(
    "m",
    [GroundMetric(), GroundMetric("l1"), GroundMetric("curve_match", lam=0.5)],
    ids=["euclidean", "l1", "curve_match"],
)
def test_ground_distance_metric_axioms(m):
    """Test identity, symmetry and the triangle inequality of the ground metric."""
    rng = np.random.default_rng(9)
    for _ in range(200):
        a, b, c = rng.normal(size=(3, 3))
        ab = ground_distance(a, b, m)
        assert ground_distance(a, a, m) == 0.0
        assert ab > 0
        assert ground_distance(b, a, m) == pytest.approx(ab, abs=1e-12)
        assert ground_distance(a, c, m) <= ab + ground_distance(b, c, m) + 1e-12


##############################################################################
# Hilbert curve


@pytest.mark.parametrize(("d", "bits"), [(2, 1), (2, 4), (3, 2)])
def test_hilbert_index_is_a_continuous_bijection(d, bits):
    """Test that the curve visits every cell once, moving to a neighbour."""
    side = 1 << bits
    box = [(0.0, 1.0)] * d
    visits = {}
    for cell in itertools.product(range(side), repeat=d):
        centre = [(c + 0.5) / side for c in cell]
        visits[hilbert_index(centre, box, bits)] = cell
    assert sorted(visits) == list(range(side**d))
    for i in range(1, side**d):
        step = np.abs(np.subtract(visits[i], visits[i - 1])).sum()
        assert step == 1


def test_hilbert_index_first_order_square():
    """Test the order-1 curve in the unit square."""
    centres = [(0.25, 0.25), (0.25, 0.75), (0.75, 0.75), (0.75, 0.25)]
    box = [(0, 1), (0, 1)]
    assert [hilbert_index(c, box, bits=1) for c in centres] == [0, 1, 2, 3]


def test_hilbert_index_validation():
    """Test the errors for bad boxes, points and bit counts."""
    with pytest.raises(CloudValidationError):
        hilbert_index([0.5, 0.5], [(0, 1)])
    with pytest.raises(CloudValidationError):
        hilbert_index([np.inf, 0.5], [(0, 1), (0, 1)])
    with pytest.raises(ValueError, match="bits"):
        hilbert_index([0.5] * 3, [(0, 1)] * 3, bits=50)


def test_hilbert_order_breaks_ties_by_row():
    """Test that coincident points keep their row order."""
    points = np.array([[1.0, 1.0], [0.0, 0.0], [1.0, 1.0], [0.0, 0.0]])
    order = hilbert_order(points, joint_box(points))
    assert order.tolist() == [1, 3, 0, 2]


def test_hilbert_distance_one_dimension(rng):
    """Test that the Hilbert matching in 1-D is the sorted matching."""
    x, y = rng.normal(size=50), rng.normal(size=50)
    assert hilbert_distance(x, y).value == pytest.approx(
        wasserstein_1d(x, y).value, rel=1e-12
    )


def test_hilbert_distance_shared_box(pair):
    """Test that an explicit box wider than the data gives a valid matching."""
    x, y = pair
    box = np.array([[-10.0, -10.0], [10.0, 10.0]])
    result = hilbert_distance(x, y, box=box)
    assert sorted(result.assignment.sigma.tolist()) == list(range(40))


def test_hilbert_distance_is_a_metric_on_a_shared_box():
    """Test symmetry, identity and the triangle inequality on one curve."""
    rng = np.random.default_rng(8)
    for _ in range(1000):
        x, y, z = (rng.normal(size=(8, 2)) for _ in range(3))
        box = joint_box(x, y, z)
        xy = hilbert_distance(x, y, box=box).value
        yz = hilbert_distance(y, z, box=box).value
        xz = hilbert_distance(x, z, box=box).value
        assert xz <= xy + yz + 1e-12
        assert hilbert_distance(y, x, box=box).value == xy
        assert hilbert_distance(x, x[rng.permutation(8)], box=box).value == 0.0


##############################################################################
# Ordering of the approximations


@pytest.mark.parametrize("p", [1.0, 2.0])
@pytest.mark.parametrize("d", [2, 4])
def test_approximations_bound_the_exact_distance(d, p):
    """Test exact <= swapping <= Hilbert on random pairs."""
    rng = np.random.default_rng(d)
    m = GroundMetric(p=p)
    for _ in range(100):
        x, y = rng.normal(size=(32, d)), rng.normal(loc=0.3, size=(32, d))
        exact = exact_wasserstein(x, y, m).value
        swap = swapping_distance(x, y, m).value
        hilbert = hilbert_distance(x, y, m).value
        assert exact <= swap + 1e-12
        assert swap <= hilbert + 1e-12


@pytest.mark.parametrize(
    "distance",
    [
        lambda x, y: hilbert_distance(x, y).value,
        lambda x, y: swapping_distance(x, y).value,
        lambda x, y: sinkhorn_divergence(x, y, zeta=0.5)[0].value,
        lambda x, y: mmd_squared(x, y, 1.0),
    ],
    ids=["hilbert", "swap", "sinkhorn", "mmd"],
)
def test_approximations_are_permutation_invariant(pair, rng, distance):
    """Test that the row order of either cloud does not matter."""
    x, y = pair
    base = distance(x, y)
    assert distance(x[rng.permutation(40)], y) == pytest.approx(base, abs=1e-12)
    assert distance(x, y[rng.permutation(40)]) == pytest.approx(base, abs=1e-12)


def test_approximations_vanish_on_identical_clouds(pair):
    """Test that every method gives zero for a cloud and itself."""
    x, _ = pair
    assert hilbert_distance(x, x).value == 0.0
    assert swapping_distance(x, x).value == 0.0
    assert euclidean_vector_distance(x, x).value == 0.0


def test_swapping_reaches_the_optimum_on_small_inputs(rng):
    """Test that swapping matches the optimum when a 2-opt move suffices."""
    x = np.array([[0.0], [1.0]])
    y = np.array([[1.0], [0.0]])
    assert swapping_distance(x, y).value == 0.0
    x, y = rng.normal(size=(5, 1)), rng.normal(size=(5, 1))
    assert swapping_distance(x, y).value == pytest.approx(wasserstein_1d(x, y).value)


def test_swapping_sweep_limit(pair):
    """Test that the sweep count is reported and bounded."""
    x, y = pair
    result = swapping_distance(x, y, max_sweeps=1)
    assert result.iterations == 1
    with pytest.raises(ValueError, match="max_sweeps"):
        swapping_distance(x, y, max_sweeps=0)


##############################################################################
# Sinkhorn


def test_sinkhorn_upper_bounds_exact_cost(pair):
    """Test that the regularized plan costs at least the optimum."""
    x, y = pair
    result, plan = sinkhorn_divergence(x, y)
    assert result.value >= exact_wasserstein(x, y).value - 1e-8
    assert plan.marginal_violation() <= 1e-8
    assert result.iterations >= 1


def test_sinkhorn_small_zeta_approaches_exact(rng):
    """Test that a small regularization approaches the exact cost."""
    x, y = rng.normal(size=(15, 2)), rng.normal(size=(15, 2)) + 2.0
    exact = exact_wasserstein(x, y).value
    result, _ = sinkhorn_divergence(x, y, zeta=0.02, tol=1e-6, max_iter=100_000)
    assert result.value == pytest.approx(exact, rel=0.05)


def test_sinkhorn_unequal_sizes(rng):
    """Test that clouds of different sizes are supported."""
    x, y = rng.normal(size=(10, 2)), rng.normal(size=(25, 2))
    _, plan = sinkhorn_divergence(x, y)
    assert plan.gamma.shape == (10, 25)
    assert plan.gamma.sum(axis=0) == pytest.approx(np.full(25, 1 / 25))


def test_sinkhorn_single_point():
    """Test that a single point is coupled independently."""
    result, plan = sinkhorn_divergence([[0.0]], [[1.0], [3.0]])
    assert result.value == pytest.approx(2.0)
    assert plan.gamma.tolist() == [[0.5, 0.5]]


def test_sinkhorn_cost_decreases_with_zeta(rng):
    """Test that a smaller regularization gives a cheaper plan."""
    x, y = rng.normal(size=(10, 2)), rng.normal(size=(10, 2)) + 1.0
    values = [
        sinkhorn_divergence(x, y, zeta=zeta, tol=1e-7, max_iter=200_000)[0].value
        for zeta in (1.0, 0.1, 0.01)
    ]
    assert values[0] >= values[1] >= values[2]
    assert values[2] >= exact_wasserstein(x, y).value - 1e-5


def test_sinkhorn_errors(pair):
    """Test the errors for a bad regularization and non-convergence."""
    x, y = pair
    with pytest.raises(ValueError, match="zeta"):
        sinkhorn_divergence(x, y, zeta=0.0)
    with pytest.raises(SinkhornConvergenceError) as err:
        sinkhorn_divergence(x, y, zeta=1e-3, max_iter=1)
    assert err.value.iterations == 1
    assert err.value.violation > 0


##############################################################################
# MMD


def test_mmd_properties(pair):
    """Test that the MMD is zero on identical clouds, symmetric and positive."""
    x, y = pair
    assert mmd_squared(x, x, 1.0) == pytest.approx(0.0, abs=1e-12)
    assert mmd_squared(x, y, 1.0) == pytest.approx(mmd_squared(y, x, 1.0))
    assert mmd_squared(x, y, 1.0) > 0
    with pytest.raises(BandwidthError):
        mmd_squared(x, y, 0.0)


def test_mmd_of_single_points():
    """Test the closed form for two singletons and the wide-kernel limit."""
    a, b = [[0.0, 0.0]], [[3.0, 4.0]]
    assert mmd_squared(a, b, 2.0) == pytest.approx(2 - 2 * np.exp(-25 / 8))
    assert mmd_squared(a, b, 1e6) == pytest.approx(0.0, abs=1e-10)


def test_median_heuristic():
    """Test the bandwidth heuristic and its degenerate cases."""
    assert median_heuristic_bandwidth([[0.0, 0.0], [1.0, 1.0]]) == 2.0
    with pytest.raises(DegenerateCloudError):
        median_heuristic_bandwidth(np.ones((5, 2)))
    with pytest.raises(ValueError, match="n >= 2"):
        median_heuristic_bandwidth([[0.0]])


##############################################################################
# Sub-sampling and the vector distance


def test_subsample_keeps_rows_in_order(rng):
    """Test that sub-sampling draws distinct rows in their original order."""
    x = PointCloud(np.arange(20.0)[:, None])
    sub = subsample(x, 7, rng)
    values = sub.points[:, 0]
    assert sub.n == 7
    assert np.all(np.diff(values) > 0)
    assert subsample(x, 20, rng) is x
    with pytest.raises(ValueError, match="subsample size"):
        subsample(x, 0, rng)


def test_vector_distance_depends_on_order():
    """Test that the vector distance compares rows pairwise."""
    x = [[0.0], [1.0]]
    assert euclidean_vector_distance(x, [[1.0], [0.0]]).value == 1.0
    assert exact_wasserstein(x, [[1.0], [0.0]]).value == 0.0
