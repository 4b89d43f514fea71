"""Gaussian-mixture proposals fitted by weighted EM."""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from dataclasses import dataclass, field
import logging
from typing import TYPE_CHECKING

import numpy as np
from scipy.special import logsumexp

from wabc._stats.norm import mvn_logpdf
from wabc.random import as_generator
from wabc.setup_package import COV_JITTER, EM_MAX_ITER, EM_REL_TOL, SMC_MIX_COMPONENTS

if TYPE_CHECKING:
    from wabc.random import RandomStream
    from wabc.typing import ArrayLike, FloatArray

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class MixtureProposal:
    """Mixture of multivariate Normal distributions.

    Parameters
    ----------
    weights : (K,) ndarray
        Mixing weights summing to one.
    means : (K, d) ndarray
    covs : (K, d, d) ndarray
        Symmetric positive definite.
    """

    weights: FloatArray
    means: FloatArray
    covs: FloatArray
    _chols: FloatArray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        means = np.asarray(self.means, dtype=float).reshape(w.size, -1)
        d = means.shape[1]
        covs = np.asarray(self.covs, dtype=float).reshape(w.size, d, d)
        if np.any(w < 0) or not np.isclose(w.sum(), 1.0):
            msg = f"mixture weights must be a probability vector, got {w}"
            raise ValueError(msg)
        try:
            chols = np.linalg.cholesky(covs)
        except np.linalg.LinAlgError:
            msg = "mixture covariances must be positive definite"
            raise ValueError(msg) from None
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "covs", covs)
        object.__setattr__(self, "_chols", chols)

    @property
    def n_components(self) -> int:
        return int(self.weights.size)

    @property
    def dim(self) -> int:
        return int(self.means.shape[1])

    @property
    def mean(self) -> FloatArray:
        """Mean of the mixture."""
        return self.weights @ self.means

    @property
    def cov(self) -> FloatArray:
        """Covariance of the mixture."""
        m = self.mean
        second = np.einsum("k,kij->ij", self.weights, self.covs)
        second += np.einsum("k,ki,kj->ij", self.weights, self.means, self.means)
        return second - np.outer(m, m)

    def _component_logpdf(self, x: FloatArray) -> FloatArray:
        return np.stack(
            [mvn_logpdf(x, mu, c) for mu, c in zip(self.means, self.covs, strict=True)],
            axis=1,
        )

    def logpdf(self, theta: ArrayLike) -> FloatArray:
        """Log-density at each row of ``theta``."""
        x = np.atleast_2d(np.asarray(theta, dtype=float))
        return logsumexp(self._component_logpdf(x) + np.log(self.weights), axis=1)

    def sample(
        self, rng: RandomStream | np.random.Generator, size: int | None = None
    ) -> FloatArray:
        """One draw (``size=None``) or ``size`` draws as rows."""
        gen = as_generator(rng)
        m = 1 if size is None else size
        comp = gen.choice(self.n_components, size=m, p=self.weights)
        z = gen.standard_normal((m, self.dim))
        out = self.means[comp] + np.einsum("nij,nj->ni", self._chols[comp], z)
        return out[0] if size is None else out


def _weighted_cov(x: FloatArray, w: FloatArray, mean: FloatArray) -> FloatArray:
    diff = x - mean
    return (w[:, None] * diff).T @ diff


def _kmeans_pp(
    x: FloatArray, w: FloatArray, k: int, gen: np.random.Generator
) -> FloatArray:
    """k-means++ seeding with probabilities scaled by the weights."""
    centers = [x[gen.choice(x.shape[0], p=w)]]
    for _ in range(1, k):
        d2 = np.min(
            [np.einsum("ij,ij->i", x - c, x - c) for c in centers], axis=0
        )
        score = w * d2
        if score.sum() <= 0:
            break
        centers.append(x[gen.choice(x.shape[0], p=score / score.sum())])
    return np.array(centers)


def _em(
    x: FloatArray,
    w: FloatArray,
    centers: FloatArray,
    jitter: FloatArray,
    *,
    max_iter: int,
    tol: float,
) -> MixtureProposal:
    k, d = centers.shape
    pop_mean = w @ x
    pop_cov = _weighted_cov(x, w, pop_mean) + jitter
    mix = MixtureProposal(np.full(k, 1 / k), centers, np.repeat(pop_cov[None], k, 0))
    previous = -np.inf
    for it in range(max_iter):
        # E-step
        logp = mix._component_logpdf(x) + np.log(mix.weights)
        norm = logsumexp(logp, axis=1)
        resp = np.exp(logp - norm[:, None])
        loglik = float(w @ norm)

        # M-step
        wr = w[:, None] * resp
        mass = wr.sum(axis=0)
        keep = mass > np.finfo(float).tiny
        wr, mass = wr[:, keep], mass[keep]
        means = (wr.T @ x) / mass[:, None]
        covs = np.stack(
            [
                _weighted_cov(x, wr[:, j] / mass[j], means[j]) + jitter
                for j in range(mass.size)
            ]
        )
        mix = MixtureProposal(mass / mass.sum(), means, covs)

        if abs(loglik - previous) <= tol * abs(loglik):
            logger.debug("EM converged after %d iterations", it + 1)
            break
        previous = loglik
    return mix


def fit_mixture_proposal(
    particles: ArrayLike,
    weights: ArrayLike,
    K: int = SMC_MIX_COMPONENTS,  # noqa: N803
    rng: RandomStream | np.random.Generator | None = None,
    *,
    fallback_cov: ArrayLike | None = None,
    max_iter: int = EM_MAX_ITER,
    tol: float = EM_REL_TOL,
) -> MixtureProposal:
    """Fit a ``K``-component Gaussian mixture to weighted particles.

    EM starts from a weighted k-means++ seeding and stops after ``max_iter``
    iterations or when the relative change of the weighted log-likelihood
    falls below ``tol``; it always ends on an M-step, so the mixture mean and
    covariance equal the weighted particle moments up to the diagonal
    regularization ``1e-8 * trace / d``. Covariances are the biased
    (weights summing to one) estimates.

    Parameters
    ----------
    particles : (N, d) array-like
    weights : (N,) array-like
        Non-negative, not all zero.
    K : int
        Maximum number of components. Fewer are used when there are fewer
        distinct particles or a fit is singular.
    rng : RandomStream | Generator | None
        Stream of the k-means++ seeding.
    fallback_cov : (d, d) array-like, optional keyword-only
        Covariance used when all particles coincide. Defaults to the
        identity.

    Returns
    -------
    MixtureProposal
    """
    x = np.atleast_2d(np.asarray(particles, dtype=float))
    w = np.asarray(weights, dtype=float).reshape(-1)
    if w.shape[0] != x.shape[0] or np.any(w < 0) or w.sum() <= 0:
        msg = "weights must be non-negative, not all zero, one per particle"
        raise ValueError(msg)
    alive = w > 0
    x, w = x[alive], w[alive] / w[alive].sum()
    d = x.shape[1]

    n_distinct = np.unique(x, axis=0).shape[0]
    if n_distinct == 1:
        cov = (
            np.eye(d) if fallback_cov is None else np.asarray(fallback_cov, dtype=float)
        )
        logger.info("all particles coincide; using a single Gaussian proposal")
        return MixtureProposal(np.ones(1), x[:1], cov.reshape(1, d, d))

    pop_cov = _weighted_cov(x, w, w @ x)
    jitter = COV_JITTER * max(np.trace(pop_cov) / d, np.finfo(float).tiny) * np.eye(d)
    gen = as_generator(rng)
    for k in range(min(K, n_distinct), 0, -1):
        centers = _kmeans_pp(x, w, k, gen)
        try:
            return _em(x, w, centers, jitter, max_iter=max_iter, tol=tol)
        except (np.linalg.LinAlgError, ValueError) as err:
            logger.debug("mixture fit with %d components failed: %s", k, err)
    msg = "could not fit a Gaussian mixture to the particles"
    raise RuntimeError(msg)
