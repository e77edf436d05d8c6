"""Fractional exponential B-splines.

In the Fourier domain the spline of order ``sigma`` with decay ``a`` is

    E_hat(xi) = ((1 - exp(-(a + i xi))) / (a + i xi)) ** sigma

and in the time domain

    E(x) = exp(-a x) / Gamma(sigma) * sum_k binom(sigma, k) (-1)^k (x - k)_+^(sigma - 1).
"""
import math
from dataclasses import dataclass

import numpy as np

from ._backend import USE_NUMBA, njit
from .complex_analysis import principal_power, principal_power_array
from .exceptions import ConfigError, DomainError

_MAX_BINOM_K = 2**53


@dataclass(frozen=True)
class SplineParams:
    """Exponential decay ``a > 0`` and order ``sigma``.

    ``sigma = 1`` is accepted so that the plain truncated exponential can be
    evaluated; everything involving the zeta function needs ``sigma > 1``.
    """

    a: float
    sigma: float

    def __post_init__(self):
        a, sigma = float(self.a), float(self.sigma)
        if not math.isfinite(a) or a <= 0.0:
            raise DomainError(f"a must be positive and finite, got {self.a}")
        if not math.isfinite(sigma) or sigma < 1.0:
            raise DomainError(f"sigma must be >= 1 and finite, got {self.sigma}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "sigma", sigma)

    def as_dict(self):
        return {"a": self.a, "sigma": self.sigma}


@dataclass(frozen=True)
class SeriesTruncation:
    max_terms_K: int = 64
    term_tol: float = 1e-14

    def __post_init__(self):
        if int(self.max_terms_K) != self.max_terms_K or self.max_terms_K < 4:
            raise ConfigError(f"max_terms_K must be an integer >= 4, got {self.max_terms_K}")
        if not self.term_tol > 0:
            raise ConfigError(f"term_tol must be positive, got {self.term_tol}")


DEFAULT_TRUNCATION = SeriesTruncation()


def _gamma_sign(x):
    if x > 0:
        return 1.0
    return -1.0 if math.ceil(-x) % 2 else 1.0


def generalized_binomial(sigma, k):
    """``Gamma(sigma+1) / (Gamma(k+1) Gamma(sigma-k+1))`` via log-Gamma.

    Vanishes whenever ``sigma - k + 1`` hits a pole of Gamma.
    """
    sigma = float(sigma)
    if not sigma > 0:
        raise DomainError(f"generalized_binomial requires sigma > 0, got {sigma}")
    if int(k) != k or k < 0:
        raise DomainError(f"k must be a nonnegative integer, got {k}")
    k = int(k)
    if k > _MAX_BINOM_K:
        raise DomainError(f"k={k} beyond representable range")
    if sigma == math.floor(sigma):
        return float(math.comb(int(sigma), k))
    x = sigma - k + 1.0
    if x <= 0 and x == math.floor(x):
        return 0.0
    logmag = math.lgamma(sigma + 1.0) - math.lgamma(k + 1.0) - math.lgamma(x)
    return _gamma_sign(x) * math.exp(logmag)


def binomial_table(sigma, n_terms):
    """Signed series weights ``binom(sigma, k) (-1)^k`` for ``k < n_terms``."""
    return np.array(
        [generalized_binomial(sigma, k) * (-1.0) ** k for k in range(n_terms)]
    )


@njit
def _bspline_loop(x, a, sigma, weights, inv_gamma, term_tol):
    n = x.shape[0]
    out = np.zeros(n)
    kmax = weights.shape[0] - 1
    expo = sigma - 1.0
    for i in range(n):
        xi = x[i]
        if xi <= 0.0:
            continue
        scale = math.exp(-a * xi) * inv_gamma
        top = int(math.ceil(xi)) - 1
        if top > kmax:
            top = kmax
        acc = 0.0
        for k in range(top + 1):
            t = weights[k] * (xi - k) ** expo * scale
            acc += t
            if k > sigma + 1.0 and abs(t) < term_tol:
                break
        out[i] = acc
    return out


def _bspline_vec(x, a, sigma, weights, inv_gamma, term_tol):
    k = np.arange(weights.shape[0], dtype=np.float64)
    d = x[:, None] - k[None, :]
    pos = d > 0.0
    powd = np.where(pos, np.where(pos, d, 1.0) ** (sigma - 1.0), 0.0)
    scale = np.exp(-a * np.maximum(x, 0.0)) * inv_gamma
    terms = weights[None, :] * powd * scale[:, None]
    stop = (k[None, :] > sigma + 1.0) & (np.abs(terms) < term_tol) & pos
    keep = (np.cumsum(stop, axis=1) - stop) == 0
    out = np.where(keep, terms, 0.0).sum(axis=1)
    return np.where(x > 0.0, out, 0.0)


_bspline_kernel = _bspline_loop if USE_NUMBA else _bspline_vec


class _SeriesCache:
    # Weight tables keyed by (sigma, K); generalized_binomial is scalar Python.
    def __init__(self):
        self._tables = {}

    def get(self, sigma, n_terms):
        key = (sigma, n_terms)
        w = self._tables.get(key)
        if w is None:
            w = binomial_table(sigma, n_terms)
            w.setflags(write=False)
            self._tables[key] = w
        return w


_weights = _SeriesCache()


def eval_time_domain_array(p, x, trunc=DEFAULT_TRUNCATION):
    """Evaluate ``E_a^sigma`` at every point of ``x`` (any shape)."""
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise DomainError("eval_time_domain: non-finite abscissa")
    w = _weights.get(p.sigma, int(trunc.max_terms_K) + 1)
    inv_gamma = math.exp(-math.lgamma(p.sigma))
    flat = np.ascontiguousarray(x.ravel())
    out = _bspline_kernel(flat, p.a, p.sigma, w, inv_gamma, float(trunc.term_tol))
    return out.reshape(x.shape)


def eval_time_domain(p, x, trunc=DEFAULT_TRUNCATION):
    """Time-domain value of the fractional exponential B-spline at ``x``.

    The series is summed over ``k = 0 .. min(ceil(x) - 1, K)`` and stopped
    early once a term past ``k > sigma + 1`` drops below ``trunc.term_tol``.
    Knots contribute nothing at ``x == k``; ``E(x) = 0`` for ``x <= 0``.
    """
    return float(eval_time_domain_array(p, np.array([float(x)]), trunc)[0])


def _fourier_base(a, xi):
    z = a + 1j * xi
    return (1.0 - np.exp(-z)) / z


def fourier_transform(p, xi):
    """``((1 - exp(-(a + i xi))) / (a + i xi)) ** sigma`` on the principal branch.

    For ``a > 0`` the base never vanishes and never reaches the cut.
    """
    xi = float(xi)
    return principal_power(complex(_fourier_base(p.a, xi)), p.sigma)


def fourier_transform_array(p, xi):
    xi = np.asarray(xi, dtype=np.float64)
    return principal_power_array(_fourier_base(p.a, xi), p.sigma)


def fourier_decay_envelope(p, xi):
    """Upper bound ``2**sigma / (a**2 + xi**2)**(sigma/2)`` for ``|E_hat|``."""
    xi = np.asarray(xi, dtype=np.float64)
    return 2.0**p.sigma / (p.a**2 + xi**2) ** (p.sigma / 2.0)


@dataclass(frozen=True)
class MomentGrowth:
    """Decade-wise increments of ``int_0^X xi**n |E_hat(xi)| dxi``."""

    moment: int
    decades: tuple
    increments: tuple
    integrable: bool


def fourier_moment_growth(p, n, first_decade=1, last_decade=6, points_per_period=32):
    """Heuristic integrability test for ``xi -> xi**n |E_hat(xi)|``.

    The integral over each decade ``[10**d, 10**(d+1)]`` is computed with a
    composite trapezoid rule resolving the ``2 pi``-periodic factor.  The
    moment counts as integrable when the decade increments shrink over the
    last three decades.  This is a numerical proxy for the regularity index,
    not a proof.
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"moment order must be a nonnegative integer, got {n}")
    step = 2.0 * math.pi / points_per_period
    decades = tuple(range(first_decade, last_decade))
    increments = []
    for d in decades:
        lo, hi = 10.0**d, 10.0 ** (d + 1)
        m = int(math.ceil((hi - lo) / step))
        xi = np.linspace(lo, hi, m + 1)
        f = xi**n * np.abs(fourier_transform_array(p, xi))
        increments.append(float(np.trapezoid(f, xi)))
    tail = increments[-3:]
    integrable = all(b < a for a, b in zip(tail, tail[1:]))
    return MomentGrowth(int(n), decades, tuple(increments), integrable)
