"""Principal-branch complex powers and the Hurwitz zeta function.

The Hurwitz zeta function ``zeta(s, q) = sum_{k>=0} (q + k)**(-s)`` is
evaluated for real ``s > 1`` and complex ``q`` with ``Re q >= 0`` by a direct
sum over the first ``N`` terms followed by an Euler--Maclaurin tail.
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._backend import USE_NUMBA, njit
from .exceptions import ConfigError, DomainError, PrecisionError

# B_2, B_4, ..., B_24 as exact rationals.
BERNOULLI_EVEN = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
)

# B_{2j} / (2j)!
_EM_COEF = np.array(
    [b / math.factorial(2 * (j + 1)) for j, b in enumerate(BERNOULLI_EVEN)]
)


@dataclass(frozen=True)
class ZetaConfig:
    """Truncation settings for :func:`hurwitz_zeta`.

    ``cutoff_N`` terms are summed directly, ``bernoulli_terms_J`` correction
    terms are used in the tail, and the magnitude of the last correction is
    compared against ``target_abs_tol``.
    """

    cutoff_N: int = 25
    bernoulli_terms_J: int = 8
    target_abs_tol: float = 1e-12

    def __post_init__(self):
        if int(self.cutoff_N) != self.cutoff_N or self.cutoff_N < 8:
            raise ConfigError(f"cutoff_N must be an integer >= 8, got {self.cutoff_N}")
        if int(self.bernoulli_terms_J) != self.bernoulli_terms_J or not (
            1 <= self.bernoulli_terms_J <= len(BERNOULLI_EVEN)
        ):
            raise ConfigError(
                f"bernoulli_terms_J must be in [1, {len(BERNOULLI_EVEN)}], "
                f"got {self.bernoulli_terms_J}"
            )
        if not (self.target_abs_tol > 0 and math.isfinite(self.target_abs_tol)):
            raise ConfigError(f"target_abs_tol must be positive, got {self.target_abs_tol}")


DEFAULT_ZETA = ZetaConfig()


def _clean(z):
    # -0.0 imaginary parts would put a negative real base on the wrong side
    # of the cut.
    z = complex(z)
    return complex(z.real + 0.0, z.imag + 0.0)


def principal_power(base, exponent):
    """Return ``base**exponent`` on the principal branch, ``Arg in (-pi, pi]``."""
    base = _clean(base)
    if base == 0:
        raise DomainError("principal_power: zero base")
    exponent = float(exponent)
    w = cmath.exp(exponent * cmath.log(base))
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise DomainError(f"principal_power overflow for base={base!r}, exponent={exponent}")
    return w


def principal_power_array(base, exponent):
    """Vectorised :func:`principal_power` over an array of nonzero bases."""
    base = np.asarray(base, dtype=np.complex128) + 0.0
    if np.any(base == 0):
        raise DomainError("principal_power: zero base")
    return np.exp(float(exponent) * np.log(base))


@njit
def _zeta_loop(sigma, q, n_direct, coef):
    n = q.shape[0]
    out = np.empty(n, dtype=np.complex128)
    err = np.empty(n, dtype=np.float64)
    bad = np.zeros(n, dtype=np.bool_)
    for i in range(n):
        z = q[i]
        acc = 0j
        for k in range(n_direct - 1, -1, -1):
            acc += cmath.exp(-sigma * cmath.log(z + k))
        w = z + n_direct
        p = cmath.exp(-sigma * cmath.log(w))
        acc += w * p / (sigma - 1.0) + 0.5 * p
        wpow = p / w
        inv_w2 = 1.0 / (w * w)
        poch = sigma
        prev = np.inf
        last = 0.0
        for j in range(coef.shape[0]):
            if j > 0:
                poch *= (sigma + 2 * j - 1) * (sigma + 2 * j)
                wpow *= inv_w2
            term = coef[j] * poch * wpow
            mag = abs(term)
            if mag > prev:
                bad[i] = True
            prev = mag
            last = mag
            acc += term
        out[i] = acc
        err[i] = last
    return out, err, bad


def _zeta_vec(sigma, q, n_direct, coef):
    k = np.arange(n_direct - 1, -1, -1, dtype=np.float64)
    acc = np.exp(-sigma * np.log(q[:, None] + k[None, :])).sum(axis=1)
    w = q + n_direct
    p = np.exp(-sigma * np.log(w))
    acc = acc + w * p / (sigma - 1.0) + 0.5 * p
    j = np.arange(coef.shape[0])
    poch = np.cumprod(np.where(j == 0, sigma, (sigma + 2 * j - 1) * (sigma + 2 * j)))
    terms = (coef * poch)[None, :] * (p / w)[:, None] * w[:, None] ** (-2 * j[None, :])
    acc = acc + terms.sum(axis=1)
    mags = np.abs(terms)
    bad = np.any(mags[:, 1:] > mags[:, :-1], axis=1)
    return acc, mags[:, -1], bad


_zeta_kernel = _zeta_loop if USE_NUMBA else _zeta_vec


def _check_sigma(sigma):
    sigma = float(sigma)
    if not (sigma > 1.0) or not math.isfinite(sigma):
        raise DomainError(f"hurwitz_zeta requires sigma > 1, got {sigma}")
    return sigma


def hurwitz_zeta_array(sigma, q, cfg=DEFAULT_ZETA):
    """Vectorised Hurwitz zeta over an array of ``q`` values.

    Raises :class:`DomainError` for ``sigma <= 1``, ``Re q < 0`` or ``q == 0``
    and :class:`PrecisionError` when the Euler--Maclaurin corrections fail to
    decrease or the last one exceeds ``cfg.target_abs_tol``.
    """
    sigma = _check_sigma(sigma)
    q = np.atleast_1d(np.asarray(q, dtype=np.complex128)) + 0.0
    if not np.all(np.isfinite(q)):
        raise DomainError("hurwitz_zeta: non-finite q")
    if np.any(q.real < 0.0) or np.any(q == 0):
        raise DomainError("hurwitz_zeta requires Re q >= 0 and q != 0")
    coef = _EM_COEF[: cfg.bernoulli_terms_J]
    flat = q.ravel()
    vals, err, bad = _zeta_kernel(sigma, flat, int(cfg.cutoff_N), coef)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise PrecisionError(
            f"Euler-Maclaurin tail not decreasing for sigma={sigma}, q={flat[i]!r}; "
            f"increase cutoff_N (now {cfg.cutoff_N})"
        )
    worst = float(err.max(initial=0.0))
    if worst > cfg.target_abs_tol:
        i = int(np.argmax(err))
        raise PrecisionError(
            f"Euler-Maclaurin error estimate {worst:.3e} exceeds {cfg.target_abs_tol:.1e} "
            f"at sigma={sigma}, q={flat[i]!r}"
        )
    if not np.all(np.isfinite(vals)):
        raise PrecisionError(f"hurwitz_zeta produced non-finite values for sigma={sigma}")
    return vals.reshape(q.shape)


def hurwitz_zeta(sigma, q, cfg=DEFAULT_ZETA):
    """Hurwitz zeta ``sum_{k>=0} (q + k)**(-sigma)`` for a single complex ``q``.

    >>> round(hurwitz_zeta(2.0, 1.0).real, 12)
    1.644934066848
    """
    return complex(hurwitz_zeta_array(sigma, [_clean(q)], cfg)[0])
