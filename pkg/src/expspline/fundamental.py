"""Fundamental cardinal exponential splines.

``L`` is the combination ``sum_k c_k E(. - k)`` with ``L(m) = delta_{m,0}``
on the integers.  Two independent constructions are provided:

* :func:`eval_L_fourier` integrates ``h(xi) exp(-i xi x) / (2 pi)`` with a
  composite Gauss--Legendre rule, where ``h`` is the ratio of
  ``((xi + i a)/2 pi)**(-sigma)`` to the periodised zeta denominator;
* :func:`compute_coefficients` / :func:`eval_L_series` obtain ``c_k`` as the
  discrete Fourier coefficients of the reciprocal integer-sample symbol and
  sum the shifted B-splines directly.
"""
import functools
import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import USE_NUMBA, njit
from .admissibility import (
    TWO_PI,
    check_admissibility,
    denominator_Z_array,
    periodised_q,
)
from .bspline import (
    DEFAULT_TRUNCATION,
    SeriesTruncation,
    SplineParams,
    _weights,
    eval_time_domain_array,
)
from .complex_analysis import principal_power_array
from .exceptions import (
    ConfigError,
    NearZeroDenominatorError,
    NotAdmissibleError,
    PrecisionError,
    RangeError,
    SymbolZeroError,
)

NEAR_ZERO_DENOMINATOR = 1e-12
SYMBOL_ZERO = 1e-10
INTEGER_SAMPLE_CUTOFF = 1e-15
DEFAULT_MARGIN = 4
MAX_PERIODS = 2**16
# Shifted B-splines whose crude magnitude bound falls below this are skipped.
NEGLIGIBLE_SHIFT = 1e-18


def _require_admissible(p, report=None):
    report = report or check_admissibility(p)
    if not report.admissible:
        raise NotAdmissibleError(
            f"sigma={p.sigma} is not admissible for a={p.a} "
            f"(sigma0={report.sigma0:.6f}, lhs={report.lhs_condition2:.6f})",
            report,
        )
    if not report.min_abs_Z_scan > 0.0:
        raise NotAdmissibleError(f"periodised denominator vanishes for {p}", report)
    return report


# ---------------------------------------------------------------- integrand


def integrand_h_array(p, xi):
    """``((xi + i a)/2 pi)**(-sigma) / Z(sigma, q(xi))`` with ``q`` periodised.

    The numerator is evaluated at the raw ``xi``; only the denominator is
    ``2 pi``-periodic.  Admissibility is not re-checked here so that the
    integrand can be plotted for any order with a nonvanishing denominator.
    """
    xi = np.asarray(xi, dtype=np.float64)
    z = denominator_Z_array(p, periodised_q(p.a, xi))
    absz = np.abs(z)
    if np.any(absz < NEAR_ZERO_DENOMINATOR):
        i = int(np.argmin(absz))
        raise NearZeroDenominatorError(
            f"|Z| = {absz.flat[i]:.3e} at xi = {xi.flat[i]!r} for {p}"
        )
    return principal_power_array((xi + 1j * p.a) / TWO_PI, -p.sigma) / z


def integrand_h(p, xi):
    return complex(integrand_h_array(p, np.array([float(xi)]))[0])


# ---------------------------------------------------------- Fourier route


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite Gauss--Legendre settings for the Fourier inversion.

    The window is ``[-2 pi K, 2 pi K]``.  ``periods_K=None`` picks the
    smallest power of two ``K >= 64`` whose tail bound meets ``tail_tol``.
    """

    periods_K: int | None = None
    nodes_per_period: int = 64
    tail_tol: float = 1e-4

    def __post_init__(self):
        if self.periods_K is not None and (
            int(self.periods_K) != self.periods_K or self.periods_K < 4
        ):
            raise ConfigError(f"periods_K must be an integer >= 4, got {self.periods_K}")
        n = self.nodes_per_period
        if int(n) != n or n < 32 or n % 2:
            raise ConfigError(f"nodes_per_period must be an even integer >= 32, got {n}")
        if not self.tail_tol > 0:
            raise ConfigError(f"tail_tol must be positive, got {self.tail_tol}")


DEFAULT_QUADRATURE = QuadratureSpec()


def fourier_tail_bound(p, periods_K, min_abs_Z):
    """Bound on the integral of ``|h|`` outside ``[-2 pi K, 2 pi K]``, over ``2 pi``."""
    s = p.sigma
    return (
        TWO_PI**s / (min_abs_Z * (s - 1.0)) * (TWO_PI * periods_K) ** (1.0 - s) / math.pi
    )


def nodes_for(x, nodes_per_period):
    """Nodes per period needed to resolve ``exp(-i xi x)``."""
    ax = abs(float(x))
    if ax <= 8.0:
        return int(nodes_per_period)
    n = max(int(nodes_per_period), 16 * math.ceil(ax))
    return n + n % 2


@njit
def _inverse_loop(x, xi, wh):
    out = np.empty(x.shape[0], dtype=np.complex128)
    for i in range(x.shape[0]):
        xv = x[i]
        re = 0.0
        im = 0.0
        for j in range(xi.shape[0]):
            ang = xi[j] * xv
            c = math.cos(ang)
            s = math.sin(ang)
            re += wh[j].real * c + wh[j].imag * s
            im += wh[j].imag * c - wh[j].real * s
        out[i] = complex(re, im)
    return out


def _inverse_vec(x, xi, wh):
    out = np.empty(x.shape[0], dtype=np.complex128)
    chunk = max(1, 2**22 // max(xi.shape[0], 1))
    for start in range(0, x.shape[0], chunk):
        xs = x[start : start + chunk]
        out[start : start + chunk] = np.exp(-1j * np.outer(xs, xi)) @ wh
    return out


_inverse_kernel = _inverse_loop if USE_NUMBA else _inverse_vec


class FourierInverter:
    """Precomputed nodes and integrand values for repeated inversions."""

    def __init__(self, p, quad=DEFAULT_QUADRATURE, report=None):
        self.params = p
        self.quad = quad
        self.report = _require_admissible(p, report)
        self._node_sets = {}
        t, w = self._period_rule(quad.nodes_per_period)
        z = denominator_Z_array(p, (t + 1j * p.a) / TWO_PI)
        min_z = min(self.report.min_abs_Z_scan, float(np.abs(z).min()))
        self.min_abs_Z = min_z
        if quad.periods_K is None:
            k = 64
            while fourier_tail_bound(p, k, min_z) > quad.tail_tol:
                k *= 2
                if k > MAX_PERIODS:
                    raise PrecisionError(
                        f"tail bound for {p} exceeds {quad.tail_tol:.1e} even with "
                        f"{MAX_PERIODS} periods"
                    )
            self.periods_K = k
        else:
            self.periods_K = int(quad.periods_K)
        self.tail_bound = fourier_tail_bound(p, self.periods_K, min_z)
        if self.tail_bound > quad.tail_tol:
            raise PrecisionError(
                f"tail bound {self.tail_bound:.3e} exceeds tail_tol {quad.tail_tol:.1e} "
                f"with K={self.periods_K}; use more periods"
            )

    @staticmethod
    def _period_rule(n):
        t, w = np.polynomial.legendre.leggauss(n)
        return math.pi * (t + 1.0), math.pi * w

    def _nodes(self, n):
        cached = self._node_sets.get(n)
        if cached is None:
            p = self.params
            t, w = self._period_rule(n)
            z = denominator_Z_array(p, (t + 1j * p.a) / TWO_PI)
            if np.abs(z).min() < NEAR_ZERO_DENOMINATOR:
                raise NearZeroDenominatorError(f"|Z| vanishes on the quadrature nodes for {p}")
            periods = np.arange(-self.periods_K, self.periods_K, dtype=np.float64)
            xi = (TWO_PI * periods[:, None] + t[None, :]).ravel()
            num = principal_power_array((xi + 1j * p.a) / TWO_PI, -p.sigma)
            wh = np.tile(w / z, periods.size) * num / TWO_PI
            cached = (xi, wh)
            self._node_sets[n] = cached
        return cached

    def integrate(self, x):
        """Complex value of the truncated inversion integral at each ``x``."""
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        out = np.empty(x.shape, dtype=np.complex128)
        counts = np.array([nodes_for(v, self.quad.nodes_per_period) for v in x.ravel()])
        flat = out.ravel()
        xf = x.ravel()
        for n in np.unique(counts):
            sel = counts == n
            xi, wh = self._nodes(int(n))
            flat[sel] = _inverse_kernel(np.ascontiguousarray(xf[sel]), xi, wh)
        return flat.reshape(x.shape)

    def __call__(self, x):
        vals = self.integrate(x)
        worst = float(np.abs(vals.imag).max(initial=0.0))
        if worst > 10.0 * self.quad.tail_tol:
            raise PrecisionError(
                f"imaginary part {worst:.3e} of the inversion integral exceeds "
                f"10 * tail_tol = {10.0 * self.quad.tail_tol:.1e}"
            )
        return vals.real


@functools.lru_cache(maxsize=32)
def fourier_inverter(p, quad=DEFAULT_QUADRATURE):
    return FourierInverter(p, quad)


def eval_L_fourier_array(p, x, quad=DEFAULT_QUADRATURE):
    return fourier_inverter(p, quad)(x)


def eval_L_fourier(p, x, quad=DEFAULT_QUADRATURE):
    """Fundamental spline at ``x`` by numerical Fourier inversion of ``h``."""
    return float(eval_L_fourier_array(p, np.array([float(x)]), quad)[0])


# ----------------------------------------------------------- series route


def _is_pow2(n):
    return n > 0 and n & (n - 1) == 0


def integer_samples(p, limit, cutoff=INTEGER_SAMPLE_CUTOFF):
    """``E(0), E(1), ...`` truncated before the first ``k >= 1`` with ``|E(k)| < cutoff``."""
    ks = np.arange(limit, dtype=np.float64)
    e = eval_time_domain_array(p, ks)
    small = np.nonzero((np.abs(e) < cutoff) & (ks >= 1))[0]
    stop = int(small[0]) if small.size else limit
    return e[:stop]


@dataclass(frozen=True)
class FundamentalSplineModel:
    """Coefficients ``c_k`` for ``k_min <= k <= k_max`` of the fundamental spline.

    Immutable once built; ``eval`` is safe to share across threads.
    """

    params: SplineParams
    k_min: int
    k_max: int
    coeffs: np.ndarray = field(repr=False)
    symbol_grid_size_M: int
    report: object = field(repr=False)
    symbol_min_abs: float = float("nan")
    margin: int = DEFAULT_MARGIN

    @property
    def ks(self):
        return np.arange(self.k_min, self.k_max + 1)

    @property
    def reliable_range(self):
        return (self.k_min + self.margin, self.k_max - self.margin)

    def coefficient(self, k):
        if not self.k_min <= k <= self.k_max:
            raise RangeError(f"k={k} outside coefficient window [{self.k_min}, {self.k_max}]")
        return float(self.coeffs[k - self.k_min])

    def as_dict(self):
        return {int(k): float(c) for k, c in zip(self.ks, self.coeffs)}

    def __call__(self, x):
        return eval_L_series_array(self, x)


def compute_coefficients(p, M=4096, window=(-256, 256), report=None):
    """Fourier coefficients of ``1 / sum_k E(k) w**k`` on ``|w| = 1``.

    The symbol is sampled on ``M`` equispaced points; ``c_k`` for ``k`` in the
    inclusive ``window`` are returned inside a :class:`FundamentalSplineModel`.
    """
    report = _require_admissible(p, report)
    M = int(M)
    if not (_is_pow2(M) and M >= 256):
        raise ConfigError(f"M must be a power of two >= 256, got {M}")
    k_min, k_max = (int(v) for v in window)
    if not (-M // 2 <= k_min < k_max < M // 2):
        raise ConfigError(f"window [{k_min}, {k_max}] must lie inside [-M/2, M/2)")
    e = integer_samples(p, M // 2)
    padded = np.zeros(M)
    padded[: e.size] = e
    # s_j = sum_k E(k) exp(2 pi i j k / M)
    symbol = M * np.fft.ifft(padded)
    smin = float(np.abs(symbol).min())
    if smin < SYMBOL_ZERO:
        j = int(np.argmin(np.abs(symbol)))
        raise SymbolZeroError(
            f"|symbol| = {smin:.3e} at xi = {TWO_PI * j / M:.6f} for {p}; "
            "this contradicts admissibility"
        )
    c = np.fft.fft(1.0 / symbol) / M
    if np.abs(c.imag).max() > 1e-9 * max(1.0, np.abs(c.real).max()):
        raise PrecisionError(f"coefficients not real for {p}")
    ks = np.arange(k_min, k_max + 1)
    coeffs = np.ascontiguousarray(c.real[ks % M])
    coeffs.setflags(write=False)
    return FundamentalSplineModel(
        params=p,
        k_min=k_min,
        k_max=k_max,
        coeffs=coeffs,
        symbol_grid_size_M=M,
        report=report,
        symbol_min_abs=smin,
    )


@njit
def _series_loop(x, ks, cs, a, sigma, weights, inv_gamma, term_tol, wsum):
    out = np.zeros(x.shape[0])
    kmax = weights.shape[0] - 1
    expo = sigma - 1.0
    for i in range(x.shape[0]):
        xv = x[i]
        total = 0.0
        for m in range(ks.shape[0]):
            y = xv - ks[m]
            if y <= 0.0:
                break
            scale = math.exp(-a * y) * inv_gamma
            if abs(cs[m]) * scale * wsum * y**expo < NEGLIGIBLE_SHIFT:
                continue
            top = int(math.ceil(y)) - 1
            if top > kmax:
                top = kmax
            acc = 0.0
            for k in range(top + 1):
                t = weights[k] * (y - k) ** expo * scale
                acc += t
                if k > sigma + 1.0 and abs(t) < term_tol:
                    break
            total += cs[m] * acc
        out[i] = total
    return out


def _series_vec(x, ks, cs, a, sigma, weights, inv_gamma, term_tol, wsum):
    p = SplineParams(a, sigma)
    trunc = SeriesTruncation(weights.shape[0] - 1, term_tol)
    out = np.zeros(x.shape[0])
    for i, xv in enumerate(x):
        y = xv - ks
        live = y > 0.0
        bound = np.abs(cs) * np.exp(-a * np.where(live, y, 0.0)) * inv_gamma * wsum
        live &= bound * np.where(live, y, 1.0) ** (sigma - 1.0) >= NEGLIGIBLE_SHIFT
        if np.any(live):
            out[i] = np.dot(cs[live], eval_time_domain_array(p, y[live], trunc))
    return out


_series_kernel = _series_loop if USE_NUMBA else _series_vec


def eval_L_series_array(model, x, trunc=DEFAULT_TRUNCATION):
    x = np.asarray(x, dtype=np.float64)
    lo, hi = model.reliable_range
    if x.size and (not np.all(np.isfinite(x)) or x.min() < lo or x.max() > hi):
        raise RangeError(f"evaluation points must lie in [{lo}, {hi}]")
    p = model.params
    w = _weights.get(p.sigma, int(trunc.max_terms_K) + 1)
    inv_gamma = math.exp(-math.lgamma(p.sigma))
    flat = np.ascontiguousarray(x.ravel())
    ks = model.ks.astype(np.float64)
    out = _series_kernel(
        flat, ks, model.coeffs, p.a, p.sigma, w, inv_gamma,
        float(trunc.term_tol), float(np.abs(w).sum()),
    )
    return out.reshape(x.shape)


def eval_L_series(model, x, trunc=DEFAULT_TRUNCATION):
    """``sum_{k <= x} c_k E(x - k)`` over the model's coefficient window."""
    return float(eval_L_series_array(model, np.array([float(x)]), trunc)[0])


@functools.lru_cache(maxsize=32)
def default_model(p):
    return compute_coefficients(p)


# ---------------------------------------------------------------- figures


@dataclass(frozen=True)
class CurveSample:
    abscissae: np.ndarray
    values: np.ndarray
    meta: dict

    def __post_init__(self):
        x = np.asarray(self.abscissae, dtype=np.float64)
        v = np.asarray(self.values)
        if x.ndim != 1 or v.shape != x.shape:
            raise ValueError("abscissae and values must be 1-D of equal length")
        if x.size > 1 and not np.all(np.diff(x) > 0):
            raise ValueError("abscissae must be strictly increasing")
        object.__setattr__(self, "abscissae", x)
        object.__setattr__(self, "values", v)

    @property
    def is_complex(self):
        return np.iscomplexobj(self.values)

    def to_dict(self):
        if self.is_complex:
            vals = [{"re": float(v.real), "im": float(v.imag)} for v in self.values]
        else:
            vals = [float(v) for v in self.values]
        return {"abscissae": [float(v) for v in self.abscissae], "values": vals, "meta": dict(self.meta)}


FIGURE_KINDS = ("abs_h", "re_h", "im_h", "L_curve")


def emit_figure_data(which, sweeps, grid):
    """One :class:`CurveSample` per parameter pair in ``sweeps``.

    ``abs_h``, ``re_h`` and ``im_h`` sample the inversion integrand; ``L_curve``
    samples the fundamental spline via the coefficient series and requires
    every entry to be admissible.
    """
    if which not in FIGURE_KINDS:
        raise ValueError(f"unknown figure kind {which!r}; expected one of {FIGURE_KINDS}")
    grid = np.asarray(grid, dtype=np.float64)
    if which == "L_curve":
        for p in sweeps:
            report = check_admissibility(p)
            if not report.admissible:
                raise NotAdmissibleError(f"sweep entry {p} is not admissible", report)
    curves = []
    for p in sweeps:
        meta = {"a": p.a, "sigma": p.sigma, "which": which}
        if which == "L_curve":
            vals = eval_L_series_array(default_model(p), grid)
        else:
            h = integrand_h_array(p, grid)
            vals = {"abs_h": np.abs(h), "re_h": h.real, "im_h": h.imag}[which]
        curves.append(CurveSample(grid.copy(), vals, meta))
    return curves
