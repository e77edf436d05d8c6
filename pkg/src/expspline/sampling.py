"""Sampling series built on integer shifts of the fundamental spline.

With ``S_k = L(. - k)`` and sample points ``t_k = k`` a function in the span
is recovered as ``f = sum_k f(k) L(. - k)``.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .bspline import SplineParams
from .exceptions import ConfigError, PrecisionError
from .fundamental import CurveSample, DEFAULT_MARGIN, default_model, eval_L_series_array


@dataclass
class KramerReport:
    c1_holds: bool
    c1_max_error: float
    c1_failures: list
    c2_holds: bool
    c2_max_edge_increment: float
    c2_partial_sums: dict = field(repr=False)

    @property
    def holds(self):
        return self.c1_holds and self.c2_holds


def kramer_conditions_check(model, window=(-8, 8), t_grid=None, c1_tol=1e-6, c2_tol=1e-8):
    """Check ``L(l - k) = delta_kl`` on ``window**2`` and bounded ``sum_k |L(t - k)|**2``.

    For every ``t`` the partial sums over ``|k - centre| <= n`` are recorded;
    the increment contributed by the two outermost shifts must not exceed
    ``c2_tol``.  The default ``t_grid`` keeps ``DEFAULT_MARGIN`` away from the
    window ends, where the outermost shifts are not yet in their tails.
    Failing index pairs are returned instead of raised.
    """
    lo, hi = (int(v) for v in window)
    ks = np.arange(lo, hi + 1)
    diffs = ks[None, :] - ks[:, None]  # l - k, rows k
    lvals = eval_L_series_array(model, diffs.astype(np.float64))
    err = np.abs(lvals - (diffs == 0))
    failures = [(int(ks[i]), int(ks[j])) for i, j in zip(*np.nonzero(err > c1_tol))]

    if t_grid is None:
        inner_lo, inner_hi = lo + DEFAULT_MARGIN, hi - DEFAULT_MARGIN
        if inner_hi > inner_lo:
            t_grid = np.linspace(inner_lo, inner_hi, 4 * (inner_hi - inner_lo) + 1)
        else:
            t_grid = np.array([0.5 * (lo + hi) + 0.5])
    t_grid = np.asarray(t_grid, dtype=np.float64)
    sq = eval_L_series_array(model, t_grid[:, None] - ks[None, :].astype(np.float64)) ** 2
    centre = 0.5 * (lo + hi)
    dist = np.abs(ks - centre)
    order = np.argsort(dist, kind="stable")
    partial = np.cumsum(sq[:, order], axis=1)
    edge = dist[order] == dist.max()
    n_edge = int(edge.sum())
    if partial.shape[1] > n_edge:
        increments = partial[:, -1] - partial[:, -1 - n_edge]
    else:
        increments = partial[:, -1]
    partial_sums = {float(t): partial[i].tolist() for i, t in enumerate(t_grid)}
    worst = float(increments.max(initial=0.0))
    return KramerReport(
        c1_holds=not failures,
        c1_max_error=float(err.max(initial=0.0)),
        c1_failures=failures,
        c2_holds=worst <= c2_tol,
        c2_max_edge_increment=worst,
        c2_partial_sums=partial_sums,
    )


@dataclass(frozen=True)
class ReconstructionCase:
    """Integer samples of a target function plus an evaluation grid.

    ``truncation_window`` is the inclusive range of shifts used in the series;
    it defaults to the span of ``sample_points``.
    """

    model: object
    sample_points: np.ndarray
    samples: np.ndarray
    eval_grid: np.ndarray
    truncation_window: tuple = None
    margin: int = DEFAULT_MARGIN

    def __post_init__(self):
        pts = np.asarray(self.sample_points)
        if pts.size == 0 or not np.all(pts == np.round(pts)):
            raise ConfigError("sample_points must be a nonempty list of integers")
        pts = pts.astype(np.int64)
        if pts.size > 1 and not np.all(np.diff(pts) == 1):
            raise ConfigError("sample_points must be consecutive integers")
        vals = np.asarray(self.samples, dtype=np.float64)
        if vals.shape != pts.shape or not np.all(np.isfinite(vals)):
            raise ConfigError("samples must be finite and match sample_points")
        window = self.truncation_window
        if window is None:
            window = (int(pts[0]), int(pts[-1]))
        window = (int(window[0]), int(window[1]))
        if not (window[0] <= pts[0] and pts[-1] <= window[1]):
            raise ConfigError(f"sample points {pts[0]}..{pts[-1]} fall outside window {window}")
        object.__setattr__(self, "sample_points", pts)
        object.__setattr__(self, "samples", vals)
        object.__setattr__(self, "eval_grid", np.asarray(self.eval_grid, dtype=np.float64))
        object.__setattr__(self, "truncation_window", window)

    @property
    def params(self):
        return self.model.params


def reconstruct(case):
    """``t -> sum_k f(k) L(t - k)`` on ``case.eval_grid``.

    Grid points closer than ``case.margin`` to either end of the truncation
    window are listed in ``meta["edge_flagged"]``; they are still evaluated.
    ``meta["max_integer_error"]`` compares the result with the samples at the
    integer grid points.
    """
    lo, hi = case.truncation_window
    keep = (case.sample_points >= lo) & (case.sample_points <= hi)
    ks = case.sample_points[keep].astype(np.float64)
    fk = case.samples[keep]
    t = case.eval_grid
    lmat = eval_L_series_array(case.model, t[:, None] - ks[None, :])
    values = lmat @ fk
    flagged = t[(t < lo + case.margin) | (t > hi - case.margin)]
    lookup = dict(zip(case.sample_points.tolist(), case.samples.tolist()))
    on_int = [(i, int(round(v))) for i, v in enumerate(t) if v == round(v) and int(round(v)) in lookup]
    max_int_err = max((abs(values[i] - lookup[m]) for i, m in on_int), default=0.0)
    meta = {
        **case.params.as_dict(),
        "which": "reconstruction",
        "truncation_window": [lo, hi],
        "edge_flagged": [float(v) for v in flagged],
        "max_integer_error": float(max_int_err),
    }
    return CurveSample(t.copy(), values, meta)


# ------------------------------------------------------------------ JSON


def case_from_dict(data, model=None):
    """Build a case from ``{params: {a, sigma}, samples: [{k, value}], grid: {from, to, n}}``."""
    params = SplineParams(data["params"]["a"], data["params"]["sigma"])
    model = model or default_model(params)
    rows = sorted(data["samples"], key=lambda r: int(r["k"]))
    grid = data["grid"]
    n = int(grid["n"])
    if n < 1:
        raise ConfigError("grid.n must be positive")
    eval_grid = np.linspace(float(grid["from"]), float(grid["to"]), n)
    window = data.get("truncation_window")
    return ReconstructionCase(
        model=model,
        sample_points=np.array([int(r["k"]) for r in rows]),
        samples=np.array([float(r["value"]) for r in rows]),
        eval_grid=eval_grid,
        truncation_window=tuple(window) if window else None,
    )


def case_to_dict(case):
    g = case.eval_grid
    return {
        "params": case.params.as_dict(),
        "samples": [{"k": int(k), "value": float(v)} for k, v in zip(case.sample_points, case.samples)],
        "grid": {"from": float(g[0]), "to": float(g[-1]), "n": int(g.size)},
        "truncation_window": list(case.truncation_window),
    }


# ------------------------------------------------- Fourier-basis example


@dataclass(frozen=True)
class BasisSpec:
    kind: str = "fourier_on_0_2pi"
    order_window: tuple = (-6, 6)

    def __post_init__(self):
        if self.kind != "fourier_on_0_2pi":
            raise ConfigError(f"unsupported basis kind {self.kind!r}")
        lo, hi = self.order_window
        if int(lo) != lo or int(hi) != hi or lo != -hi or hi < 0:
            raise ConfigError(f"order_window must be symmetric about 0, got {self.order_window}")


def _trapezoid_coefficients(f, ks, n):
    x = np.linspace(0.0, 2.0 * math.pi, n + 1)
    fx = np.asarray(f(x))
    if fx.shape != x.shape:
        fx = np.vectorize(f)(x)
    w = np.full(n + 1, 1.0 / n)
    w[0] = w[-1] = 0.5 / n
    return np.exp(-1j * np.outer(ks, x)) @ (w * fx)


def fourier_coefficients(f, ks, n_points=4096, tol=1e-9):
    """``(1/2 pi) int_0^{2 pi} f(x) exp(-i k x) dx`` for each ``k`` in ``ks``.

    The trapezoid rule on ``n_points`` intervals is spectrally accurate for
    smooth periodic ``f``; one Richardson step removes the ``h**2`` error left
    by a jump of the periodic extension.  The extrapolated values from
    ``(n, 2n)`` and ``(2n, 4n)`` must agree to ``tol``.
    """
    ks = np.asarray(ks, dtype=np.float64)
    t1, t2, t4 = (_trapezoid_coefficients(f, ks, m * n_points) for m in (1, 2, 4))
    r1 = (4.0 * t2 - t1) / 3.0
    r2 = (4.0 * t4 - t2) / 3.0
    change = float(np.abs(r2 - r1).max(initial=0.0))
    if change > tol:
        raise PrecisionError(
            f"Fourier coefficients not converged: grid doubling changes them by {change:.3e}"
        )
    return r2


def fourier_coefficient_interpolant(model, f, spec=BasisSpec(), grid=None, check_tol=1e-5):
    """``g(t) = 2 pi sum_k f_hat(k) L(t - k)`` over the basis order window.

    ``g`` interpolates ``2 pi f_hat`` at the integers of the window; this is
    verified to ``check_tol`` and a :class:`PrecisionError` is raised otherwise.
    """
    lo, hi = (int(v) for v in spec.order_window)
    ks = np.arange(lo, hi + 1)
    fhat = fourier_coefficients(f, ks)
    if grid is None:
        grid = np.linspace(lo, hi, 8 * (hi - lo) + 1)
    grid = np.asarray(grid, dtype=np.float64)
    lmat = eval_L_series_array(model, grid[:, None] - ks[None, :].astype(np.float64))
    g = 2.0 * math.pi * (lmat @ fhat)
    at_int = eval_L_series_array(model, (ks[:, None] - ks[None, :]).astype(np.float64))
    g_int = 2.0 * math.pi * (at_int @ fhat)
    err = float(np.abs(g_int - 2.0 * math.pi * fhat).max())
    if err > check_tol:
        raise PrecisionError(f"interpolant misses 2 pi f_hat at the integers by {err:.3e}")
    if np.abs(fhat.imag).max() <= 1e-13 * max(1.0, np.abs(fhat).max()):
        g = g.real
    meta = {
        **model.params.as_dict(),
        "which": "fourier_coefficient_interpolant",
        "orders": ks.tolist(),
        "fourier_coefficients": [{"re": float(c.real), "im": float(c.imag)} for c in fhat],
        "max_integer_error": err,
    }
    return CurveSample(grid, g, meta)
