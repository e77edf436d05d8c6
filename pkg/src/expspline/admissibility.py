"""Admissibility of a spline order for the fundamental interpolation problem.

The periodised symbol reduces, after cancelling ``(2 pi)**sigma``, to

    Z(sigma, q) = zeta(sigma, q) + exp(-i pi sigma) zeta(sigma, 1 - q),
    q = (xi + i a) / (2 pi).

An order is admissible when ``sigma >= sigma_0(a)`` and the phase at the
symmetric point ``q* = 1/2 + i a / (2 pi)`` stays away from the lattice
``pi Z``.
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from .bspline import SplineParams
from .complex_analysis import DEFAULT_ZETA, hurwitz_zeta, hurwitz_zeta_array
from .exceptions import BracketError, ConfigError, DomainError

TWO_PI = 2.0 * math.pi
TAU_ADM = 1e-6
MIN_SCAN_POINTS = 16


def sigma_zero(a):
    """Zero-freeness threshold ``1/2 + sqrt(2) sqrt(1 + v**2 + v**4)``, ``v = a/(2 pi)``."""
    a = float(a)
    if not (a > 0 and math.isfinite(a)):
        raise DomainError(f"sigma_zero requires a > 0, got {a}")
    v2 = (a / TWO_PI) ** 2
    return 0.5 + math.sqrt(2.0) * math.sqrt(1.0 + v2 + v2 * v2)


def _need_zeta_order(p):
    if not p.sigma > 1.0:
        raise DomainError(f"sigma must exceed 1 for the zeta denominator, got {p.sigma}")


def periodised_q(a, xi):
    """``((xi mod 2 pi) + i a) / (2 pi)``; broadcasts over ``xi``."""
    xi = np.mod(np.asarray(xi, dtype=np.float64), TWO_PI)
    return (xi + 1j * a) / TWO_PI


def denominator_Z_array(p, q, cfg=DEFAULT_ZETA):
    _need_zeta_order(p)
    q = np.asarray(q, dtype=np.complex128)
    phase = cmath.exp(-1j * math.pi * p.sigma)
    return hurwitz_zeta_array(p.sigma, q, cfg) + phase * hurwitz_zeta_array(p.sigma, 1.0 - q, cfg)


def denominator_Z(p, q, cfg=DEFAULT_ZETA):
    """``zeta(sigma, q) + exp(-i pi sigma) zeta(sigma, 1 - q)`` for ``0 <= Re q <= 1``."""
    q = complex(q)
    if not (0.0 <= q.real <= 1.0):
        raise DomainError(f"denominator_Z needs 0 <= Re q <= 1, got {q!r}")
    return complex(denominator_Z_array(p, np.array([q]), cfg)[0])


def symmetric_point(a):
    return complex(0.5, a / TWO_PI)


def lhs_condition2(a, sigma, cfg=DEFAULT_ZETA):
    """``(pi/2)(sigma - 1) + Arg zeta(sigma, 1/2 + i a/(2 pi))``."""
    zs = hurwitz_zeta(sigma, symmetric_point(a), cfg)
    return 0.5 * math.pi * (sigma - 1.0) + cmath.phase(zs)


def distance_to_pi_lattice(x):
    return abs(x - math.pi * round(x / math.pi))


@dataclass(frozen=True)
class AdmissibilityReport:
    params: SplineParams
    sigma0: float
    condition1_holds: bool
    zeta_star: complex
    arg_zeta_star: float
    lhs_condition2: float
    distance_to_pi_lattice: float
    condition2_holds: bool
    admissible: bool
    min_abs_Z_scan: float
    abs_Z_at_pi: float
    scan_points: int
    tolerance: float = TAU_ADM
    # Same quantity with q* conjugated, the other reading of the condition;
    # kept for comparison, never used in the verdict.
    lhs_condition2_conjugate: float = float("nan")

    def to_dict(self):
        return {
            "params": self.params.as_dict(),
            "sigma0": self.sigma0,
            "condition1_holds": self.condition1_holds,
            "zeta_star": {"re": self.zeta_star.real, "im": self.zeta_star.imag},
            "arg_zeta_star": self.arg_zeta_star,
            "lhs_condition2": self.lhs_condition2,
            "lhs_condition2_conjugate": self.lhs_condition2_conjugate,
            "distance_to_pi_lattice": self.distance_to_pi_lattice,
            "tolerance": self.tolerance,
            "condition2_holds": self.condition2_holds,
            "min_abs_Z_scan": self.min_abs_Z_scan,
            "abs_Z_at_pi": self.abs_Z_at_pi,
            "scan_points": self.scan_points,
            "admissible": self.admissible,
        }


def scan_denominator(p, scan_points=4096, cfg=DEFAULT_ZETA):
    """``|Z(sigma, q(xi))|`` on ``scan_points`` equispaced ``xi`` in ``[0, 2 pi]``."""
    xi = np.linspace(0.0, TWO_PI, int(scan_points))
    q = (xi + 1j * p.a) / TWO_PI
    return xi, np.abs(denominator_Z_array(p, q, cfg))


def check_admissibility(p, scan_points=4096, cfg=DEFAULT_ZETA, tolerance=TAU_ADM):
    """Evaluate both admissibility conditions and scan ``|Z|`` over one period.

    Condition (2) fails when the phase sum lies within ``tolerance`` radians
    of a multiple of ``pi``.
    """
    if int(scan_points) != scan_points or scan_points < MIN_SCAN_POINTS:
        raise ConfigError(f"scan_points must be an integer >= {MIN_SCAN_POINTS}, got {scan_points}")
    if not tolerance > 0:
        raise ConfigError(f"tolerance must be positive, got {tolerance}")
    _need_zeta_order(p)
    s0 = sigma_zero(p.a)
    qs = symmetric_point(p.a)
    zs = hurwitz_zeta(p.sigma, qs, cfg)
    arg = cmath.phase(zs)
    lhs = 0.5 * math.pi * (p.sigma - 1.0) + arg
    dist = distance_to_pi_lattice(lhs)
    lhs_conj = 0.5 * math.pi * (p.sigma - 1.0) + cmath.phase(zs.conjugate())
    _, absz = scan_denominator(p, scan_points, cfg)
    z_pi = abs(denominator_Z(p, qs, cfg))
    c1 = p.sigma >= s0
    c2 = dist > tolerance
    return AdmissibilityReport(
        params=p,
        sigma0=s0,
        condition1_holds=bool(c1),
        zeta_star=zs,
        arg_zeta_star=arg,
        lhs_condition2=lhs,
        distance_to_pi_lattice=dist,
        condition2_holds=bool(c2),
        admissible=bool(c1 and c2),
        min_abs_Z_scan=float(absz.min()),
        abs_Z_at_pi=z_pi,
        scan_points=int(scan_points),
        tolerance=float(tolerance),
        lhs_condition2_conjugate=lhs_conj,
    )


def find_non_admissible_sigma(a, bracket, m=None, tol=1e-8, cfg=DEFAULT_ZETA):
    """Bisect for ``sigma`` with ``lhs_condition2(a, sigma) = m pi``.

    When ``m`` is omitted the bracket must straddle exactly one multiple of
    ``pi``.  A sign change caused by a jump of ``Arg`` across the branch cut is
    rejected with :class:`BracketError`.
    """
    lo, hi = (float(v) for v in bracket)
    if not lo < hi:
        raise BracketError(f"empty bracket [{lo}, {hi}]")
    f_lo, f_hi = lhs_condition2(a, lo, cfg), lhs_condition2(a, hi, cfg)
    if m is None:
        first = math.floor(min(f_lo, f_hi) / math.pi) + 1
        last = math.ceil(max(f_lo, f_hi) / math.pi) - 1
        if last != first:
            raise BracketError(
                f"lhs ranges over [{min(f_lo, f_hi):.6f}, {max(f_lo, f_hi):.6f}] on "
                f"[{lo}, {hi}], which does not straddle exactly one multiple of pi"
            )
        m = first
    target = m * math.pi
    g_lo, g_hi = f_lo - target, f_hi - target
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if g_lo * g_hi > 0:
        raise BracketError(f"lhs - {m} pi has no sign change on [{lo}, {hi}]")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        g_mid = lhs_condition2(a, mid, cfg) - target
        if g_mid == 0.0 or hi - lo < 1e-13:
            break
        if (g_mid < 0) == (g_lo < 0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    if abs(g_mid) > tol:
        raise BracketError(
            f"sign change of lhs - {m} pi near sigma={mid:.12f} is a jump "
            f"(residual {g_mid:.3e}), not a root"
        )
    return mid
