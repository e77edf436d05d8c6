"""Parameter sweeps for the integrand and fundamental-spline figure data."""
import math
import os

import numpy as np

from .bspline import SplineParams
from .fundamental import emit_figure_data
from .output import atomic_write, curve_to_csv

SQRT6 = math.sqrt(6.0)
FIGURE_DECIMALS = 8

# fixed a, varying sigma / fixed sigma, varying a
SIGMA_SWEEP = tuple(SplineParams(2.0, s) for s in (2.5, 2.75, 3.0, 3.5))
A_SWEEP = tuple(SplineParams(a, SQRT6) for a in (2.0, 3.0, 4.0, 5.0))
L_SWEEP = tuple(SplineParams(2.0, s) for s in (SQRT6, 3.5, 4.25))

XI_GRID = np.linspace(-20.0, 20.0, 801)
X_GRID = np.linspace(-6.0, 10.0, 321)


def figure_jobs():
    """``(file stem, kind, sweep, grid)`` for every emitted figure file."""
    jobs = []
    for kind in ("abs_h", "re_h", "im_h"):
        jobs.append((f"{kind}_fixed_a", kind, SIGMA_SWEEP, XI_GRID))
        jobs.append((f"{kind}_fixed_sigma", kind, A_SWEEP, XI_GRID))
    jobs.append(("L_curve", "L_curve", L_SWEEP, X_GRID))
    return jobs


def _curve_name(stem, p):
    return f"{stem}__a{p.a:g}_sigma{p.sigma:.6g}.csv"


def render_figures():
    """Map file name to CSV text for all sweeps."""
    files = {}
    for stem, kind, sweep, grid in figure_jobs():
        for p, curve in zip(sweep, emit_figure_data(kind, sweep, grid)):
            files[_curve_name(stem, p)] = curve_to_csv(curve, FIGURE_DECIMALS)
    return files


def write_figures(outdir):
    files = render_figures()
    for name in sorted(files):
        atomic_write(os.path.join(outdir, name), files[name])
    return sorted(files)
