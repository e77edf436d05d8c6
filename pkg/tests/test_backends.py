"""The numba kernels and the numpy fallbacks must agree."""
import json
import os
import subprocess
import sys
import textwrap

import numpy as np
import pytest

PROBE = textwrap.dedent(
    """
    import json, math
    import numpy as np
    import expspline
    from expspline import SplineParams
    from expspline.complex_analysis import hurwitz_zeta_array
    from expspline.bspline import eval_time_domain_array
    from expspline.fundamental import default_model, eval_L_series_array, eval_L_fourier_array

    p = SplineParams(2.0, math.sqrt(6.0))
    q = np.array([0.5 + 0.3j, 0.1j, 1.0, 0.7 - 2.0j])
    z = hurwitz_zeta_array(3.3, q)
    x = np.linspace(-3.0, 12.0, 61)
    e = eval_time_domain_array(SplineParams(1.3, 3.7), x)
    xs = np.linspace(-4.0, 4.0, 33)
    ls = eval_L_series_array(default_model(p), xs)
    lf = eval_L_fourier_array(p, xs)
    print(json.dumps({
        "backend": expspline.BACKEND,
        "zeta": [[v.real, v.imag] for v in z],
        "bspline": e.tolist(),
        "series": ls.tolist(),
        "fourier": lf.tolist(),
    }))
    """
)


def probe(disable):
    env = dict(os.environ, EXPSPLINE_DISABLE_NUMBA="1" if disable else "0")
    out = subprocess.run([sys.executable, "-c", PROBE], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


@pytest.fixture(scope="module")
def both():
    pytest.importorskip("numba")
    return probe(False), probe(True)


def test_backend_flag(both):
    fast, slow = both
    assert fast["backend"] == "numba" and slow["backend"] == "numpy"


@pytest.mark.parametrize("key,tol", [("zeta", 1e-13), ("bspline", 1e-14), ("series", 1e-13), ("fourier", 1e-12)])
def test_backends_agree(both, key, tol):
    fast, slow = both
    a, b = np.array(fast[key]), np.array(slow[key])
    assert np.abs(a - b).max() <= tol * max(1.0, np.abs(a).max())
