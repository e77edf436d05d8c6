"""Time the hot kernels under the numba and numpy backends.

The backend is fixed at import time, so each backend runs in its own
subprocess with ``EXPSPLINE_DISABLE_NUMBA`` set accordingly.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import json
import os
import subprocess
import sys
import textwrap

WORKER = textwrap.dedent(
    """
    import json, math, sys, time
    import numpy as np
    import expspline
    from expspline import SplineParams
    from expspline.admissibility import scan_denominator
    from expspline.bspline import eval_time_domain_array
    from expspline.complex_analysis import hurwitz_zeta_array
    from expspline.fundamental import FourierInverter, default_model, eval_L_series_array

    repeat = int(sys.argv[1])
    p = SplineParams(2.0, math.sqrt(6.0))
    model = default_model(p)
    inv = FourierInverter(p)
    rng = np.random.default_rng(0)
    q = rng.uniform(0, 1, 4096) + 1j * rng.uniform(-3, 3, 4096)
    x_b = np.linspace(-1.0, 40.0, 100_000)
    x_s = np.linspace(-5.0, 20.0, 10_000)
    x_f = np.linspace(-5.0, 5.0, 201)

    cases = {
        "hurwitz_zeta x4096": lambda: hurwitz_zeta_array(3.3, q),
        "denominator scan 4096": lambda: scan_denominator(p, 4096),
        "bspline series x1e5": lambda: eval_time_domain_array(SplineParams(1.3, 3.7), x_b),
        "L series x1e4": lambda: eval_L_series_array(model, x_s),
        "L fourier x201": lambda: inv(x_f),
    }
    out = {"backend": expspline.BACKEND}
    for name, fn in cases.items():
        fn()
        best = math.inf
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
        out[name] = best
    print(json.dumps(out))
    """
)


def run(disable, repeat):
    env = dict(os.environ, EXPSPLINE_DISABLE_NUMBA="1" if disable else "0")
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(proc.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    names = [k for k in fast if k != "backend"]
    width = max(map(len, names))
    print(f"{'kernel':<{width}}  {fast['backend']:>10}  {slow['backend']:>10}  speedup")
    for name in names:
        print(f"{name:<{width}}  {fast[name] * 1e3:>8.2f}ms  {slow[name] * 1e3:>8.2f}ms  {slow[name] / fast[name]:>6.1f}x")


if __name__ == "__main__":
    main()
