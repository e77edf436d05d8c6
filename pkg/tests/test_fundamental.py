import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from expspline.admissibility import TWO_PI, check_admissibility
from expspline.bspline import SplineParams, eval_time_domain_array
from expspline.exceptions import ConfigError, NotAdmissibleError, PrecisionError, RangeError
from expspline.fundamental import (
    CurveSample,
    FourierInverter,
    QuadratureSpec,
    compute_coefficients,
    default_model,
    emit_figure_data,
    eval_L_fourier,
    eval_L_fourier_array,
    eval_L_series,
    eval_L_series_array,
    fourier_tail_bound,
    integer_samples,
    integrand_h,
    integrand_h_array,
    nodes_for,
)

SQRT6 = math.sqrt(6.0)
P = SplineParams(2.0, SQRT6)


def test_integrand_h_definition():
    xi = 1.3
    q = complex(xi, P.a) / TWO_PI
    from expspline.admissibility import denominator_Z
    from expspline.complex_analysis import principal_power

    expect = principal_power(q, -P.sigma) / denominator_Z(P, q)
    assert integrand_h(P, xi) == pytest.approx(expect, rel=1e-14)
    # only the denominator is periodised
    far = integrand_h(P, xi + 4 * TWO_PI)
    q_far = complex(xi + 4 * TWO_PI, P.a) / TWO_PI
    assert far == pytest.approx(principal_power(q_far, -P.sigma) / denominator_Z(P, q), rel=1e-12)


def test_integrand_h_large_xi_bound():
    rep = check_admissibility(P)
    xi = np.linspace(30.0, 2000.0, 400)
    h = np.abs(integrand_h_array(P, np.concatenate([xi, -xi])))
    bound = np.abs(TWO_PI / (np.concatenate([xi, -xi]) + 1j * P.a)) ** P.sigma / rep.min_abs_Z_scan
    assert np.all(h <= bound * (1 + 1e-12))


def test_fourier_examples():
    assert eval_L_fourier(P, 0.0) == pytest.approx(1.0, abs=2e-3)
    assert eval_L_fourier(P, 3.0) == pytest.approx(0.0, abs=2e-3)
    p = SplineParams(2.0, 3.5)
    assert eval_L_fourier(p, 0.5) == pytest.approx(eval_L_series(default_model(p), 0.5), abs=2e-3)


def test_fourier_realness_and_tail():
    inv = FourierInverter(P)
    assert inv.tail_bound <= inv.quad.tail_tol
    vals = inv.integrate(np.linspace(-6, 6, 61))
    assert np.abs(vals.imag).max() <= 10 * inv.quad.tail_tol


def test_fourier_refinement_stability():
    x = np.linspace(-4, 4, 17)
    base = eval_L_fourier_array(P, x)
    fine = eval_L_fourier_array(P, x, QuadratureSpec(nodes_per_period=128))
    assert np.abs(base - fine).max() <= QuadratureSpec().tail_tol


def test_fourier_fixed_K_too_small():
    with pytest.raises(PrecisionError, match="periods"):
        FourierInverter(P, QuadratureSpec(periods_K=4))


def test_tail_bound_formula():
    k, zmin = 64, 3.0
    expect = (TWO_PI**P.sigma / (zmin * (P.sigma - 1))) * (TWO_PI * k) ** (1 - P.sigma) / math.pi
    assert fourier_tail_bound(P, k, zmin) == pytest.approx(expect)


def test_oscillation_node_rule():
    assert nodes_for(0.5, 64) == 64
    assert nodes_for(8.0, 64) == 64
    assert nodes_for(9.5, 64) == 160
    assert nodes_for(-12.0, 64) == 192


def test_fourier_far_point_uses_more_nodes():
    model = default_model(P)
    assert eval_L_fourier(P, 10.5) == pytest.approx(eval_L_series(model, 10.5), abs=2e-3)


@pytest.mark.parametrize("p", [SplineParams(5.0, SQRT6), SplineParams(2.0, 1.5)])
def test_refuses_non_admissible(p):
    with pytest.raises(NotAdmissibleError) as err:
        compute_coefficients(p)
    assert err.value.report is not None and not err.value.report.admissible
    with pytest.raises(NotAdmissibleError):
        eval_L_fourier(p, 0.0)


def test_coefficient_consistency():
    model = default_model(P)
    for m in range(-10, 11):
        ks = np.arange(model.k_min, model.k_max + 1)
        val = float(np.sum(model.coeffs * eval_time_domain_array(P, m - ks)))
        assert val == pytest.approx(float(m == 0), abs=1e-8)


@pytest.mark.parametrize("p", [P, SplineParams(2.0, 4.25)])
def test_coefficient_aliasing(p):
    a = compute_coefficients(p, 4096, (-256, 256))
    b = compute_coefficients(p, 8192, (-256, 256))
    assert np.abs(a.coeffs - b.coeffs).max() <= 1e-10


def test_c0_is_mean_of_reciprocal_symbol():
    M = 4096
    e = integer_samples(P, M // 2)
    j = np.arange(M)
    s = np.array([np.sum(e * np.exp(2j * math.pi * jj * np.arange(e.size) / M)) for jj in j[:: M // 256]])
    # coarse check of the DFT convention on a subsample, then the full identity
    padded = np.zeros(M)
    padded[: e.size] = e
    full = M * np.fft.ifft(padded)
    assert np.allclose(full[:: M // 256], s, atol=1e-13)
    model = default_model(P)
    assert model.coefficient(0) == pytest.approx(float(np.mean(1.0 / full).real), abs=1e-14)


def test_integer_samples_decay():
    e = integer_samples(P, 2048)
    assert e[0] == 0.0
    assert abs(e[-1]) >= 1e-15 or e.size == 2048
    assert e.size < 40


def test_coefficient_support_and_dominance():
    model = default_model(P)
    c = {k: model.coefficient(k) for k in range(-5, 6)}
    # E(0) = 0, so L(0) = 1 is carried by the shift k = -1
    assert max(c, key=lambda k: abs(c[k])) == -1
    assert all(abs(c[k]) < 1e-14 for k in range(-5, -1))


def test_series_interpolation_and_support():
    model = default_model(P)
    m = np.arange(-3, 4, dtype=float)
    assert np.abs(eval_L_series_array(model, m) - (m == 0)).max() <= 1e-6
    left = eval_L_series_array(model, np.linspace(-6, -1, 51))
    assert np.abs(left).max() <= 1e-12


def test_series_range_errors():
    model = compute_coefficients(P, 1024, (-32, 32))
    assert model.reliable_range == (-28, 28)
    with pytest.raises(RangeError):
        eval_L_series(model, -40.0)
    with pytest.raises(RangeError):
        eval_L_series(model, 29.0)
    with pytest.raises(RangeError):
        model.coefficient(33)


@pytest.mark.parametrize(
    "M,window", [(1000, (-10, 10)), (128, (-10, 10)), (1024, (-600, 10)), (1024, (5, 5))]
)
def test_coefficient_config(M, window):
    with pytest.raises(ConfigError):
        compute_coefficients(P, M, window)


def test_model_is_immutable():
    model = default_model(P)
    with pytest.raises(ValueError):
        model.coeffs[0] = 1.0
    with pytest.raises(AttributeError):
        model.k_min = 0


def test_model_shared_across_threads():
    model = default_model(P)
    grids = [np.linspace(-5 + i, 5 + i, 101) for i in range(8)]
    serial = [eval_L_series_array(model, g) for g in grids]
    with ThreadPoolExecutor(4) as pool:
        parallel = list(pool.map(lambda g: eval_L_series_array(model, g), grids))
    for s, p in zip(serial, parallel):
        assert np.array_equal(s, p)


def test_curve_sample_validation():
    with pytest.raises(ValueError):
        CurveSample([0.0, 1.0], [1.0], {})
    with pytest.raises(ValueError):
        CurveSample([0.0, 0.0], [1.0, 2.0], {})
    c = CurveSample([0.0, 1.0], [1 + 1j, 2.0], {"which": "h"})
    assert c.is_complex and c.to_dict()["values"][0] == {"re": 1.0, "im": 1.0}


def test_figure_sweeps():
    grid = np.linspace(-20, 20, 41)
    curves = emit_figure_data("abs_h", [SplineParams(2.0, s) for s in (2.5, 2.75, 3.0, 3.5)], grid)
    assert len(curves) == 4 and all(np.all(c.values > 0) for c in curves)
    # single peak at xi = 0
    assert all(int(np.argmax(c.values)) == 20 for c in curves)
    re = emit_figure_data("re_h", [SplineParams(a, SQRT6) for a in (2, 3, 4, 5)], grid)
    assert [c.meta["a"] for c in re] == [2.0, 3.0, 4.0, 5.0]
    again = emit_figure_data("re_h", [SplineParams(a, SQRT6) for a in (2, 3, 4, 5)], grid)
    assert all(np.array_equal(x.values, y.values) for x, y in zip(re, again))


def test_l_curve_figure():
    x = np.linspace(-6, 10, 161)
    curves = emit_figure_data("L_curve", [SplineParams(2.0, s) for s in (SQRT6, 3.5, 4.25)], x)
    ints = np.abs(x - np.round(x)) < 1e-12
    for c in curves:
        assert np.abs(c.values[ints] - (np.round(x[ints]) == 0)).max() <= 1e-6
    with pytest.raises(NotAdmissibleError, match="sigma=2.449"):
        emit_figure_data("L_curve", [SplineParams(2.0, 3.0), SplineParams(5.0, SQRT6)], x)
    with pytest.raises(ValueError):
        emit_figure_data("bogus", [P], x)
