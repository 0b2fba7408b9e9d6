import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orthoderiv.differentiator import (
    DerivativeFilter,
    ExactRegime,
    SampledSignal,
    SamplingError,
    WindowError,
    convergence_order,
    default_quadrature_size,
    differentiate_fn,
    differentiate_fn_many,
    differentiate_signal,
    differentiate_signal_all,
    error_constant,
    error_constant_exact,
    signal_taps,
    truncation_errors,
    window_half_width,
)
from orthoderiv.kernel import KernelSpec, moments, kernel_legendre_sum
from orthoderiv.quadrature import gauss_legendre
from orthoderiv.verify import noise_bound_check, saturation_gap

build = DerivativeFilter.build
HS = [0.2, 0.1, 0.05, 0.025, 0.0125]


def test_filter_validation():
    with pytest.raises(ValueError):
        build(1, 0, 0.0)
    with pytest.raises(ValueError):
        build(1, 0, float("inf"))
    with pytest.raises(ValueError):
        DerivativeFilter(kernel_legendre_sum(KernelSpec(3, 3)), 0.1, gauss_legendre(8))


def test_default_quadrature_size():
    assert default_quadrature_size(KernelSpec(1, 0)) == 32
    assert default_quadrature_size(KernelSpec(20, 10)) == 48


def test_fn_examples():
    assert abs(differentiate_fn(build(1, 0, 0.1), lambda t: t, 0.7) - 1) < 1e-12
    assert differentiate_fn(build(3, 3, 0.1), lambda t: t ** 9, 1.0) == pytest.approx(504, rel=1e-8)
    assert abs(differentiate_fn(build(2, 0, 0.05), np.sin, 0.0)) < 1e-10


def test_fn_scalar_only_callable():
    f = lambda u: math.exp(u)  # noqa: E731
    assert differentiate_fn(build(1, 1, 0.1), f, 0.0) == pytest.approx(1.0, rel=1e-6)
    assert np.allclose(differentiate_fn_many(build(1, 1, 0.1), np.exp, [0.0, 1.0]),
                       [1.0, math.e], rtol=1e-6)


def test_polynomial_exactness():
    worst = 0.0
    for n in range(1, 5):
        for m in range(5):
            for h in (1.0, 0.1):
                filt = build(n, m, h)
                for d in range(n, n + 2 * m + 2):
                    c = math.perm(d, n)
                    for x in (0.0, 0.3, 1.7):
                        got = differentiate_fn(filt, lambda u: u ** d, x)
                        want = c * x ** (d - n)
                        scale = abs(want) if want else c * h ** (d - n)
                        worst = max(worst, abs(got - want) / scale)
    assert worst <= 1e-9


@pytest.mark.parametrize("n,m", [(1, 0), (1, 2), (2, 1), (3, 1), (4, 2)])
def test_first_neglected_degree(n, m):
    d = n + 2 * m + 2
    errs = [abs(differentiate_fn(build(n, m, h), lambda u: u ** d, 0.0)) for h in (0.5, 0.05)]
    assert errs[1] > 0
    assert errs[0] / errs[1] == pytest.approx(10.0 ** (2 * m + 2), rel=0.05)


def test_quadrature_saturation():
    assert saturation_gap() <= 1e-12


# --- sampled signals


def test_signal_validation():
    with pytest.raises(ValueError):
        SampledSignal(0.0, 0.1, [1.0])
    with pytest.raises(ValueError):
        SampledSignal(0.0, 0.0, [1.0, 2.0])
    s = SampledSignal(1.0, 0.5, [1, 2, 3])
    assert s.x.tolist() == [1.0, 1.5, 2.0]


def test_window_width():
    assert window_half_width(0.05, 1e-3) == 50
    assert window_half_width(0.4, 0.1) == 4
    with pytest.raises(SamplingError):
        window_half_width(0.35, 0.1)


@pytest.mark.parametrize("m", [0, 1, 2])
@pytest.mark.parametrize("h", [0.04, 0.05, 0.13])
def test_linear_signal(m, h):
    sig = SampledSignal.from_function(lambda t: 2 * t, -1.0, 0.01, 301)
    half = window_half_width(h, 0.01)
    for i in (half, 100, 150, 300 - half):
        assert abs(differentiate_signal(build(1, m, h), sig, i) - 2) < 1e-6


@pytest.mark.parametrize("n,m", [(1, 0), (2, 1), (3, 2), (4, 0)])
def test_constant_signal(n, m):
    sig = SampledSignal(0.0, 0.05, np.full(100, 7.5))
    assert abs(differentiate_signal(build(n, m, 0.5), sig, 50)) < 1e-10


def test_x9_signal():
    sig = SampledSignal.from_function(lambda t: t ** 9, 0.0, 1e-3, 2001)
    got = differentiate_signal(build(3, 3, 0.05), sig, 1000)
    ref = differentiate_fn(build(3, 3, 0.05), lambda t: t ** 9, 1.0)
    assert got == pytest.approx(504, rel=1e-3)
    assert got == pytest.approx(ref, rel=1e-3)


def test_plain_trapezoid_is_available():
    # end_order=0 is the uncorrected composite trapezoid rule
    sig = SampledSignal.from_function(lambda t: 2 * t, 0.0, 0.01, 200)
    v = differentiate_signal(build(1, 0, 0.1), sig, 100, end_order=0)
    trap = np.linspace(-1, 1, 21)
    w = np.full(21, 0.1)
    w[[0, -1]] = 0.05
    expect = -10 * np.dot(w, -1.5 * trap * (2 * (1.0 + 0.1 * trap)))
    assert v == pytest.approx(expect, rel=1e-12)
    assert abs(v - 2) > 1e-3


def test_window_out_of_range():
    sig = SampledSignal(0.0, 0.01, np.zeros(50))
    filt = build(1, 0, 0.1)
    with pytest.raises(WindowError):
        differentiate_signal(filt, sig, 5)
    with pytest.raises(WindowError):
        differentiate_signal(filt, sig, 45)
    with pytest.raises(WindowError):
        differentiate_signal(filt, sig, -1)


def test_too_few_samples():
    sig = SampledSignal(0.0, 0.1, np.zeros(50))
    with pytest.raises(SamplingError):
        differentiate_signal(build(1, 0, 0.3), sig, 25)


def test_signal_all_matches_pointwise():
    sig = SampledSignal.from_function(np.sin, 0.0, 0.01, 300)
    filt = build(2, 1, 0.1)
    idx, vals = differentiate_signal_all(filt, sig)
    assert idx[0] == 10 and idx[-1] == 289
    for k in (0, 57, len(idx) - 1):
        assert vals[k] == pytest.approx(differentiate_signal(filt, sig, int(idx[k])), rel=1e-12, abs=1e-12)
    short = SampledSignal(0.0, 0.01, np.zeros(12))
    assert differentiate_signal_all(filt, short)[0].size == 0


@pytest.mark.parametrize("m", range(4))
def test_noise_bound_per_seed(m):
    eps, step, h = 1e-2, 1e-3, 0.02
    filt = build(1, m, h)
    tp = signal_taps(filt, step)
    for seed in range(100):
        rng = np.random.default_rng(1000 * m + seed)
        sig = SampledSignal(0.0, step, rng.uniform(-eps, eps, 200))
        _, vals = differentiate_signal_all(filt, sig)
        assert np.max(np.abs(vals)) <= tp.noise_gain * eps


def test_noise_bound_check():
    assert noise_bound_check().passed


# --- accuracy


def test_error_constant_examples():
    from fractions import Fraction as F
    assert error_constant_exact(KernelSpec(1, 0)) == F(1, 10)
    c11 = error_constant_exact(KernelSpec(1, 1))
    assert isinstance(c11, F)
    assert error_constant(KernelSpec(3, 3)) == pytest.approx(1 / 39070080, rel=1e-15)


@pytest.mark.parametrize("n,m", [(n, m) for n in range(1, 5) for m in range(5)])
def test_error_constant_against_moment(n, m):
    N = n + 2 * m + 2
    mom = moments(kernel_legendre_sum(KernelSpec(n, m)), N)[N]
    assert error_constant_exact(KernelSpec(n, m)) == abs(mom) / math.factorial(N)


def test_measured_error_constant():
    h = 0.01
    e = truncation_errors(KernelSpec(1, 0), np.sin, np.cos, 0.3, [h])[0]
    assert e / (h * h * math.cos(0.3)) == pytest.approx(0.1, rel=0.02)


@pytest.mark.parametrize("n,m,f,df,x", [
    (1, 0, np.sin, np.cos, 0.3),
    (1, 2, np.sin, np.cos, 0.3),
    (2, 1, np.exp, np.exp, 0.0),
])
def test_convergence_examples(n, m, f, df, x):
    assert convergence_order(KernelSpec(n, m), f, df, x, HS) == pytest.approx(2 * m + 2, abs=0.15)


def test_convergence_high_precision():
    slope = convergence_order(KernelSpec(3, 3), mpmath.sin, lambda x: -mpmath.cos(x), 0.3, HS, dps=40)
    assert slope == pytest.approx(8, abs=0.15)


def test_exact_regime():
    with pytest.raises(ExactRegime):
        convergence_order(KernelSpec(1, 2), lambda u: u ** 3, lambda u: 3 * u ** 2, 0.3, HS)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.integers(0, 4), st.floats(0.05, 2.0), st.floats(-3, 3))
def test_shift_covariance(n, m, h, x):
    # translating f and x together leaves the output unchanged
    filt = build(n, m, h)
    a = differentiate_fn(filt, np.sin, x)
    b = differentiate_fn(filt, lambda u: np.sin(u - 1.0), x + 1.0)
    assert a == pytest.approx(b, rel=1e-8, abs=1e-8 * h ** -n)
