"""Kernels applied as n-th derivative filters.

``D_h f(x) = (-1/h)^n * integral_{-1}^{1} k(t) f(x + h t) dt``

evaluated either by Gauss-Legendre quadrature on a callable, or on the native
grid of a uniformly sampled signal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .kernel import Kernel, KernelSpec, kernel_legendre_sum, legendre_coefficients
from .polynomial import binomial, pochhammer
from .quadrature import (
    QuadratureRule,
    corrected_trapezoid_weights,
    gauss_legendre,
    gauss_legendre_mp,
    gauss_legendre_polished,
)

DEFAULT_END_ORDER = 8
MIN_WINDOW_SAMPLES = 9


class WindowError(ValueError):
    """The filter window does not fit the signal at the requested position."""


class SamplingError(ValueError):
    """The window holds too few samples for the signal's step."""


class ExactRegime(ArithmeticError):
    """Every measured error sits below the roundoff floor; no slope exists."""


def default_quadrature_size(spec: KernelSpec) -> int:
    return max(32, spec.n + 2 * spec.m + 8)


def kernel_values(kernel: Kernel, t) -> np.ndarray:
    """k(t) in floating point via its Legendre series (better conditioned than monomials)."""
    c = [float(v) for v in legendre_coefficients(kernel.spec)]
    return np.polynomial.legendre.legval(np.asarray(t, dtype=float), c)


@lru_cache(maxsize=128)
def _weighted_kernel(spec: KernelSpec, Q: int) -> tuple:
    """``w_q k(t_q)`` for the Gauss-Legendre rule of size Q as a (hi, lo) float pair.

    The products are formed at 34 digits; keeping the rounding residual
    preserves the vanishing moments far below double-precision cancellation.
    """
    import mpmath

    k = kernel_legendre_sum(spec).k
    nodes, weights = gauss_legendre_polished(Q)
    with mpmath.workdps(34):
        exact = [w * k(t) for w, t in zip(weights, nodes)]
        hi = np.array([float(v) for v in exact])
        lo = np.array([float(v - mpmath.mpf(float(v))) for v in exact])
    hi.setflags(write=False)
    lo.setflags(write=False)
    return hi, lo


@dataclass(frozen=True)
class DerivativeFilter:
    kernel: Kernel
    h: float
    rule: QuadratureRule
    _wk: np.ndarray = field(init=False, repr=False, compare=False)

    _wk_lo: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (self.h > 0 and math.isfinite(self.h)):
            raise ValueError(f"h must be a positive finite number, got {self.h}")
        if self.rule.exactness_degree < self.kernel.spec.degree + 8:
            raise ValueError("quadrature rule too small for this kernel")
        Q = self.rule.size
        if np.array_equal(self.rule.nodes, gauss_legendre(Q).nodes):
            hi, lo = _weighted_kernel(self.kernel.spec, Q)
        else:
            hi = self.rule.weights * kernel_values(self.kernel, self.rule.nodes)
            lo = np.zeros_like(hi)
        object.__setattr__(self, "_wk", hi)
        object.__setattr__(self, "_wk_lo", lo)

    @classmethod
    def build(cls, n: int, m: int = 0, h: float = 0.1, Q: int | None = None) -> "DerivativeFilter":
        spec = KernelSpec(n, m)
        rule = gauss_legendre(Q or default_quadrature_size(spec))
        return cls(kernel_legendre_sum(spec), float(h), rule)

    @property
    def n(self) -> int:
        return self.kernel.n

    @property
    def scale(self) -> float:
        return (-1.0 / self.h) ** self.n


def _apply(f: Callable, xs: np.ndarray) -> np.ndarray:
    try:
        y = np.asarray(f(xs), dtype=float)
        if y.shape == xs.shape:
            return y
    except Exception:
        pass
    return np.array([float(f(float(v))) for v in xs])


def differentiate_fn(filt: DerivativeFilter, f: Callable[[float], float], x: float) -> float:
    """``(-1/h)^n sum_q w_q k(t_q) f(x + h t_q)``."""
    vals = _apply(f, x + filt.h * filt.rule.nodes)
    return filt.scale * (float(np.dot(filt._wk, vals)) + float(np.dot(filt._wk_lo, vals)))


def differentiate_fn_many(filt: DerivativeFilter, f: Callable, xs: Sequence[float]) -> np.ndarray:
    return np.array([differentiate_fn(filt, f, float(x)) for x in xs])


# --------------------------------------------------------------------------
# sampled signals


@dataclass(frozen=True)
class SampledSignal:
    start: float
    step: float
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or len(v) < 2:
            raise ValueError("a signal needs at least two samples")
        if not (self.step > 0):
            raise ValueError("step must be positive")
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.values)

    @property
    def x(self) -> np.ndarray:
        return self.start + self.step * np.arange(len(self.values))

    @classmethod
    def from_function(cls, f: Callable, start: float, step: float, count: int) -> "SampledSignal":
        xs = start + step * np.arange(count)
        return cls(start, step, _apply(f, xs))


@dataclass(frozen=True)
class SignalTaps:
    """Discrete filter: ``output[i] = dot(taps, values[i-half : i+half+1])``."""

    half: int
    h_eff: float
    taps: np.ndarray

    @property
    def noise_gain(self) -> float:
        """Bound on |output| per unit of bounded sample noise."""
        return float(np.sum(np.abs(self.taps)))


def window_half_width(h: float, step: float) -> int:
    r = h / step
    half = int(round(r)) if abs(r - round(r)) <= 1e-9 * max(1.0, r) else int(math.floor(r))
    if 2 * half + 1 < MIN_WINDOW_SAMPLES:
        raise SamplingError(
            f"window h={h} holds {2 * half + 1} samples at step {step}; need >= {MIN_WINDOW_SAMPLES}")
    return half


def signal_taps(filt: DerivativeFilter, step: float, end_order: int = DEFAULT_END_ORDER) -> SignalTaps:
    """Taps of the native-grid rule.

    The half-width is ``h/step`` samples (rounded down when ``h`` is not a
    multiple of the step, so the window edges fall on samples). The integral
    is the composite trapezoid rule plus Gregory end corrections of order
    ``min(end_order, 2*half + 1)``; ``end_order=0`` gives the plain trapezoid
    rule. The corrections at the two ends may overlap on short windows, which
    keeps the rule exact on polynomials of degree below the order.
    """
    half = window_half_width(filt.h, step)
    N = 2 * half
    t = (np.arange(N + 1) - half) / half
    w = corrected_trapezoid_weights(N, min(end_order, N + 1)) / half
    h_eff = half * step
    taps = (-1.0 / h_eff) ** filt.n * w * kernel_values(filt.kernel, t)
    return SignalTaps(half, h_eff, taps)


def differentiate_signal(filt: DerivativeFilter, signal: SampledSignal, index: int,
                         end_order: int = DEFAULT_END_ORDER) -> float:
    tp = signal_taps(filt, signal.step, end_order)
    lo, hi = index - tp.half, index + tp.half
    if lo < 0 or hi >= len(signal) or index < 0:
        raise WindowError(f"window around index {index} leaves the signal [0, {len(signal) - 1}]")
    return float(np.dot(tp.taps, signal.values[lo:hi + 1]))


def differentiate_signal_all(filt: DerivativeFilter, signal: SampledSignal,
                             end_order: int = DEFAULT_END_ORDER):
    """Derivative at every index whose window fits; returns (indices, values)."""
    tp = signal_taps(filt, signal.step, end_order)
    if len(signal) < 2 * tp.half + 1:
        return np.array([], dtype=int), np.array([])
    out = np.correlate(signal.values, tp.taps, mode="valid")
    idx = np.arange(tp.half, len(signal) - tp.half)
    return idx, out


# --------------------------------------------------------------------------
# accuracy


def error_constant_exact(spec: KernelSpec) -> Fraction:
    """``|P^{(n)}_{N}(0)| / (|k_N| N!)`` with ``N = n + 2m + 2`` and ``k_N`` the leading coefficient of ``P_N``."""
    n, m = spec.n, spec.m
    j = m + 1
    N = n + 2 * j
    dP0 = pochhammer(N + 1, n) * Fraction(binomial(N, j), 2 ** N)
    lead = Fraction(math.factorial(2 * N), 2 ** N * math.factorial(N) ** 2)
    return abs(dP0) / (lead * math.factorial(N))


def error_constant(spec: KernelSpec) -> float:
    return float(error_constant_exact(spec))


def truncation_errors(spec: KernelSpec, f: Callable, dnf: Callable, x: float,
                      h_list: Sequence[float], dps: int | None = None,
                      Q: int | None = None) -> list:
    """|filter(f) - f^(n)(x)| for each h; mpmath arithmetic at ``dps`` digits when given."""
    Q = Q or default_quadrature_size(spec)
    kernel = kernel_legendre_sum(spec)
    if dps is None:
        out = []
        for h in h_list:
            filt = DerivativeFilter(kernel, float(h), gauss_legendre(Q))
            out.append(abs(differentiate_fn(filt, f, x) - dnf(x)))
        return out
    import mpmath

    with mpmath.workdps(dps):
        nodes, weights = gauss_legendre_mp(Q, dps)
        kv = [kernel.k(t) for t in nodes]
        X = mpmath.mpf(x)
        exact = dnf(X)
        out = []
        for h in h_list:
            H = mpmath.mpf(h)
            s = mpmath.fsum(w * k * f(X + H * t) for w, k, t in zip(weights, kv, nodes))
            out.append(float(abs((-1 / H) ** spec.n * s - exact)))
        return out


def convergence_order(spec: KernelSpec, f: Callable, dnf: Callable, x: float,
                      h_list: Sequence[float], dps: int | None = None,
                      floor: float | None = None) -> float:
    """Least-squares slope of log|error| against log h.

    Errors below ``floor`` are dropped as roundoff (default 1e-12 in double
    precision, ``10^-(dps-5)`` with ``dps`` digits). Raises :class:`ExactRegime`
    when fewer than two usable points remain.
    """
    errs = truncation_errors(spec, f, dnf, x, h_list, dps=dps)
    if floor is None:
        floor = 1e-12 if dps is None else 10.0 ** (-(dps - 5))
    if all(e < floor * 0.1 for e in errs) and dps is None:
        raise ExactRegime("all errors below 1e-13")
    pts = [(math.log(h), math.log(e)) for h, e in zip(h_list, errs) if e >= floor]
    if len(pts) < 2:
        raise ExactRegime(f"fewer than two errors above the floor {floor:g}")
    lh, le = np.array(pts).T
    slope, _ = np.polyfit(lh, le, 1)
    return float(slope)
