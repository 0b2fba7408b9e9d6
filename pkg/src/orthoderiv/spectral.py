"""Transfer function of the derivative filter.

For the filter ``D_h f(x) = (-1/h)^n integral k(t) f(x + h t) dt`` the
response to ``e^{i omega x}`` is ``H(h, omega) e^{i omega x}`` with

    H(h, omega) = (-1/h)^n integral_{-1}^{1} k(t) e^{i omega h t} dt
                = (i/h)^n 2^n/sqrt(pi) sum_j (2n+4j+1) Gamma(n+j+1/2)/j! j_{n+2j}(h omega).

The sum follows from ``integral P_N(t) e^{ixt} dt = 2 i^N j_N(x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .bessel import spherical_bessel_j
from .differentiator import DerivativeFilter, default_quadrature_size, differentiate_fn
from .kernel import SQRT_PI, KernelSpec, _spec
from .polynomial import gamma_half

PEAK_SCAN_POINTS = 512
PEAK_RTOL = 1e-6


@dataclass(frozen=True)
class TransferSample:
    omega: float
    re: float
    im: float
    modulus: float

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class SweepConfig:
    omega_min: float
    omega_max: float
    points: int = 200
    spacing: str = "logarithmic"

    def __post_init__(self):
        if self.spacing not in ("linear", "logarithmic"):
            raise ValueError(f"spacing must be 'linear' or 'logarithmic', got {self.spacing!r}")
        if not (math.isfinite(self.omega_min) and math.isfinite(self.omega_max)):
            raise ValueError("frequency bounds must be finite")
        # linear grids may start at 0 so the DC row can be emitted
        lo_ok = self.omega_min > 0 or (self.spacing == "linear" and self.omega_min == 0)
        if not lo_ok:
            raise ValueError("omega_min must be positive (or 0 on a linear grid)")
        if not self.omega_min < self.omega_max:
            raise ValueError("omega_min must be smaller than omega_max")
        if int(self.points) != self.points or self.points < 2:
            raise ValueError("points must be an integer >= 2")

    def grid(self) -> np.ndarray:
        if self.spacing == "linear":
            return np.linspace(self.omega_min, self.omega_max, int(self.points))
        return np.geomspace(self.omega_min, self.omega_max, int(self.points))


@lru_cache(maxsize=None)
def bessel_weights(spec: KernelSpec) -> tuple:
    """``(N, 2^n/sqrt(pi) (2n+4j+1) Gamma(n+j+1/2)/j!)`` for j = 0..m, as floats."""
    n = spec.n
    out = []
    for j in range(spec.m + 1):
        g = (gamma_half(Fraction(2 * n + 2 * j + 1, 2)) / SQRT_PI).exact()
        w = Fraction(2 ** n * (2 * n + 4 * j + 1), math.factorial(j)) * g
        out.append((n + 2 * j, float(w)))
    return tuple(out)


def _bessel_sum(spec: KernelSpec, x: float) -> float:
    return math.fsum(w * spherical_bessel_j(N, x) for N, w in bessel_weights(spec))


_I_POWERS = ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))


def transfer_analytic(spec, h: float, omega: float) -> TransferSample:
    """Transfer function from the spherical Bessel sum.

    Parameters
    ----------
    spec : KernelSpec
        Kernel order and precision index.
    h : float
        Window half-width, positive.
    omega : float
        Angular frequency.

    Returns
    -------
    TransferSample
        ``H = (i/h)^n S(h omega)``; the phase is the one of the direct
        integral, the magnitude ``|S|/h^n`` that of the Bessel sum.
    """
    spec = _spec(spec)
    if not h > 0:
        raise ValueError("h must be positive")
    omega = float(omega)
    s = _bessel_sum(spec, h * omega) / h ** spec.n
    cr, ci = _I_POWERS[spec.n % 4]
    return TransferSample(omega, cr * s, ci * s, abs(s))


def transfer_empirical(filt: DerivativeFilter, omega: float) -> TransferSample:
    """Probe the filter with ``cos(omega u)`` and ``sin(omega u)`` at ``x = 0``."""
    omega = float(omega)
    re = differentiate_fn(filt, lambda u: np.cos(omega * u), 0.0)
    im = differentiate_fn(filt, lambda u: np.sin(omega * u), 0.0)
    return TransferSample(omega, re, im, math.hypot(re, im))


def probe_quadrature_size(spec, h_omega: float) -> int:
    """Gauss-Legendre size that resolves ``k(t) e^{i x t}`` up to ``x = h_omega``."""
    spec = _spec(spec)
    return max(default_quadrature_size(spec), int(math.ceil(abs(h_omega))) + spec.degree + 32)


def probe_filter(spec, h: float, omega_max: float) -> DerivativeFilter:
    spec = _spec(spec)
    return DerivativeFilter.build(spec.n, spec.m, h, probe_quadrature_size(spec, h * omega_max))


def omega_max_estimate(spec, h: float) -> float:
    spec = _spec(spec)
    if not h > 0:
        raise ValueError("h must be positive")
    return (2.0 / h) * math.sqrt(2 * spec.m + spec.n + 2.5)


def locate_peak(spec, h: float) -> float:
    """Frequency of the global maximum of ``|H|`` on ``[0, 4 * estimate]``.

    A coarse scan brackets the global maximum (``|H|`` has sidelobes past the
    peak), then a golden-section search refines it to ``PEAK_RTOL``.
    """
    spec = _spec(spec)
    hi = 4.0 * omega_max_estimate(spec, h)
    grid = np.linspace(0.0, hi, PEAK_SCAN_POINTS)
    mod = np.array([transfer_analytic(spec, h, w).modulus for w in grid])
    if np.ptp(mod) == 0:
        raise ArithmeticError("|H| is flat on the search interval")
    i = int(np.argmax(mod))
    if i == 0 or i == len(grid) - 1:
        return float(grid[i])
    res = minimize_scalar(lambda w: -transfer_analytic(spec, h, w).modulus,
                          bracket=(grid[i - 1], grid[i], grid[i + 1]),
                          method="golden", tol=PEAK_RTOL)
    return float(res.x)


def sweep(spec, h: float, config: SweepConfig) -> list:
    spec = _spec(spec)
    return [transfer_analytic(spec, h, float(w)) for w in np.sort(config.grid())]


def sweep_rows(samples: Sequence[TransferSample]) -> list:
    """Rows ``(omega, re, im, modulus, log10_omega, log10_modulus)``; logs are None where undefined."""
    rows = []
    for s in samples:
        lw = math.log10(s.omega) if s.omega > 0 else None
        lm = math.log10(s.modulus) if s.modulus > 0 else None
        rows.append((s.omega, s.re, s.im, s.modulus, lw, lm))
    return rows


__all__ = [
    "TransferSample", "SweepConfig", "transfer_analytic", "transfer_empirical",
    "omega_max_estimate", "locate_peak", "sweep", "sweep_rows", "probe_filter",
    "probe_quadrature_size", "bessel_weights",
]
