"""Adjustable-precision derivative kernels built from orthogonal polynomials.

The kernel ``k`` of order ``n`` and precision index ``m`` turns the window
integral ``(-1/h)^n integral_{-1}^{1} k(t) f(x + h t) dt`` into an n-th
derivative estimate whose truncation error is ``O(h^(2m+2))``.
"""

from .bessel import spherical_bessel_j
from .differentiator import (
    DerivativeFilter,
    ExactRegime,
    SampledSignal,
    SamplingError,
    WindowError,
    convergence_order,
    differentiate_fn,
    differentiate_signal,
    differentiate_signal_all,
    error_constant,
    error_constant_exact,
    signal_taps,
    truncation_errors,
)
from .firstderiv import (
    kernel_first_jacobi,
    kernel_first_legendre_pair,
    kernel_second_jacobi,
    recurrence_next,
)
from .kernel import (
    K_constant,
    Kernel,
    KernelSpec,
    LiptajSystem,
    a_coefficients,
    gegenbauer_moment_integral,
    kernel_from_json,
    kernel_hypergeometric_eval,
    kernel_legendre_sum,
    kernel_m0,
    kernel_to_json,
    liptaj_solve,
    make_kernel,
    moments,
    omega_gegenbauer,
)
from .polynomial import (
    GammaHalf,
    Rational,
    RationalPoly,
    gamma_half,
    gegenbauer,
    jacobi,
    legendre,
    pochhammer,
    poly_differentiate,
    poly_integrate_sym,
)
from .quadrature import QuadratureRule, gauss_legendre
from .spectral import (
    SweepConfig,
    TransferSample,
    locate_peak,
    omega_max_estimate,
    sweep,
    transfer_analytic,
    transfer_empirical,
)

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop memoized kernels, quadrature rules and filter weights."""
    from . import differentiator, firstderiv, kernel, quadrature, spectral

    for fn in (kernel._legendre_sum, kernel.legendre_coefficients, kernel.omega_gegenbauer,
               quadrature._gauss_legendre, quadrature.gauss_legendre_polished,
               quadrature.gregory_end_corrections, differentiator._weighted_kernel,
               spectral.bessel_weights, firstderiv.jacobi_legendre_lhs):
        fn.cache_clear()
