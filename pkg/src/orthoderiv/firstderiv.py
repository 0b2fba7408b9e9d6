"""First- and second-derivative kernels in closed form.

For ``n = 1`` the kernels ``k_m`` form an orthogonal family with respect to
the weight ``t^2`` on [-1, 1]; this module builds them from Legendre pairs,
from a single Jacobi polynomial and from a three-term recurrence, and
exposes the residuals of the ODE-type identities they satisfy.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .kernel import _legendre_sum, KernelSpec
from .polynomial import (
    RationalPoly,
    T,
    gamma_half,
    jacobi_in,
    legendre_table,
    poly_differentiate,
    poly_integrate_sym,
)

_X = RationalPoly([-1, 0, 2])  # 2t^2 - 1
_SQRT_PI_GH = gamma_half(Fraction(1, 2))
_ONE_MINUS_T2 = RationalPoly([1, 0, -1])


def _beta_int(a: int, b: int) -> Fraction:
    return Fraction(math.factorial(a - 1) * math.factorial(b - 1), math.factorial(a + b - 1))


def _gamma_over_sqrt_pi(z: Fraction) -> Fraction:
    return (gamma_half(z) / _SQRT_PI_GH).exact()


def kernel_first_legendre_pair(m: int) -> RationalPoly:
    """``k_m = (-1)^(m+1) / (B(m+1, m+2) 2^(2m+2)) * [(2m+2) t P_{2m+2} + P_{2m+1}] / t^2``."""
    if m < 0:
        raise ValueError("m must be >= 0")
    P = legendre_table(2 * m + 2)
    bracket = T * P[2 * m + 2] * (2 * m + 2) + P[2 * m + 1]
    c = Fraction((-1) ** (m + 1)) / (_beta_int(m + 1, m + 2) * 2 ** (2 * m + 2))
    return bracket.shift_down(2) * c


def kernel_first_jacobi(m: int) -> RationalPoly:
    """``k_m = (-1)^(m+1) 2 Gamma(m+5/2) / (sqrt(pi) m!) * t P_m^{(0,3/2)}(2t^2-1)``."""
    if m < 0:
        raise ValueError("m must be >= 0")
    c = (-1) ** (m + 1) * 2 * _gamma_over_sqrt_pi(Fraction(2 * m + 5, 2)) / math.factorial(m)
    return T * jacobi_in(m, 0, Fraction(3, 2), _X) * c


def kernel_second_jacobi(m: int) -> RationalPoly:
    """Second-derivative kernel as a combination of two Jacobi polynomials in ``2t^2 - 1``."""
    if m < 0:
        raise ValueError("m must be >= 0")
    c = Fraction((-1) ** m * 4) * _gamma_over_sqrt_pi(Fraction(2 * m + 7, 2)) \
        / (math.factorial(m) * (4 * m + 7))
    b = jacobi_in(m, 0, Fraction(3, 2), _X) * (2 * m + 4) \
        + jacobi_in(m + 1, 0, Fraction(3, 2), _X) * (2 * m + 3)
    return b * c


def recurrence_coefficients(m: int) -> tuple:
    """``(1/A_m, C_m/A_m)`` of the three-term recurrence."""
    inv_a = Fraction((4 * m + 5) * (4 * m + 7), (2 * m + 2) ** 2)
    c_over_a = Fraction((2 * m + 3) ** 2 * (4 * m + 7), (2 * m + 2) ** 2 * (4 * m + 3))
    return inv_a, c_over_a


def recurrence_next(k_m: RationalPoly, k_prev: RationalPoly, m: int) -> RationalPoly:
    """``k_{m+1} = (1 + C_m/A_m - t^2/A_m) k_m - (C_m/A_m) k_{m-1}`` (``k_{-1} = 0``)."""
    inv_a, c_over_a = recurrence_coefficients(m)
    factor = RationalPoly([1 + c_over_a, 0, -inv_a])
    return factor * k_m - k_prev * c_over_a


def recurrence_sequence(mmax: int) -> list:
    ks = [RationalPoly([0, Fraction(-3, 2)])]
    prev = RationalPoly()
    for m in range(mmax):
        nxt = recurrence_next(ks[m], prev, m)
        prev = ks[m]
        ks.append(nxt)
    return ks


def first_kernel(m: int) -> RationalPoly:
    return _legendre_sum(KernelSpec(1, m))


def orthogonality_norm(m: int) -> Fraction:
    """``h_m = Gamma(2m+4)^2 / (2^(4m+3) (4m+5) Gamma(m+1)^2 Gamma(m+2)^2)``."""
    g = math.factorial(2 * m + 3)
    return Fraction(g * g, 2 ** (4 * m + 3) * (4 * m + 5)
                    * math.factorial(m) ** 2 * math.factorial(m + 1) ** 2)


def weighted_inner(p: RationalPoly, q: RationalPoly) -> Fraction:
    """``integral_{-1}^{1} p(t) q(t) t^2 dt``."""
    return poly_integrate_sym(p * q * RationalPoly.monomial(2))


def differential_difference_residual(m: int) -> RationalPoly:
    """Residual of ``t(1-t^2) k_m' = ((4m^2+4m+3)/(4m+3) - (2m+1)t^2) k_m - (2m+3)^2/(4m+3) k_{m-1}``."""
    km = first_kernel(m)
    kprev = first_kernel(m - 1) if m >= 1 else RationalPoly()
    lhs = T * _ONE_MINUS_T2 * poly_differentiate(km, 1)
    coef = RationalPoly([Fraction(4 * m * m + 4 * m + 3, 4 * m + 3), 0, -(2 * m + 1)])
    rhs = coef * km - kprev * Fraction((2 * m + 3) ** 2, 4 * m + 3)
    return lhs - rhs


def differential_equation_residual(m: int) -> RationalPoly:
    """Residual of ``t^2(1-t^2)^2 k'' + A t(1-t^2) k' - B k`` with
    ``A = 2(1-2t^2)`` and ``B = 2(m+2)(2m+1)t^4 - 2(2m+3)(m+1)t^2 + 2``."""
    k = first_kernel(m)
    A = RationalPoly([2, 0, -4])
    B = RationalPoly([2, 0, -2 * (2 * m + 3) * (m + 1), 0, 2 * (m + 2) * (2 * m + 1)])
    return (RationalPoly.monomial(2) * _ONE_MINUS_T2 ** 2 * poly_differentiate(k, 2)
            + A * T * _ONE_MINUS_T2 * poly_differentiate(k, 1) - B * k)


@lru_cache(maxsize=None)
def jacobi_legendre_lhs(m: int) -> RationalPoly:
    """``[(2m+2) P_{2m+3} + (2m+3) P_{2m+1}] / ((4m+5) t^3)``."""
    P = legendre_table(2 * m + 3)
    bracket = P[2 * m + 3] * (2 * m + 2) + P[2 * m + 1] * (2 * m + 3)
    return bracket.shift_down(3) / (4 * m + 5)


def jacobi_legendre_printed(m: int) -> RationalPoly:
    """The same bracket with the alternative printed prefactor ``(m+2) 2^(m+3)/(4m+5) * 2/t^3``."""
    P = legendre_table(2 * m + 3)
    bracket = P[2 * m + 3] * (2 * m + 2) + P[2 * m + 1] * (2 * m + 3)
    return bracket.shift_down(3) * Fraction((m + 2) * 2 ** (m + 3) * 2, 4 * m + 5)
