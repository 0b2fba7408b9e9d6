"""Synthesis of the basic derivative kernel k(t) and its companion omega(t).

A kernel of order ``n`` and precision index ``m`` is a polynomial of degree
``n + 2m`` on [-1, 1] with the moment structure

    integral k(t) t^j dt = (-1)^n n!  for j = n,
                         = 0          for every other j <= n + 2m + 1,

so that ``(-1/h)^n * integral k(t) f(x + h t) dt`` reproduces ``f^(n)(x)``
with a leading error of order ``h^(2m+2)``. Several independent
constructions are provided; they agree exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .polynomial import (
    ONE,
    T,
    GammaHalf,
    RationalPoly,
    gamma_half,
    gegenbauer,
    legendre,
    legendre_table,
    pochhammer,
    poly_differentiate,
    poly_integrate_sym,
)

SQRT_PI = GammaHalf(Fraction(1), 1)
PI = GammaHalf(Fraction(1), 2)


@dataclass(frozen=True)
class KernelSpec:
    n: int
    m: int = 0

    def __post_init__(self):
        if not isinstance(self.n, int) or not isinstance(self.m, int):
            raise TypeError("n and m must be integers")
        if self.n < 1:
            raise ValueError(f"derivative order n must be >= 1, got {self.n}")
        if self.m < 0:
            raise ValueError(f"precision index m must be >= 0, got {self.m}")

    @property
    def degree(self) -> int:
        return self.n + 2 * self.m

    @property
    def exact_degree(self) -> int:
        """Highest monomial degree the filter differentiates exactly."""
        return self.n + 2 * self.m + 1


@dataclass(frozen=True)
class Kernel:
    spec: KernelSpec
    k: RationalPoly
    omega: RationalPoly

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def m(self) -> int:
        return self.spec.m

    def __call__(self, t):
        return self.k(t)


def _spec(n_or_spec, m=None) -> KernelSpec:
    if isinstance(n_or_spec, KernelSpec):
        return n_or_spec
    return KernelSpec(n_or_spec, 0 if m is None else m)


# --------------------------------------------------------------------------
# closed forms


@lru_cache(maxsize=None)
def _legendre_sum(spec: KernelSpec) -> RationalPoly:
    P = legendre_table(spec.degree)
    acc = RationalPoly()
    for N, c in enumerate(legendre_coefficients(spec)):
        if c:
            acc = acc + P[N] * c
    return acc


@lru_cache(maxsize=None)
def legendre_coefficients(spec: KernelSpec) -> tuple:
    """Exact coefficients ``c_N`` with ``k = sum_N c_N P_N`` (index N = Legendre degree)."""
    spec = _spec(spec)
    n, m = spec.n, spec.m
    c = [Fraction(0)] * (n + 2 * m + 1)
    for j in range(m + 1):
        g = (gamma_half(Fraction(2 * n + 2 * j + 1, 2)) / SQRT_PI).exact()
        c[n + 2 * j] = Fraction((-1) ** (n + j) * 2 ** n, 2) * (2 * n + 4 * j + 1) * g / math.factorial(j)
    return tuple(c)


def kernel_legendre_sum(spec: KernelSpec) -> Kernel:
    """Production constructor: k as a finite Legendre series.

    ``k(t) = (-1)^n 2^(n-1)/sqrt(pi) * sum_j (2n+4j+1) Gamma(n+j+1/2)/j! (-1)^j P_{n+2j}(t)``
    with ``omega`` attached from the Gegenbauer closed form.
    """
    spec = _spec(spec)
    k = _legendre_sum(spec)
    om = omega_gegenbauer(spec)
    if poly_differentiate(om, spec.n) != k:
        raise ArithmeticError(f"omega^(n) != k for {spec}")
    return Kernel(spec, k, om)


@lru_cache(maxsize=None)
def omega_gegenbauer(spec: KernelSpec) -> RationalPoly:
    """``omega(t) = (-1)^m/pi * G(m+3/2) G(n+1/2)/G(m+n+1) * (1-t^2)^n / t * C_{2m+1}^{(n+1/2)}(t)``."""
    spec = _spec(spec)
    n, m = spec.n, spec.m
    c = (gamma_half(Fraction(2 * m + 3, 2)) * gamma_half(Fraction(2 * n + 1, 2))
         / gamma_half(m + n + 1) / PI).exact() * (-1) ** m
    C = gegenbauer(2 * m + 1, Fraction(2 * n + 1, 2))
    if C[0] != 0:
        raise ArithmeticError("odd Gegenbauer polynomial has a constant term")
    return (RationalPoly([1, 0, -1]) ** n) * C.shift_down(1) * c


def a_coefficients(spec: KernelSpec) -> list:
    """``a_{2k} = (-m)_k (m+n+3/2)_k / ((3/2)_k k!)`` for k = 0..m."""
    spec = _spec(spec)
    n, m = spec.n, spec.m
    return [pochhammer(-m, k) * pochhammer(Fraction(2 * m + 2 * n + 3, 2), k)
            / (pochhammer(Fraction(3, 2), k) * math.factorial(k)) for k in range(m + 1)]


def K_constant(spec: KernelSpec) -> Fraction:
    """``K = 2/pi * G(m+n+3/2) G(m+3/2) / (G(m+1) G(m+n+1))`` (always rational)."""
    spec = _spec(spec)
    n, m = spec.n, spec.m
    g = (gamma_half(Fraction(2 * m + 2 * n + 3, 2)) * gamma_half(Fraction(2 * m + 3, 2))
         / gamma_half(m + 1) / gamma_half(m + n + 1) / PI)
    return 2 * g.exact()


def omega_from_a(spec: KernelSpec, a: Sequence[Fraction], K: Fraction) -> RationalPoly:
    """``K (1-t^2)^n sum_k a_{2k} t^{2k}``."""
    spec = _spec(spec)
    even = RationalPoly([a[i // 2] if i % 2 == 0 else 0 for i in range(2 * len(a) - 1)])
    return (RationalPoly([1, 0, -1]) ** spec.n) * even * K


def kernel_m0(n: int) -> RationalPoly:
    """m = 0 reduction: ``(-1)^n Gamma(2n+2) / (2^(n+1) Gamma(n+1)) P_n(t)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    c = Fraction((-1) ** n * math.factorial(2 * n + 1), 2 ** (n + 1) * math.factorial(n))
    return legendre(n) * c


# --------------------------------------------------------------------------
# moment system


@dataclass(frozen=True)
class LiptajSystem:
    """Moment equations for omega = K (1-t^2)^n sum a_{2k} t^{2k}.

    Unknowns are ``b_k = K a_{2k}``; row ``i`` imposes the moment of order
    ``n + 2i`` (row 0 is the normalization, rows 1..m the vanishing moments).
    """

    spec: KernelSpec
    matrix: tuple
    rhs: tuple
    solution_a: tuple
    solution_K: Fraction

    @property
    def unknowns(self) -> tuple:
        return tuple(self.solution_K * a for a in self.solution_a)

    def residual(self) -> tuple:
        b = self.unknowns
        return tuple(sum(r * x for r, x in zip(row, b)) - y for row, y in zip(self.matrix, self.rhs))

    def kernel(self) -> RationalPoly:
        return poly_differentiate(omega_from_a(self.spec, self.solution_a, self.solution_K), self.spec.n)


def solve_exact(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list:
    """Gaussian elimination over the rationals. Raises on a singular matrix."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ArithmeticError("singular moment matrix")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] / p
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] / M[i][i] for i in range(n)]


def liptaj_solve(spec: KernelSpec) -> LiptajSystem:
    spec = _spec(spec)
    n, m = spec.n, spec.m
    base = RationalPoly([1, 0, -1]) ** n
    phi = [poly_differentiate(base * RationalPoly.monomial(2 * k), n) for k in range(m + 1)]
    matrix = tuple(tuple(poly_integrate_sym(p * RationalPoly.monomial(n + 2 * i)) for p in phi)
                   for i in range(m + 1))
    rhs = tuple([Fraction((-1) ** n * math.factorial(n))] + [Fraction(0)] * m)
    b = solve_exact(matrix, rhs)
    K = b[0]
    if K == 0:
        raise ArithmeticError("degenerate normalization")
    return LiptajSystem(spec, matrix, rhs, tuple(x / K for x in b), K)


# --------------------------------------------------------------------------
# terminating hypergeometric form, evaluated in floating point


def _rf(a: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= a + i
    return out


def _pfq(upper, lower, x: float) -> float:
    # terminating series; upper[0] is a nonpositive integer
    term, total, l = 1.0, 1.0, 0
    while True:
        num = 1.0
        for a in upper:
            num *= a + l
        if num == 0.0:
            return total
        den = float(l + 1)
        for b in lower:
            den *= b + l
        term *= num / den * x
        total += term
        l += 1


def kernel_hypergeometric_eval(spec: KernelSpec, t: float) -> float:
    """Evaluate k(t) from the sum of terminating 3F2 series.

    Each summand carries ``1/Gamma(b)`` for an integer lower parameter ``b``.
    When ``b = -M <= 0`` the pair ``1/Gamma(-M) * 3F2(...; -M, ...)`` is
    replaced by its finite limit, obtained by shifting the series index by
    ``M + 1``.
    """
    spec = _spec(spec)
    n, m = spec.n, spec.m
    t = float(t)
    x = t * t
    K = float(K_constant(spec))
    a = [float(c) for c in a_coefficients(spec)]
    total = 0.0
    for j in range(m + 1):
        b1 = Fraction(2 * j + 1 - n, 2)
        b2 = Fraction(2 * j + 2 - n, 2)
        b_int, b_half = (b1, b2) if b1.denominator == 1 else (b2, b1)
        upper = [float(-n), float(j + 1), j + 0.5]
        pref = 2.0 ** n * math.gamma(j + 1) * math.gamma(j + 0.5) / math.gamma(float(b_half))
        if b_int >= 1:
            pref /= math.gamma(float(b_int))
            power = 2 * j - n
            series = _pfq(upper, [float(b_int), float(b_half)], x)
        else:
            M = -int(b_int)
            shift = 1.0
            for u in upper:
                shift *= _rf(u, M + 1)
            if shift == 0.0:
                continue
            shift /= math.gamma(M + 2) * _rf(float(b_half), M + 1)
            power = 2 * j - n + 2 * (M + 1)
            series = shift * _pfq([u + M + 1 for u in upper],
                                  [float(M + 2), float(b_half) + M + 1], x)
        total += a[j] * pref * t ** power * series
    return K * total


# --------------------------------------------------------------------------
# moments and the Gegenbauer integral


def moments(k, jmax: int) -> list:
    """Exact ``integral_{-1}^{1} k(t) t^j dt`` for j = 0..jmax."""
    p = k.k if isinstance(k, Kernel) else k
    return [poly_integrate_sym(p * RationalPoly.monomial(j)) for j in range(jmax + 1)]


def moment_contract_holds(spec: KernelSpec, k: RationalPoly) -> bool:
    spec = _spec(spec)
    mom = moments(k, spec.exact_degree)
    want = [Fraction(0)] * len(mom)
    want[spec.n] = Fraction((-1) ** spec.n * math.factorial(spec.n))
    return mom == want


def gegenbauer_moment_integral(alpha, lam, r: int):
    """``integral_0^1 x^(alpha-1) (1-x^2)^(lam-1/2) C_{2r}^{(lam)}(x) dx`` in closed form.

    Exact (a Fraction) whenever every Gamma argument is a half-integer and the
    powers of pi cancel; otherwise a float.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    exact_ok = all(isinstance(v, (int, Fraction)) for v in (alpha, lam))
    if exact_ok:
        alpha, lam = Fraction(alpha), Fraction(lam)
    if lam <= -0.5:
        raise ValueError("lambda must exceed -1/2")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    sign = (-1) ** r
    if exact_ok and (2 * alpha).denominator == 1 and (2 * lam).denominator == 1:
        pre = Fraction(sign, 2 * math.factorial(2 * r)) * pochhammer(2 * lam, 2 * r) \
            * pochhammer((1 - alpha) / 2, r)
        g = (gamma_half(lam + Fraction(1, 2)) * gamma_half(alpha / 2)
             / gamma_half((alpha + 1) / 2 + lam + r)) * pre
        return g.exact() if g.is_rational() else float(g)
    alpha, lam = float(alpha), float(lam)
    return (sign / (2 * math.factorial(2 * r)) * _rf(2 * lam, 2 * r) * math.gamma(lam + 0.5)
            * math.gamma(alpha / 2) / math.gamma((alpha + 1) / 2 + lam + r) * _rf((1 - alpha) / 2, r))


# --------------------------------------------------------------------------
# export


def kernel_to_dict(kernel: Kernel) -> dict:
    return {
        "n": kernel.n,
        "m": kernel.m,
        "coeffs": [[str(c.numerator), str(c.denominator)] for c in kernel.k.coeffs],
    }


def kernel_to_json(kernel: Kernel) -> str:
    return json.dumps(kernel_to_dict(kernel))


def kernel_from_json(text: str) -> Kernel:
    d = json.loads(text)
    spec = KernelSpec(int(d["n"]), int(d["m"]))
    k = RationalPoly(Fraction(int(p), int(q)) for p, q in d["coeffs"])
    ref = kernel_legendre_sum(spec)
    if ref.k != k:
        raise ValueError(f"coefficients do not describe the ({spec.n}, {spec.m}) kernel")
    return ref


def make_kernel(n: int, m: int = 0) -> Kernel:
    return kernel_legendre_sum(KernelSpec(n, m))


__all__ = [
    "KernelSpec", "Kernel", "LiptajSystem", "kernel_legendre_sum", "omega_gegenbauer",
    "a_coefficients", "K_constant", "liptaj_solve", "kernel_hypergeometric_eval",
    "kernel_m0", "moments", "gegenbauer_moment_integral", "kernel_to_json",
    "kernel_from_json", "make_kernel", "ONE", "T",
]
