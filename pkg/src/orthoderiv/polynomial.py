"""Exact rational polynomials and the classical orthogonal families.

Coefficients are :class:`fractions.Fraction` throughout; floating point only
enters when a polynomial is evaluated at a float argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

import numpy as np

Rational = Fraction
Number = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class RationalPoly:
    """Dense polynomial in ``t`` with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of ``t**i``. Trailing zeros are trimmed,
    so the zero polynomial has an empty coefficient tuple and degree -1.
    Instances are immutable and hashable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_frac(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def monomial(cls, k: int, coeff: Number = 1) -> "RationalPoly":
        return cls([0] * k + [coeff])

    @classmethod
    def constant(cls, c: Number) -> "RationalPoly":
        return cls([c])

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def __len__(self):
        return len(self._c)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self._c):
            return self._c[i]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            return other
        return RationalPoly([_frac(other)])

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self._c), len(o._c))
        return RationalPoly(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-a for a in self._c)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalPoly):
            s = _frac(other)
            return RationalPoly(a * s for a in self._c)
        if not self._c or not other._c:
            return RationalPoly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = _frac(scalar)
        return RationalPoly(a / s for a in self._c)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = RationalPoly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self._c == other._c
        try:
            return self._c == RationalPoly([_frac(other)])._c
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"RationalPoly({[str(a) for a in self._c]})"

    def __str__(self):
        return format_poly(self)

    # calculus -----------------------------------------------------------

    def derivative(self, n: int = 1) -> "RationalPoly":
        return poly_differentiate(self, n)

    def antiderivative(self) -> "RationalPoly":
        return RationalPoly([0] + [a / (i + 1) for i, a in enumerate(self._c)])

    def integrate(self, a: Number, b: Number) -> Fraction:
        P = self.antiderivative()
        return P(_frac(b)) - P(_frac(a))

    def compose(self, inner: "RationalPoly") -> "RationalPoly":
        out = RationalPoly()
        for a in reversed(self._c):
            out = out * inner + a
        return out

    def shift_down(self, k: int) -> "RationalPoly":
        """Exact division by ``t**k``; raises if the division leaves a remainder."""
        if any(a != 0 for a in self._c[:k]):
            raise ArithmeticError(f"polynomial is not divisible by t^{k}")
        return RationalPoly(self._c[k:])

    def parity(self) -> int | None:
        """+1 if even, -1 if odd, None if mixed (zero counts as even)."""
        if all(a == 0 for a in self._c[1::2]):
            return 1
        if all(a == 0 for a in self._c[0::2]):
            return -1
        return None

    # evaluation ---------------------------------------------------------

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for a in reversed(self._c):
                acc = acc * x + a
            return acc
        if isinstance(x, np.ndarray):
            return np.polynomial.polynomial.polyval(x, self.float_coeffs())
        acc = 0 * x
        for a in reversed(self._c):
            acc = acc * x + _to_ring(a, x)
        return acc

    def float_coeffs(self) -> np.ndarray:
        return np.array([float(a) for a in self._c] or [0.0])


def _to_ring(a: Fraction, like):
    # mpmath values keep full precision; everything else gets a float
    if type(like).__module__.startswith("mpmath"):
        import mpmath

        return mpmath.mpf(a.numerator) / a.denominator
    return float(a)


T = RationalPoly([0, 1])
ONE = RationalPoly([1])


def format_poly(p: RationalPoly, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        mag = abs(a)
        sign = "-" if a < 0 else "+"
        if i == 0:
            body = str(mag)
        else:
            mon = var if i == 1 else f"{var}^{i}"
            if mag == 1:
                body = mon
            elif mag.denominator == 1:
                body = f"{mag}{mon}"
            else:
                body = f"({mag}){mon}"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def poly_differentiate(p: RationalPoly, n: int = 1) -> RationalPoly:
    if n < 0:
        raise ValueError("derivative order must be nonnegative")
    c = list(p.coeffs)
    for _ in range(n):
        c = [i * a for i, a in enumerate(c)][1:]
    return RationalPoly(c)


def poly_integrate_sym(p: RationalPoly) -> Fraction:
    """Exact integral of ``p`` over [-1, 1]."""
    return sum((2 * a / (i + 1) for i, a in enumerate(p.coeffs) if i % 2 == 0), Fraction(0))


def poly_integrate_unit(p: RationalPoly) -> Fraction:
    """Exact integral of ``p`` over [0, 1]."""
    return sum((a / (i + 1) for i, a in enumerate(p.coeffs)), Fraction(0))


# --------------------------------------------------------------------------
# Pochhammer / Gamma at half-integers


def pochhammer(a: Number, k: int) -> Fraction:
    """Rising factorial ``a (a+1) ... (a+k-1)``; 1 for ``k == 0``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    a = _frac(a)
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


@dataclass(frozen=True)
class GammaHalf:
    """Exact value ``rational_part * sqrt(pi) ** sqrt_pi_power``.

    A single Gamma value at a positive integer or half-integer has power 0 or
    1; products and quotients of them may carry any integer power.
    """

    rational_part: Fraction
    sqrt_pi_power: int = 0

    def __mul__(self, other):
        if isinstance(other, GammaHalf):
            return GammaHalf(self.rational_part * other.rational_part,
                             self.sqrt_pi_power + other.sqrt_pi_power)
        return GammaHalf(self.rational_part * _frac(other), self.sqrt_pi_power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GammaHalf):
            return GammaHalf(self.rational_part / other.rational_part,
                             self.sqrt_pi_power - other.sqrt_pi_power)
        return GammaHalf(self.rational_part / _frac(other), self.sqrt_pi_power)

    def __rtruediv__(self, other):
        return GammaHalf(_frac(other) / self.rational_part, -self.sqrt_pi_power)

    def __neg__(self):
        return GammaHalf(-self.rational_part, self.sqrt_pi_power)

    def is_rational(self) -> bool:
        return self.sqrt_pi_power == 0 or self.rational_part == 0

    def exact(self) -> Fraction:
        """The value as a Fraction; fails loudly if a power of sqrt(pi) survives."""
        if not self.is_rational():
            raise ArithmeticError(
                f"constant carries sqrt(pi)^{self.sqrt_pi_power}; expected a rational")
        return self.rational_part

    def __float__(self):
        return float(self.rational_part) * math.pi ** (self.sqrt_pi_power / 2)


def gamma_half(z: Number) -> GammaHalf:
    """Gamma(z) for z a positive integer or half-integer, exactly."""
    if isinstance(z, float):
        if not (z * 2).is_integer():
            raise ValueError(f"gamma_half needs a positive integer or half-integer, got {z}")
        z = Fraction(z)
    z = _frac(z)
    if z <= 0 or (2 * z).denominator != 1:
        raise ValueError(f"gamma_half needs a positive integer or half-integer, got {z}")
    if z.denominator == 1:
        return GammaHalf(Fraction(math.factorial(int(z) - 1)), 0)
    # Gamma(k + 1/2) = (1/2)_k sqrt(pi)
    k = int(z - Fraction(1, 2))
    return GammaHalf(pochhammer(Fraction(1, 2), k), 1)


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)


# --------------------------------------------------------------------------
# orthogonal families, all by three-term recurrence


def legendre(N: int) -> RationalPoly:
    return legendre_table(N)[N]


def legendre_table(N: int) -> list:
    """``[P_0, ..., P_N]`` from ``(k+1) P_{k+1} = (2k+1) t P_k - k P_{k-1}``."""
    out = [ONE]
    if N >= 1:
        out.append(T)
    for k in range(1, N):
        out.append((T * out[k] * (2 * k + 1) - out[k - 1] * k) / (k + 1))
    return out


def gegenbauer(N: int, lam: Number) -> RationalPoly:
    lam = _frac(lam)
    if lam <= Fraction(-1, 2):
        raise ValueError("gegenbauer needs lambda > -1/2")
    prev, cur = ONE, T * (2 * lam)
    if N == 0:
        return prev
    # k C_k = 2 (k + lam - 1) t C_{k-1} - (k + 2 lam - 2) C_{k-2}
    for k in range(2, N + 1):
        prev, cur = cur, (T * cur * (2 * (k + lam - 1)) - prev * (k + 2 * lam - 2)) / k
    return cur


def jacobi(N: int, alpha: Number, beta: Number) -> RationalPoly:
    """Jacobi polynomial ``P_N^{(alpha, beta)}(x)`` in its own variable."""
    a, b = _frac(alpha), _frac(beta)
    if a <= -1 or b <= -1:
        raise ValueError("jacobi needs alpha, beta > -1")
    prev = ONE
    if N == 0:
        return prev
    cur = RationalPoly([(a - b) / 2, (a + b + 2) / 2])
    for k in range(2, N + 1):
        s = 2 * k + a + b
        c1 = 2 * k * (k + a + b) * (s - 2)
        c2 = (s - 1) * (a * a - b * b)
        c3 = (s - 1) * s * (s - 2)
        c4 = 2 * (k + a - 1) * (k + b - 1) * s
        prev, cur = cur, (cur * c2 + T * cur * c3 - prev * c4) / c1
    return cur


def jacobi_in(N: int, alpha: Number, beta: Number, inner: RationalPoly) -> RationalPoly:
    """``P_N^{(alpha, beta)}`` composed with a polynomial argument, e.g. ``2t^2 - 1``."""
    return jacobi(N, alpha, beta).compose(inner)


def polys_equal(a: Sequence[RationalPoly], b: Sequence[RationalPoly]) -> bool:
    return len(a) == len(b) and all(x == y for x, y in zip(a, b))
