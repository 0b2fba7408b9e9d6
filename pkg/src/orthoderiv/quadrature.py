"""Gauss-Legendre rules and end-corrected trapezoid weights."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if self.nodes.shape != self.weights.shape:
            raise ValueError("nodes and weights differ in length")

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def exactness_degree(self) -> int:
        return 2 * self.size - 1

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, values))


def _legendre_and_derivative(Q: int, x):
    p0 = np.ones_like(x)
    p1 = x.copy()
    if Q == 0:
        return p0, np.zeros_like(x)
    for k in range(1, Q):
        p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
    dp = Q * (x * p1 - p0) / (x * x - 1)
    return p1, dp


@lru_cache(maxsize=64)
def _gauss_legendre(Q: int, tol: float, maxiter: int):
    if Q == 1:
        return np.array([0.0]), np.array([2.0])
    half = (Q + 1) // 2
    i = np.arange(1, half + 1)
    x = np.cos(np.pi * (i - 0.25) / (Q + 0.5))
    for _ in range(maxiter):
        p, dp = _legendre_and_derivative(Q, x)
        dx = p / dp
        x = x - dx
        if np.all(np.abs(dx) <= tol):
            break
    else:
        raise ConvergenceError(f"Newton iteration for Gauss-Legendre Q={Q} did not converge")
    _, dp = _legendre_and_derivative(Q, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    if Q % 2:
        x[-1] = 0.0
    nodes = np.concatenate([-x, x[::-1][Q % 2:]])
    weights = np.concatenate([w, w[::-1][Q % 2:]])
    return nodes, weights


def gauss_legendre(Q: int, tol: float = 1e-15, maxiter: int = 100) -> QuadratureRule:
    """Gauss-Legendre nodes (ascending) and weights on [-1, 1].

    Newton iteration on ``P_Q`` from Chebyshev-like initial guesses; the
    positive half of the nodes is computed and mirrored so the rule is exactly
    symmetric.
    """
    if Q < 1:
        raise ValueError("Q must be >= 1")
    nodes, weights = _gauss_legendre(int(Q), tol, maxiter)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(nodes, weights)


def gauss_legendre_mp(Q: int, dps: int = 40):
    """Same rule in mpmath arithmetic at ``dps`` digits; returns (nodes, weights) lists."""
    import mpmath

    with mpmath.workdps(dps + 10):
        tol = mpmath.mpf(10) ** (-(dps + 5))
        nodes, weights = [], []
        for i in range(1, Q + 1):
            x = mpmath.cos(mpmath.pi * (i - mpmath.mpf(1) / 4) / (Q + mpmath.mpf(1) / 2))
            for _ in range(200):
                p0, p1 = mpmath.mpf(1), x
                for k in range(1, Q):
                    p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
                dp = Q * (x * p1 - p0) / (x * x - 1) if Q > 1 else mpmath.mpf(1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < tol:
                    break
            else:
                raise ConvergenceError(f"mp Newton for Q={Q} did not converge")
            p0, p1 = mpmath.mpf(1), x
            for k in range(1, Q):
                p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
            dp = Q * (x * p1 - p0) / (x * x - 1) if Q > 1 else mpmath.mpf(1)
            nodes.append(x)
            weights.append(2 / ((1 - x * x) * dp * dp))
        order = sorted(range(Q), key=lambda j: nodes[j])
        return [+nodes[j] for j in order], [+weights[j] for j in order]


@lru_cache(maxsize=32)
def gauss_legendre_polished(Q: int, dps: int = 34) -> tuple:
    """Extended-precision rule obtained by polishing the double-precision nodes.

    A few Newton steps at ``dps`` digits from the float nodes (quadratic
    convergence makes three enough); much cheaper than
    :func:`gauss_legendre_mp` for large ``Q``.
    """
    import mpmath

    start = gauss_legendre(Q).nodes
    with mpmath.workdps(dps):
        nodes, weights = [], []
        for x0 in start:
            x = mpmath.mpf(float(x0))
            for _ in range(3):
                p0, p1 = mpmath.mpf(1), x
                for k in range(1, Q):
                    p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
                dp = Q * (x * p1 - p0) / (x * x - 1) if Q > 1 else mpmath.mpf(1)
                x -= p1 / dp
            p0, p1 = mpmath.mpf(1), x
            for k in range(1, Q):
                p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
            dp = Q * (x * p1 - p0) / (x * x - 1) if Q > 1 else mpmath.mpf(1)
            nodes.append(x)
            weights.append(2 / ((1 - x * x) * dp * dp))
        return tuple(nodes), tuple(weights)


# --------------------------------------------------------------------------
# trapezoid with Gregory end corrections


@lru_cache(maxsize=None)
def _bernoulli(k: int) -> Fraction:
    B = [Fraction(1)]
    for n in range(1, k + 1):
        B.append(-sum(math.comb(n + 1, j) * B[j] for j in range(n)) / (n + 1))
    return B[k]


@lru_cache(maxsize=None)
def gregory_end_corrections(order: int) -> tuple:
    """Weights ``d_0..d_{order-1}`` added at each end of the unit-step trapezoid rule.

    Solves ``sum_i d_i i^j = [j odd] B_{j+1}/(j+1)`` for j < order, which cancels
    the Euler-Maclaurin endpoint terms through that degree.
    """
    from .kernel import solve_exact

    if order <= 0:
        return ()
    A = [[Fraction(i) ** j for i in range(order)] for j in range(order)]
    rhs = [_bernoulli(j + 1) / (j + 1) if j % 2 else Fraction(0) for j in range(order)]
    return tuple(solve_exact(A, rhs))


def corrected_trapezoid_weights(intervals: int, order: int) -> np.ndarray:
    """Unit-step weights for ``intervals + 1`` equispaced samples."""
    if intervals < 1:
        raise ValueError("need at least one interval")
    w = [Fraction(1)] * (intervals + 1)
    w[0] = w[-1] = Fraction(1, 2)
    for i, d in enumerate(gregory_end_corrections(order)):
        w[i] += d
        w[intervals - i] += d
    return np.array([float(v) for v in w])
