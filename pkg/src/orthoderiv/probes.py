"""Builtin probe functions with known derivatives of every order.

Tokens: ``x^K`` (K a nonnegative integer, ``x`` alone means ``x^1``),
``sin``, ``cos``, ``exp`` and ``gaussian`` (``exp(-x^2)``).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable

import mpmath
import numpy as np
from numpy.polynomial import hermite

_POWER = re.compile(r"^x(?:\^(\d+))?$")
CATALOG = ("x^K", "sin", "cos", "exp", "gaussian")


@dataclass(frozen=True)
class Probe:
    name: str
    f: Callable  # numpy-vectorized
    _deriv: Callable  # (order) -> callable
    _mp: Callable  # mpmath version of f

    def __call__(self, x):
        return self.f(x)

    def derivative(self, order: int) -> Callable:
        if order < 0:
            raise ValueError("order must be nonnegative")
        return self._deriv(order)

    @property
    def mp(self) -> Callable:
        return self._mp


def _power(K: int) -> Probe:
    def deriv(n):
        if n > K:
            return lambda x: np.zeros_like(np.asarray(x, dtype=float))
        c = math.perm(K, n)
        return lambda x: c * np.asarray(x, dtype=float) ** (K - n)
    return Probe(f"x^{K}", lambda x: np.asarray(x, dtype=float) ** K, deriv, lambda x: x ** K)


def _sin_family(start: int, name: str) -> Probe:
    # d^n sin = sin(x + n pi/2); cos is sin shifted by one order
    fns = (np.sin, np.cos, lambda x: -np.sin(x), lambda x: -np.cos(x))
    mps = (mpmath.sin, mpmath.cos, lambda x: -mpmath.sin(x), lambda x: -mpmath.cos(x))
    return Probe(name, fns[start], lambda n: fns[(start + n) % 4], mps[start])


def _gaussian() -> Probe:
    def deriv(n):
        c = np.zeros(n + 1)
        c[n] = (-1.0) ** n
        return lambda x: hermite.hermval(x, c) * np.exp(-np.asarray(x, dtype=float) ** 2)
    return Probe("gaussian", lambda x: np.exp(-np.asarray(x, dtype=float) ** 2), deriv,
                 lambda x: mpmath.exp(-x * x))


def mp_derivative(probe: Probe, order: int) -> Callable:
    """The ``order``-th derivative in mpmath arithmetic."""
    name = probe.name
    if name.startswith("x^"):
        K = int(name[2:])
        return lambda x: mpmath.mpf(math.perm(K, order)) * x ** (K - order) if order <= K else mpmath.mpf(0)
    if name in ("sin", "cos"):
        s = 0 if name == "sin" else 1
        return lambda x: mpmath.sin(x + (s + order) * mpmath.pi / 2)
    if name == "exp":
        return mpmath.exp
    return lambda x: mpmath.diff(lambda u: mpmath.exp(-u * u), x, order)


def parse_probe(token: str) -> Probe:
    t = token.strip().replace(" ", "")
    m = _POWER.match(t)
    if m:
        return _power(int(m.group(1) or 1))
    if t == "sin":
        return _sin_family(0, "sin")
    if t == "cos":
        return _sin_family(1, "cos")
    if t == "exp":
        return Probe("exp", np.exp, lambda n: np.exp, mpmath.exp)
    if t == "gaussian":
        return _gaussian()
    raise ValueError(f"unknown function {token!r}; choose from {', '.join(CATALOG)}")
