"""Spherical Bessel functions of the first kind, j_N(x), for integer N >= 0."""

from __future__ import annotations

import math

import numpy as np

_SERIES_LIMIT = 1.0
_RESCALE = 1e100


def _series(N: int, x: float) -> float:
    # j_N(x) = x^N/(2N+1)!! * sum_k (-x^2/2)^k / (k! (2N+3)(2N+5)...(2N+2k+1))
    lead = 1.0
    for k in range(1, N + 1):
        lead *= x / (2 * k + 1)
    term, total, k = 1.0, 1.0, 0
    y = -0.5 * x * x
    while True:
        k += 1
        term *= y / (k * (2 * N + 2 * k + 1))
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
    return lead * total


def _forward(N: int, x: float) -> float:
    s, c = math.sin(x), math.cos(x)
    j0 = s / x
    if N == 0:
        return j0
    j1 = s / (x * x) - c / x
    for k in range(1, N):
        j0, j1 = j1, (2 * k + 1) / x * j1 - j0
    return j1


def _miller(N: int, x: float) -> float:
    # backward recurrence from well above N, normalized by sum (2k+1) j_k^2 = 1
    start = N + 20 + int(math.sqrt(40.0 * max(N, x)))
    f_next, f = 0.0, 1.0
    norm = 0.0
    target = 0.0
    f0 = f1 = 0.0
    for k in range(start, 0, -1):
        f_prev = (2 * k + 1) / x * f - f_next
        f_next, f = f, f_prev
        # f now holds the unnormalized value at index k-1
        norm += (2 * k + 1) * f_next * f_next
        if k - 1 == N:
            target = f
        if abs(f) > _RESCALE:
            f /= _RESCALE
            f_next /= _RESCALE
            target /= _RESCALE
            norm /= _RESCALE * _RESCALE
        if k == 1:
            f0, f1 = f, f_next
    norm += f0 * f0
    scale = 1.0 / math.sqrt(norm)
    ref0 = math.sin(x) / x
    ref1 = math.sin(x) / (x * x) - math.cos(x) / x
    if abs(ref0) >= abs(ref1):
        sign = 1.0 if ref0 * f0 > 0 else -1.0
    else:
        sign = 1.0 if ref1 * f1 > 0 else -1.0
    return sign * scale * target


def spherical_bessel_j(N: int, x: float) -> float:
    """Spherical Bessel function of the first kind ``j_N(x)``.

    Power series for ``|x| <= 1``, backward (Miller) recurrence for
    ``1 < |x| < N`` and upward recurrence from the closed forms of
    ``j_0, j_1`` when ``|x| >= N``.
    """
    if N < 0:
        raise ValueError("order must be nonnegative")
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("argument must be finite")
    if x == 0.0:
        return 1.0 if N == 0 else 0.0
    sign = -1.0 if (x < 0 and N % 2) else 1.0
    ax = abs(x)
    if ax <= _SERIES_LIMIT:
        v = _series(N, ax)
    elif ax >= N:
        v = _forward(N, ax)
    else:
        v = _miller(N, ax)
    return sign * v


def spherical_bessel_j_array(N: int, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.vectorize(lambda v: spherical_bessel_j(N, v), otypes=[float])(x)
