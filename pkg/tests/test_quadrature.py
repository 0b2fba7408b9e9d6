from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orthoderiv.quadrature import (
    QuadratureRule,
    corrected_trapezoid_weights,
    gauss_legendre,
    gauss_legendre_mp,
    gauss_legendre_polished,
    gregory_end_corrections,
)


def test_small_rules():
    r = gauss_legendre(1)
    assert r.nodes.tolist() == [0.0] and r.weights.tolist() == [2.0]
    r = gauss_legendre(2)
    assert np.allclose(r.nodes, [-1 / np.sqrt(3), 1 / np.sqrt(3)], atol=1e-15, rtol=0)
    assert np.allclose(r.weights, [1, 1], atol=1e-15, rtol=0)


def test_q16_monomial():
    r = gauss_legendre(16)
    assert abs(r.integrate(r.nodes ** 10) - 2 / 11) < 1e-14


@pytest.mark.parametrize("Q", [3, 8, 17, 32])
def test_against_numpy(Q):
    r = gauss_legendre(Q)
    x, w = np.polynomial.legendre.leggauss(Q)
    assert np.max(np.abs(r.nodes - x)) < 1e-14
    assert np.max(np.abs(r.weights - w) / w) < 1e-12


@pytest.mark.parametrize("Q", [64, 128, 257])
def test_large_q_against_mp(Q):
    r = gauss_legendre(Q)
    x, w = gauss_legendre_mp(Q, 30)
    x = np.array([float(v) for v in x])
    w = np.array([float(v) for v in w])
    assert np.max(np.abs(r.nodes - x)) < 1e-15
    assert np.max(np.abs(r.weights - w)) < 1e-15


@pytest.mark.parametrize("Q", [1, 2, 5, 16, 33, 100, 512])
def test_invariants(Q):
    r = gauss_legendre(Q)
    assert abs(r.weights.sum() - 2) < 1e-13
    assert np.all(r.weights > 0)
    assert np.all(np.abs(r.nodes) < 1)
    assert np.array_equal(r.nodes, -r.nodes[::-1])
    assert np.array_equal(r.weights, r.weights[::-1])
    assert r.exactness_degree == 2 * Q - 1


@pytest.mark.parametrize("Q", [4, 10, 24])
def test_exactness(Q):
    r = gauss_legendre(Q)
    for j in range(2 * Q):
        want = 0.0 if j % 2 else 2 / (j + 1)
        assert abs(r.integrate(r.nodes ** j) - want) <= 1e-13 * max(1, want)


def test_arrays_read_only():
    r = gauss_legendre(8)
    with pytest.raises(ValueError):
        r.nodes[0] = 0.0


def test_rejects_zero():
    with pytest.raises(ValueError):
        gauss_legendre(0)


def test_mismatched_rule():
    with pytest.raises(ValueError):
        QuadratureRule(np.zeros(2), np.zeros(3))


def test_mp_and_polished_agree():
    import mpmath
    a, wa = gauss_legendre_mp(12, 40)
    b, wb = gauss_legendre_polished(12)
    assert max(abs(x - y) for x, y in zip(a, b)) < mpmath.mpf(10) ** -30
    assert max(abs(x - y) for x, y in zip(wa, wb)) < mpmath.mpf(10) ** -30


def test_gregory_order2_is_simpson_like():
    assert gregory_end_corrections(2) == (F(-1, 12), F(1, 12))
    assert gregory_end_corrections(0) == ()


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8), st.integers(20, 60))
def test_corrected_trapezoid_exactness(order, N):
    w = corrected_trapezoid_weights(N, order)
    x = np.arange(N + 1, dtype=float)
    for d in range(order):
        assert abs(np.dot(w, x ** d) - N ** (d + 1) / (d + 1)) <= 1e-9 * N ** (d + 1)


def test_trapezoid_plain():
    w = corrected_trapezoid_weights(4, 0)
    assert w.tolist() == [0.5, 1, 1, 1, 0.5]
    with pytest.raises(ValueError):
        corrected_trapezoid_weights(0, 0)
