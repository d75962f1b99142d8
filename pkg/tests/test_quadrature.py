import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import beta as beta_fn, roots_jacobi

from gensmooth.errors import InvalidParameterError, NonFiniteSampleError
from gensmooth.quadrature import (
    adaptive_weighted_integral,
    chebyshev_extrema,
    gauss_jacobi,
    gauss_legendre,
    integrate,
    jacobi_recurrence,
    shift_to_phi,
    weighted_rule,
)


def test_legendre_matches_numpy():
    r = gauss_legendre(20)
    x, w = np.polynomial.legendre.leggauss(20)
    np.testing.assert_allclose(r.nodes, x, atol=1e-14)
    np.testing.assert_allclose(r.weights, w, atol=1e-14)


@pytest.mark.parametrize("a,b", [(0.5, 0.5), (1.5, 1.5), (2.0, 0.0), (0.75, 1.25)])
def test_jacobi_matches_scipy(a, b):
    r = gauss_jacobi(24, a, b)
    # scipy's convention: weight (1-x)^a (1+x)^b
    x, w = roots_jacobi(24, a, b)
    np.testing.assert_allclose(r.nodes, x, atol=1e-13)
    np.testing.assert_allclose(r.weights, w, rtol=1e-11)


def test_zero_exponent_is_legendre():
    assert gauss_jacobi(10, 0.0, 0.0) is gauss_legendre(10)


def test_weights_total_mass():
    for a in (0.0, 0.5, 2.4):
        r = gauss_jacobi(12, a, a)
        assert r.weights.sum() == pytest.approx(2 ** (2 * a + 1) * beta_fn(a + 1, a + 1), rel=1e-13)


def test_recurrence_first_moment():
    _, beta = jacobi_recurrence(4, 1.0, 1.0)
    assert beta[0] == pytest.approx(4.0 / 3.0)


@given(st.integers(1, 30), st.floats(0.0, 3.0))
@settings(max_examples=40, deadline=None)
def test_symmetric_rule_is_exactly_symmetric(order, a):
    r = gauss_jacobi(order, a, a)
    np.testing.assert_array_equal(r.nodes, -r.nodes[::-1])
    np.testing.assert_allclose(r.weights, r.weights[::-1], rtol=1e-14)


@given(st.integers(2, 20), st.floats(0.0, 2.0))
@settings(max_examples=40, deadline=None)
def test_exact_for_degree_2n_minus_1(order, a):
    r = gauss_jacobi(order, a, a)
    k = 2 * order - 2  # even monomial of the top exact degree
    exact = beta_fn((k + 1) / 2, a + 1)  # int x^k (1-x^2)^a over [-1, 1]
    assert integrate(r, lambda x: x**k) == pytest.approx(exact, rel=1e-11)


def test_rules_are_read_only():
    r = gauss_legendre(5)
    with pytest.raises(ValueError):
        r.nodes[0] = 0.0


def test_shift_to_phi():
    r = shift_to_phi(gauss_legendre(16))
    assert r.interval == (0.0, math.pi)
    assert integrate(r, np.sin) == pytest.approx(2.0, rel=1e-14)


def test_integrate_rejects_nonfinite():
    with pytest.raises(NonFiniteSampleError):
        integrate(gauss_legendre(4), lambda x: np.where(x > 0, 1.0, np.nan))


def test_bad_orders():
    with pytest.raises(InvalidParameterError):
        gauss_legendre(0)
    with pytest.raises(InvalidParameterError):
        weighted_rule(-1.0, 8)


def test_composite_rule_handles_kink():
    x, w = weighted_rule(1.0, 16, (0.0,))
    assert np.dot(w, np.abs(x)) == pytest.approx(0.5, rel=1e-14)  # 2 int_0^1 x (1-x^2) dx


def test_adaptive_reports_nonconvergence():
    res = adaptive_weighted_integral(np.abs, 0.0, start=4, cap=8, rtol=1e-14)
    assert not res.converged
    good = adaptive_weighted_integral(np.abs, 0.0, (0.0,))
    assert good.converged and good.value == pytest.approx(1.0, rel=1e-14)


def test_chebyshev_extrema():
    x = chebyshev_extrema(5)
    np.testing.assert_allclose(x, [-1, -math.sqrt(0.5), 0, math.sqrt(0.5), 1], atol=1e-16)
    assert x[2] == 0.0
