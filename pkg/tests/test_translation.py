import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gensmooth.errors import DomainError, InvalidParameterError, NearEndpointError, NonFiniteSampleError
from gensmooth.funcspace import TestFunction, lookup, registry_list
from gensmooth.translation import (
    TranslationParams,
    kernel_parts,
    translate,
    translate_grid,
    translated_breakpoints,
)

# mpmath at 40 digits, see scripts/compute_golden.py
KERNEL_06_03_11 = (0.46596443783978864526, 0.87307649779697448926, 0.74164799934221105668)

interior = st.floats(-0.98, 0.98)
shifts = st.floats(-1.0, 1.0)


def test_kernel_golden():
    k = kernel_parts(0.6, 0.3, 1.1)
    B, A, K = KERNEL_06_03_11
    assert k.argument_B == pytest.approx(B, abs=1e-15)
    assert k.weight_A == pytest.approx(A, abs=1e-15)
    assert k.kernel_value == pytest.approx(K, abs=1e-15)


def test_kernel_at_t_zero():
    k = kernel_parts(0.3, 0.0, 0.8)
    assert k.argument_B == 0.3
    assert k.weight_A == pytest.approx(math.sqrt(1 - 0.09), abs=1e-16)


def test_kernel_domain():
    with pytest.raises(DomainError):
        kernel_parts(1.0, 0.2, 0.1)


def test_params_validation():
    with pytest.raises(InvalidParameterError):
        TranslationParams(1.5)
    with pytest.raises(InvalidParameterError):
        TranslationParams(0.1, t_max=4.0)
    TranslationParams(1.5, t_max=2.0)


def test_identity_at_zero_is_exact():
    f = lookup("runge")
    xs = np.linspace(-0.95, 0.95, 9)
    np.testing.assert_array_equal(translate_grid(f, 0.0, xs), f(xs))


@given(interior, shifts)
@settings(max_examples=60, deadline=None)
def test_constants_preserved(x, t):
    assert translate(lookup("one"), t, x) == pytest.approx(1.0, abs=1e-12)


@given(interior, shifts)
@settings(max_examples=40, deadline=None)
def test_low_degree_closed_forms(x, t):
    # from symbolic integration of the kernel
    c = math.cos(t)
    assert translate(lookup("x"), t, x) == pytest.approx(x * (3 * c - 2), abs=1e-12)
    assert translate(lookup("x2"), t, x) == pytest.approx(x * x * (7 * c * c - 7 * c + 1) + c - c * c, abs=1e-12)


def test_translate_x_at_origin():
    assert abs(translate(lookup("x"), 0.5, 0.0)) < 1e-16


@given(interior, shifts, st.sampled_from(["absx", "step_smooth", "expx", "absx_pow(1.5)"]))
@settings(max_examples=40, deadline=None)
def test_even_in_t(x, t, fid):
    f = lookup(fid)
    assert translate(f, -t, x) == pytest.approx(translate(f, t, x), abs=1e-12)


@given(shifts, st.floats(-3, 3), st.floats(-3, 3))
@settings(max_examples=30, deadline=None)
def test_linear(t, a, b):
    f, g = lookup("absx"), lookup("expx")
    xs = np.linspace(-0.9, 0.9, 7)
    lhs = translate_grid(a * f + b * g, t, xs)
    rhs = a * translate_grid(f, t, xs) + b * translate_grid(g, t, xs)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12 * (1 + abs(a) + abs(b)))


def test_degree_preserved_for_cubic():
    xs = np.linspace(-0.9, 0.9, 25)
    y = translate_grid(lookup("x3"), 0.7, xs)
    fit = np.polynomial.polynomial.polyfit(xs, y, 3)
    np.testing.assert_allclose(np.polynomial.polynomial.polyval(xs, fit), y, atol=1e-12)


def test_endpoint_errors_carry_index():
    with pytest.raises(NearEndpointError, match=r"x\[1\]"):
        translate_grid(lookup("x"), 0.3, [0.0, 1.0 - 1e-15])
    with pytest.raises(DomainError):
        translate(lookup("x"), 0.3, -1.0)


def test_nonfinite_samples_raise():
    bad = TestFunction("bad", lambda x: np.where(x > 0.2, np.nan, x))
    with pytest.raises(NonFiniteSampleError):
        translate(bad, 0.5, 0.3)


def test_all_registry_functions_translate():
    xs = np.linspace(-0.99, 0.99, 15)
    for fid in registry_list():
        assert np.all(np.isfinite(translate_grid(lookup(fid), 0.9, xs)))


def test_vanishing_f_on_whole_range_converges():
    # f = 0 on the whole B-range near x = -1: integrand is ~1e-38
    v = translate(lookup("step_smooth"), -1.0, -0.9988864023252176)
    assert abs(v) < 1e-12


def test_translated_breakpoints():
    bps = translated_breakpoints((0.0,), 0.3)
    np.testing.assert_allclose(bps, sorted([0.0, math.cos(math.pi / 2 + 0.3), math.cos(math.pi / 2 - 0.3)]))
    assert translated_breakpoints((0.0,), 0.0) == (0.0,)


@pytest.mark.parametrize("fid", ["expx", "runge", "absx"])
def test_small_t_approaches_identity(fid):
    # the t = 0 shortcut agrees with the limit of the quadrature path
    f = lookup(fid)
    xs = np.linspace(-0.9, 0.9, 11)
    np.testing.assert_allclose(translate_grid(f, 1e-7, xs), f(xs), atol=1e-5)
