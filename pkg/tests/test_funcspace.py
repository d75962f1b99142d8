import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gensmooth.errors import FunctionNotFoundError, InvalidParameterError
from gensmooth.funcspace import (
    SpaceParams,
    lookup,
    parse_p,
    registry_list,
    sign_change_zeros,
    validate_params,
    weighted_norm,
)
from oracles import quad_weighted_norm


@pytest.mark.parametrize("p,alpha,expected", [(1, 0.75, True), (2, 1.0, True), (math.inf, 0.9, False), (1, 0.5, False)])
def test_validate_params_examples(p, alpha, expected):
    assert validate_params(p, alpha) is expected


@pytest.mark.parametrize(
    "p,alpha,expected",
    [(1, 1.0, True), (math.inf, 1.0, True), (math.inf, 1.5, False), (2, 0.75, False), (2, 1.25, False), (4, 1.3, True)],
)
def test_validate_params_boundaries(p, alpha, expected):
    assert validate_params(p, alpha) is expected


def test_validate_params_rejects_small_p():
    with pytest.raises(InvalidParameterError):
        validate_params(0.5, 1.0)


def test_parse_p():
    assert parse_p("inf") == math.inf
    assert parse_p("2") == 2.0


def test_space_params_validation():
    with pytest.raises(InvalidParameterError):
        SpaceParams(2, -0.1)
    with pytest.raises(InvalidParameterError):
        SpaceParams(0.9, 1)
    assert SpaceParams("inf", 1.2).p_label == "inf"


def test_registry_resolves():
    for fid in registry_list():
        f = lookup(fid)
        assert f.id == fid
        assert np.all(np.isfinite(f(np.linspace(-1, 1, 11))))
    assert lookup("cheb_5")(0.5) == pytest.approx(math.cos(5 * math.acos(0.5)))
    with pytest.raises(FunctionNotFoundError):
        lookup("sinx")


def test_step_smooth_shape():
    f = lookup("step_smooth")
    assert f(-0.7) == 0.0 and f(0.7) == 1.0 and f(0.0) == 0.5
    assert f.breakpoints == (-0.5, 0.5)


def test_arithmetic_keeps_breakpoints():
    g = 2.0 * lookup("absx") + lookup("step_smooth")
    assert set(g.breakpoints) == {-0.5, 0.0, 0.5}
    assert g(0.7) == pytest.approx(2.4)


@pytest.mark.parametrize("fid", ["absx", "expx", "step_smooth", "absx_pow(1.5)"])
@pytest.mark.parametrize("p,alpha", [(1, 0.75), (2, 1.0), (3.5, 1.1)])
def test_norm_matches_quadpack(fid, p, alpha):
    f = lookup(fid)
    got = weighted_norm(f, SpaceParams(p, alpha), f.breakpoints)
    assert got.converged
    assert got.value == pytest.approx(quad_weighted_norm(f, p, alpha, f.breakpoints), rel=1e-9)


def test_sup_norm_closed_form():
    # max of |x| (1-x^2)^alpha is at x^2 = 1/(1+2 alpha)
    a = 1.2
    f = lookup("absx")
    xs = 1 / math.sqrt(1 + 2 * a)
    exact = xs * (1 - xs * xs) ** a
    assert weighted_norm(f, SpaceParams("inf", a)).value == pytest.approx(exact, rel=1e-12)


def test_norm_of_x_p1_zero_on_grid():
    # int |x| (1 - x^2)^0.75 = 2 / 3.5
    res = weighted_norm(lookup("x"), SpaceParams(1, 0.75))
    assert res.converged and res.value == pytest.approx(2 / 3.5, rel=1e-10)


def test_sign_change_zeros():
    z = sign_change_zeros(lambda x: np.cos(3 * np.arccos(x)))
    np.testing.assert_allclose(z, np.sort(np.cos(np.pi * np.array([0.5, 1.5, 2.5]) / 3)), atol=1e-14)


@given(st.floats(-3, 3).filter(lambda c: abs(c) > 1e-3), st.sampled_from([(1, 0.75), (2, 1.0), ("inf", 1.2)]))
@settings(max_examples=25, deadline=None)
def test_norm_homogeneous(c, pa):
    f = lookup("runge")
    P = SpaceParams(*pa)
    assert weighted_norm(c * f, P).value == pytest.approx(abs(c) * weighted_norm(f, P).value, rel=1e-9)
