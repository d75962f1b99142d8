import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gensmooth.errors import InvalidParameterError
from gensmooth.funcspace import SpaceParams, lookup
from gensmooth.modulus import modulus, modulus_curve

P21 = SpaceParams(2, 1.0)
# nested QUADPACK oracle, scripts/compute_golden.py
OMEGA_ABSX_P2_A1 = {
    1 / 32: 0.0025175266403340848,
    1 / 16: 0.007280410553263344,
    1 / 8: 0.02134814327523325,
    1 / 4: 0.06315522537166958,
}


def test_closed_form_for_x():
    # tau_t x - x = 3 (cos t - 1) x, so omega = 3 (1 - cos delta) ||x||_{2,1}
    res = modulus(lookup("x"), 0.25, P21)
    assert res.value == pytest.approx(3 * (1 - math.cos(0.25)) * math.sqrt(16 / 105), rel=1e-12)
    assert res.argmax_t == -0.25  # leftmost of the tie at +-delta


def test_golden_curve():
    deltas = sorted(OMEGA_ABSX_P2_A1)
    got = modulus_curve(lookup("absx"), deltas, P21)
    for d, r in zip(deltas, got):
        assert r.value == pytest.approx(OMEGA_ABSX_P2_A1[d], rel=1e-8)


def test_zero_delta():
    res = modulus(lookup("absx"), 0.0, P21)
    assert res.value == 0.0 and res.argmax_t == 0.0


def test_constants_have_zero_modulus():
    assert modulus(lookup("one"), 0.5, SpaceParams("inf", 1.2)).value < 1e-13


def test_bad_inputs():
    with pytest.raises(InvalidParameterError):
        modulus(lookup("x"), 1.5, P21)
    with pytest.raises(InvalidParameterError):
        modulus(lookup("x"), 0.5, P21, t_grid=10)
    with pytest.raises(InvalidParameterError):
        modulus_curve(lookup("x"), [0.5, 0.25], P21)


def test_curve_monotone():
    res = modulus_curve(lookup("step_smooth"), [1 / 16, 1 / 8, 1 / 4, 1 / 2], SpaceParams(1, 0.75))
    vals = [r.value for r in res]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


@given(st.floats(-4, 4).filter(lambda c: abs(c) > 0.05), st.floats(-5, 5))
@settings(max_examples=10, deadline=None)
def test_homogeneity_and_shift(c, k):
    f = lookup("expx")
    base = modulus(f, 0.2, P21, t_grid=9).value
    assert modulus(c * f + k, 0.2, P21, t_grid=9).value == pytest.approx(abs(c) * base, rel=1e-8)


def test_larger_t_max():
    r = modulus(lookup("x"), 1.5, P21, t_max=2.0)
    assert r.value == pytest.approx(3 * (1 - math.cos(1.5)) * math.sqrt(16 / 105), rel=1e-12)
