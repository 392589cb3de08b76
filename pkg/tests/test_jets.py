import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from semiconfined.jets import Jet, constant_jet, exp_linear_jet, linear_jet, power_jet


def test_power_jet_taylor_coefficients():
    s = np.array([0.5, 2.0])
    jet = power_jet(s, 2.5, 3)
    for k in range(4):
        expected = math.prod(2.5 - j for j in range(k)) * s ** (2.5 - k)
        np.testing.assert_allclose(jet.derivative_value(k), expected, rtol=1e-14)


@given(st.floats(0.2, 3.0), st.floats(-2.0, 2.0))
def test_product_rule_matches_closed_form(s0, rate):
    # d^2/dx^2 [x^3 e^{rate x}] at s0
    jet = power_jet(np.array(s0), 3.0, 2) * exp_linear_jet(rate, 2)
    jet = Jet(jet.coef, np.array(rate * s0))
    exact = (6 * s0 + 6 * rate * s0**2 + rate**2 * s0**3) * math.exp(rate * s0)
    assert jet.derivative_value(2) == pytest.approx(exact, rel=1e-12)


def test_sum_aligns_log_scales():
    a = Jet(np.array([[1.0], [2.0]]), np.array([700.0]))
    b = Jet(np.array([[3.0], [4.0]]), np.array([0.0]))
    total = a + b
    assert total.log_scale[0] == 700.0
    assert total.coef[0, 0] == pytest.approx(1.0)


def test_derivative_shifts_and_truncates():
    jet = linear_jet(np.array([2.0]), 3) * linear_jet(np.array([2.0]), 3)  # x^2
    d = jet.derivative()
    assert d.order == 2
    np.testing.assert_allclose(d.coef[:, 0], [4.0, 2.0, 0.0])  # 2(x0 + t) at x0 = 2
    with pytest.raises(ValueError):
        constant_jet(1.0, 0).derivative()


def test_scalar_and_complex_multiplication():
    jet = linear_jet(np.array([1.0, 2.0]), 1) * 1j
    assert np.iscomplexobj(jet.coef)
    np.testing.assert_allclose((2.0 * jet).value, [2j, 4j])
    np.testing.assert_allclose((-jet).value, [-1j, -2j])
