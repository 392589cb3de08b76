import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, special

from semiconfined.model import ModelKind, OscillatorParams
from semiconfined.states import WaveState, check_grid, eval_state, inner_product, log_norm_constant

S, C = ModelKind.SEMICONFINED, ModelKind.CONSTANT_MASS


def test_examples(unit):
    assert eval_state(WaveState(unit, S, 0), 0.0).value == pytest.approx(2 * math.exp(-1), rel=1e-15)
    assert eval_state(WaveState(unit, C, 0), 0.0).value == pytest.approx(math.pi**-0.25, rel=1e-15)
    for n in range(4):
        t = eval_state(WaveState(OscillatorParams(a=2.0), S, n), -2.0)
        assert (t.value, t.d1, t.d2) == (0.0, 0.0, 0.0)
    assert inner_product(WaveState(unit, S, 0), WaveState(unit, S, 0)) == pytest.approx(1.0, abs=1e-14)
    assert abs(inner_product(WaveState(unit, S, 2), WaveState(unit, S, 5))) < 1e-12


def test_rejects_bad_index(unit):
    with pytest.raises(ValueError):
        WaveState(unit, S, -1)
    with pytest.raises(ValueError):
        inner_product(WaveState(OscillatorParams(a=0.5), S, 0), WaveState(OscillatorParams(a=0.5), S, 0), -2)


def test_zero_behind_the_wall(unit):
    x = np.array([-5.0, -1.0, -1.0 - 1e-12])
    t = eval_state(WaveState(unit, S, 3), x)
    assert np.all(t.value == 0) and np.all(t.d1 == 0) and np.all(t.d2 == 0)


def _direct_semiconfined(p, n, x):
    """Unsimplified formula with scipy special functions (the oracle)."""
    lam2a = p.lambda0**2 * p.a
    c = p.alpha ** (p.beta + 0.5) * math.sqrt(math.factorial(n) / (p.a * special.gamma(n + p.alpha + 1)))
    return c * (1 + x / p.a) ** (p.a * lam2a) * np.exp(-lam2a * (x + p.a)) * special.eval_genlaguerre(n, p.alpha, 2 * lam2a * (x + p.a))


@pytest.mark.parametrize("n", [0, 1, 4, 7])
def test_value_matches_direct_formula(confined, n):
    x = check_grid(confined, n)
    np.testing.assert_allclose(eval_state(WaveState(confined, S, n), x).value, _direct_semiconfined(confined, n, x),
                               rtol=1e-10, atol=1e-12)


@pytest.mark.parametrize("model", [S, C])
@pytest.mark.parametrize("n", [0, 2, 5])
def test_derivatives_against_finite_differences(unit, model, n):
    x = np.linspace(-0.5, 2.5, 13)
    h = 1e-4
    f = lambda y: eval_state(WaveState(unit, model, n), y)
    t = f(x)
    np.testing.assert_allclose(t.d1, (f(x + h).value - f(x - h).value) / (2 * h), atol=1e-7)
    np.testing.assert_allclose(t.d2, (f(x + h).d1 - f(x - h).d1) / (2 * h), atol=1e-6)


@pytest.mark.parametrize("alpha_a", [1.0, 2.0, 5.0])
def test_orthonormality(alpha_a):
    p = OscillatorParams(a=alpha_a)
    worst = 0.0
    for m in range(21):
        for n in range(m, 21):
            ip = inner_product(WaveState(p, S, m), WaveState(p, S, n))
            worst = max(worst, abs(ip - (m == n)))
    assert worst < 1e-10


def test_norm_by_adaptive_quadrature(unit):
    # independent of the Gauss-Laguerre machinery
    for n in range(4):
        val, _ = integrate.quad(lambda y: eval_state(WaveState(unit, S, n), y).value ** 2, -1.0, 60.0, limit=200)
        assert val == pytest.approx(1.0, rel=1e-9)
        val, _ = integrate.quad(lambda y: eval_state(WaveState(unit, C, n), y).value ** 2, -np.inf, np.inf)
        assert val == pytest.approx(1.0, rel=1e-9)


@given(st.floats(0.8, 6.0), st.integers(0, 12), st.integers(0, 12))
def test_orthonormality_property(a, m, n):
    p = OscillatorParams(a=a)
    assert abs(inner_product(WaveState(p, S, m), WaveState(p, S, n)) - (m == n)) < 1e-10


def test_shifted_inner_products_match_quad(unit):
    f = WaveState(unit, S, 2)
    u = lambda y: unit.u_scale * (y + unit.a)
    for shift in (-2, -1, 1, 2):
        ref, _ = integrate.quad(lambda y: eval_state(f, y).value ** 2 * u(y) ** shift, -1.0, 60.0, limit=200)
        assert inner_product(f, f, shift) == pytest.approx(ref, rel=1e-8)


def test_large_alpha_log_space():
    p = OscillatorParams(a=30.0)  # alpha = 1800, Gamma overflows in linear space
    assert math.isfinite(log_norm_constant(p, S, 5))
    x = check_grid(p, 3)
    vals = eval_state(WaveState(p, S, 3), x).value
    assert np.all(np.isfinite(vals)) and np.max(np.abs(vals)) > 0.1
    assert inner_product(WaveState(p, S, 3), WaveState(p, S, 3)) == pytest.approx(1.0, abs=1e-10)


def test_check_grid_inside_domain(confined):
    x = check_grid(confined, 5)
    assert len(x) == 60 and x[0] > -confined.a and np.all(np.diff(x) > 0)
