import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special

from semiconfined.algebra import GeneratorKind as G, act
from semiconfined.jets import Jet
from semiconfined.limits import (
    ConvergenceTable,
    asymptotic_relations,
    asymptotic_table,
    commutator_limit,
    default_probe_grid,
    generator_limit,
    laguerre_hermite_limit,
    moments_limit,
    wavefunction_limit,
)
from semiconfined.model import ModelKind, OscillatorParams
from semiconfined.states import WaveState, eval_state

A_LIST = (2.0, 4.0, 8.0, 16.0)


def test_table_rules():
    t = ConvergenceTable("a", [1.0, 2.0, 4.0])
    for v in (1.0, 0.5, 0.25):
        t.add("r", v)
    for _ in range(3):
        t.add("zero", 0.0)
    assert t.strictly_decreasing()
    assert t.loglog_slope("r") == pytest.approx(1.0)
    t.add("flat", 1.0), t.add("flat", 1.0), t.add("flat", 0.5)
    assert not t.strictly_decreasing() and t.strictly_decreasing("r")
    assert t.to_csv().splitlines()[0] == "a,r,zero,flat"
    assert not t.report("x").passed


def test_increasing_parameters_required(unit):
    with pytest.raises(ValueError):
        wavefunction_limit(unit, 0, (4.0, 2.0))


def test_probe_grid_floor(unit):
    x = default_probe_grid(unit, 0)
    amp = np.abs(eval_state(WaveState(unit, ModelKind.CONSTANT_MASS, 0), x).value)
    assert amp.min() >= 1e-10 * amp.max() * 0.99


@pytest.mark.parametrize("n", range(4))
def test_wavefunction_limit_decreasing(unit, n):
    assert wavefunction_limit(unit, n, A_LIST).strictly_decreasing()


def test_wavefunction_limit_n3_from_a4(unit):
    assert wavefunction_limit(unit, 3, (4.0, 8.0, 16.0)).strictly_decreasing()


def test_ground_state_at_origin():
    p = OscillatorParams(a=16.0)
    v = eval_state(WaveState(p, ModelKind.SEMICONFINED, 0), 0.0).value
    assert abs(v - math.pi**-0.25) < 5e-3


def test_wavefunction_limit_sign(unit):
    # psi~_n -> (-1)^n psi_n: the unsigned comparison does not converge for odd n
    x = default_probe_grid(unit, 1)
    semi = eval_state(WaveState(unit.with_a(16.0), ModelKind.SEMICONFINED, 1), x).value
    const = eval_state(WaveState(unit, ModelKind.CONSTANT_MASS, 1), x).value
    assert np.max(np.abs(semi + const)) < 0.1 < np.max(np.abs(semi - const))


@pytest.mark.parametrize("m", range(3))
def test_generator_limit_decreasing(unit, m):
    table = generator_limit(unit, A_LIST, test_state=m)
    assert len(table.columns) == 7
    assert table.strictly_decreasing(), table.columns


def test_generator_limit_rates(unit):
    table = generator_limit(unit, A_LIST)
    assert table.loglog_slope("K2/(sqrt2 l0 a)") == pytest.approx(1.0, abs=0.05)
    for name in table.columns:
        assert table.loglog_slope(name) >= 0.9, name


def test_k2_on_constant_probe(unit):
    x = np.array([-0.5, 0.0, 1.0])
    one = Jet(np.stack([np.ones(3), np.zeros(3)]))
    for a in A_LIST:
        p = unit.with_a(a)
        res = act(p, G.K2, one, x).value / (math.sqrt(2) * p.lambda0 * a)
        np.testing.assert_allclose(res, 0.5j / (math.sqrt(2) * a), rtol=1e-14)


def test_a_plus_residual_at_origin_is_first_order(unit):
    table = generator_limit(unit, A_LIST, probe_grid=[0.0])
    assert table.strictly_decreasing("A+ - a+")
    assert table.loglog_slope("A+ - a+") >= 0.9


def test_laguerre_hermite_examples():
    t0 = laguerre_hermite_limit(0)
    assert all(v == 0.0 for v in t0.columns["n=0"])
    alphas = (1e1, 1e2, 1e3, 1e4)
    t1 = laguerre_hermite_limit(1, alphas)
    np.testing.assert_allclose(t1.columns["n=1"], [math.sqrt(2 / a) for a in alphas], rtol=1e-10)


@pytest.mark.parametrize("n", range(7))
def test_laguerre_hermite_against_scipy(n):
    alphas = (1e1, 1e2, 1e3, 1e4)
    x = np.linspace(-2, 2, 81)
    t = laguerre_hermite_limit(n, alphas, x)
    target = (-1) ** n * special.eval_hermite(n, x) / math.factorial(n)
    for alpha, got in zip(alphas, t.columns[f"n={n}"]):
        ref = (2 / alpha) ** (n / 2) * special.eval_genlaguerre(n, alpha, math.sqrt(2 * alpha) * x + alpha)
        assert got == pytest.approx(np.max(np.abs(ref - target)), rel=1e-7, abs=1e-12)
    assert t.strictly_decreasing()


@pytest.mark.parametrize("n", range(2, 7))
def test_laguerre_hermite_rate_is_half_order(n):
    """The residual falls like alpha**-1/2, so it is still O(1e-2..1e-1) at alpha = 1e4."""
    t = laguerre_hermite_limit(n, (1e3, 1e4, 1e5, 1e6))
    assert t.loglog_slope(f"n={n}") == pytest.approx(0.5, abs=0.1)


def test_laguerre_hermite_n2_closed_residual():
    # (2/alpha) L_2(sqrt(2 alpha) x + alpha) - (2x^2 - 1) = 2/alpha - 4 sqrt2 x / sqrt(alpha)
    alpha = 1e4
    t = laguerre_hermite_limit(2, (alpha,), [1.0])
    assert t.final("n=2") == pytest.approx(abs(2 / alpha - 4 * math.sqrt(2) / math.sqrt(alpha)), rel=1e-9)


def test_asymptotic_relations(unit):
    exact, gamma, power = asymptotic_relations(unit, a=16.0)
    assert exact.passed and exact.max_abs_error < 1e-12
    assert gamma.passed and power.passed


def test_gamma_relation_against_lgamma():
    p = OscillatorParams(a=16.0)
    alpha, beta = p.alpha, p.beta
    for n in range(4):
        lhs = -0.5 * math.lgamma(n + alpha + 1)
        rhs = -0.5 * math.log(2 * p.a * math.sqrt(math.pi)) + beta - (beta + n / 2) * math.log(alpha)
        r = asymptotic_relations(p, n_max=n, a=16.0)[1]
        assert r.details[-1][1] == pytest.approx(abs(lhs - rhs), rel=1e-6)


def test_asymptotic_table_decreasing(unit):
    assert asymptotic_table(unit, A_LIST).strictly_decreasing()


def test_commutator_limit(unit):
    report, table = commutator_limit(unit, A_LIST)
    assert report.passed and report.max_abs_error < 1e-12
    assert table.strictly_decreasing()


@given(st.floats(1.0, 6.0))
def test_commutator_limit_property(a0):
    report, table = commutator_limit(OscillatorParams(), (a0, 2 * a0, 4 * a0))
    assert report.passed and table.strictly_decreasing()


@pytest.mark.parametrize("n", range(4))
def test_moments_limit(unit, n):
    assert moments_limit(unit, n).strictly_decreasing()
