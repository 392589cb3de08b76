"""Large-``a`` (and large-``alpha``) limits toward the constant-mass oscillator.

Each function returns a :class:`ConvergenceTable`: one row per parameter
value, one column per residual.  A limit is certified when every column
decreases strictly down the table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import GeneratorKind as G
from .algebra import act, general_ladder_commutator, mass_superpotential_jets
from .jets import Jet
from .model import ModelKind, OscillatorParams, mass, superpotential, superpotential_derivative
from .moments import moments_constant, moments_semiconfined
from .report import CheckReport, write_csv
from .specfun import hermite, laguerre, log_gamma
from .states import WaveState, state_jet

__all__ = [
    "ConvergenceTable",
    "default_probe_grid",
    "wavefunction_limit",
    "generator_limit",
    "laguerre_hermite_limit",
    "asymptotic_relations",
    "asymptotic_table",
    "commutator_limit",
    "moments_limit",
]

SEMI = ModelKind.SEMICONFINED
CONST = ModelKind.CONSTANT_MASS


@dataclass
class ConvergenceTable:
    parameter: str
    values: list[float]
    columns: dict[str, list[float]] = field(default_factory=dict)

    def add(self, name: str, residual: float) -> None:
        self.columns.setdefault(name, []).append(float(residual))

    def strictly_decreasing(self, name: str | None = None) -> bool:
        """Every step decreases; a column that is exactly zero throughout counts as converged."""
        names = [name] if name else list(self.columns)
        for k in names:
            col = self.columns[k]
            if all(v == 0.0 for v in col):
                continue
            if not all(b < a for a, b in zip(col, col[1:])):
                return False
        return True

    def loglog_slope(self, name: str) -> float:
        """Least-squares slope of log(residual) against log(parameter), sign flipped."""
        x = np.log(np.asarray(self.values, dtype=float))
        y = np.log(np.asarray(self.columns[name], dtype=float))
        return float(-np.polyfit(x, y, 1)[0])

    def final(self, name: str) -> float:
        return self.columns[name][-1]

    def to_csv(self) -> str:
        names = list(self.columns)
        rows = [[v] + [self.columns[k][i] for k in names] for i, v in enumerate(self.values)]
        return write_csv([self.parameter] + names, rows)

    def report(self, label: str) -> CheckReport:
        """Pass iff every column decreases strictly; errors are the final residuals."""
        errors = [(f"{k} (final)", self.final(k)) for k in self.columns]
        out = CheckReport.from_errors(label, errors, math.inf)
        out.passed = self.strictly_decreasing()
        return out


def default_probe_grid(params: OscillatorParams, n: int, npoints: int = 81, floor: float = 1e-10) -> np.ndarray:
    """Points where the constant-mass state ``psi_n`` exceeds ``floor`` of its peak."""
    half = (math.sqrt(2.0 * n + 1.0) + 7.0) / params.lambda0
    x = np.linspace(-half, half, 4001)
    amp = np.abs(state_jet(WaveState(params, CONST, n), x, 0).value)
    keep = x[amp >= floor * amp.max()]
    return np.linspace(keep[0], keep[-1], npoints)


def _increasing(values):
    values = [float(v) for v in values]
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError("parameter list must be increasing")
    return values


def wavefunction_limit(params: OscillatorParams, n: int, a_list=(2.0, 4.0, 8.0, 16.0), probe_grid=None) -> ConvergenceTable:
    """``sup |psi~_n(x; a) - (-1)^n psi_n(x)|`` with ``psi~_n = 0`` behind the wall."""
    a_list = _increasing(a_list)
    x = default_probe_grid(params, n) if probe_grid is None else np.asarray(probe_grid, dtype=float)
    target = (-1) ** n * state_jet(WaveState(params, CONST, n), x, 0).value
    table = ConvergenceTable("a", a_list)
    for a in a_list:
        pa = params.with_a(a)
        if not pa.alpha > 1.0:
            raise ValueError(f"alpha = {pa.alpha} must exceed 1")
        semi = state_jet(WaveState(pa, SEMI, n), x, 0).value
        table.add(f"psi_{n}", np.max(np.abs(semi - target)))
    return table


def generator_limit(params: OscillatorParams, a_list=(2.0, 4.0, 8.0, 16.0), test_state: int = 0, probe_grid=None) -> ConvergenceTable:
    """Residuals of the generator limits applied to a constant-mass state.

    ``K0 - lambda0^2 a^2 -> H/(hbar omega)``, ``K1/(sqrt2 lambda0 a) -> lambda0 x/sqrt2``,
    ``K2/(sqrt2 lambda0 a) -> (i/(sqrt2 lambda0)) d/dx``, ``K+-/(sqrt2 lambda0 a) -> a+-``
    and ``A+- -> a+-``.  Probes are restricted to ``x > -a`` for each ``a``.
    """
    a_list = _increasing(a_list)
    x_all = default_probe_grid(params, test_state) if probe_grid is None else np.asarray(probe_grid, dtype=float)
    table = ConvergenceTable("a", a_list)
    lam = params.lambda0
    for a in a_list:
        pa = params.with_a(a)
        x = x_all[x_all > -a]
        f = state_jet(WaveState(pa, CONST, test_state), x, 2)
        scale = math.sqrt(2.0) * lam * a
        ap = act(pa, G.SMALL_A_PLUS, f, x, CONST).value
        am = act(pa, G.SMALL_A_MINUS, f, x, CONST).value
        h_red = -f.derivative_value(2) / (2.0 * lam**2) + 0.5 * lam**2 * x**2 * f.value
        rows = {
            "K0 - l0^2 a^2": act(pa, G.K0, f, x).value - pa.beta * f.value - h_red,
            "K1/(sqrt2 l0 a)": act(pa, G.K1, f, x).value / scale - lam * x / math.sqrt(2.0) * f.value,
            "K2/(sqrt2 l0 a)": act(pa, G.K2, f, x).value / scale - 1j / (math.sqrt(2.0) * lam) * f.derivative_value(1),
            "K+/(sqrt2 l0 a)": act(pa, G.K_PLUS, f, x).value / scale - ap,
            "K-/(sqrt2 l0 a)": act(pa, G.K_MINUS, f, x).value / scale - am,
            "A+ - a+": act(pa, G.A_PLUS, f, x).value - ap,
            "A- - a-": act(pa, G.A_MINUS, f, x).value - am,
        }
        for name, res in rows.items():
            table.add(name, np.max(np.abs(res)))
    return table


def laguerre_hermite_limit(n: int, alpha_list=(1e1, 1e2, 1e3, 1e4), x_grid=None) -> ConvergenceTable:
    """``sup |(2/alpha)^(n/2) L_n^(alpha)(sqrt(2 alpha) x + alpha) - (-1)^n H_n(x)/n!|``."""
    alpha_list = _increasing(alpha_list)
    x = np.linspace(-2.0, 2.0, 81) if x_grid is None else np.asarray(x_grid, dtype=float)
    target = (-1) ** n * hermite(n, x) / math.factorial(n)
    table = ConvergenceTable("alpha", alpha_list)
    for alpha in alpha_list:
        scaled = (2.0 / alpha) ** (0.5 * n) * laguerre(n, alpha, math.sqrt(2.0 * alpha) * x + alpha)
        table.add(f"n={n}", np.max(np.abs(scaled - target)))
    return table


def _relation_logs(params, n, x):
    """log(LHS) - log(RHS) for the three asymptotic relations."""
    lam, a, alpha, beta = params.lambda0, params.a, params.alpha, params.beta
    r1 = (beta + 0.5) * math.log(alpha) - (math.log(math.sqrt(2.0) * lam * a) + beta * math.log(alpha))
    lhs2 = -0.5 * log_gamma(n + alpha + 1.0)
    rhs2 = -0.5 * math.log(2.0 * lam * a * math.sqrt(math.pi)) + beta - (beta + 0.5 * n) * math.log(alpha)
    r3 = beta * np.log1p(x / a) - lam**2 * (a * x - 0.5 * x**2)
    return r1, lhs2 - rhs2, float(np.max(np.abs(r3)))


def asymptotic_relations(params: OscillatorParams, n_max: int = 3, x_window: float = 0.5, a: float | None = None,
                         tol: float = 1e-2) -> list[CheckReport]:
    """Log-space ratio checks of the three asymptotic relations at one ``a``.

    The first relation is an identity (``sqrt2 lambda0 a = alpha**0.5``) and is
    gated at 1e-12.  The third has log-ratio ``lambda0^2 x^3/(3a) + ...``, so it is
    probed on ``|x| <= x_window/lambda0``.
    """
    p = params if a is None else params.with_a(a)
    x = np.linspace(-x_window, x_window, 41) / p.lambda0
    ones, twos = [], []
    for n in range(n_max + 1):
        r1, r2, _ = _relation_logs(p, n, x)
        ones.append((f"n={n}", abs(r1)))
        twos.append((f"n={n}", abs(r2)))
    r3 = _relation_logs(p, 0, x)[2]
    return [
        CheckReport.from_errors(f"asymptotic (alpha)^(beta+1/2), a={p.a:g}", ones, 1e-12),
        CheckReport.from_errors(f"asymptotic 1/sqrt(Gamma), a={p.a:g}", twos, tol),
        CheckReport.from_errors(f"asymptotic (1+x/a)^beta, a={p.a:g}", [(f"|x|<={x_window:g}/l0", r3)], tol),
    ]


def asymptotic_table(params: OscillatorParams, a_list=(2.0, 4.0, 8.0, 16.0), n_max: int = 3, x_window: float = 0.5) -> ConvergenceTable:
    """Worst log-ratio of the two non-exact relations across ``a``."""
    a_list = _increasing(a_list)
    x = np.linspace(-x_window, x_window, 41) / params.lambda0
    table = ConvergenceTable("a", a_list)
    for a in a_list:
        pa = params.with_a(a)
        table.add("1/sqrt(Gamma)", max(abs(_relation_logs(pa, n, x)[1]) for n in range(n_max + 1)))
        table.add("(1+x/a)^beta", _relation_logs(pa, 0, x)[2])
    return table


def _model_jets(params, model, x, order=3):
    """Mass and superpotential jets from the model's own closed forms."""
    x = np.asarray(x, dtype=float)
    if model is CONST:
        mcoef = np.zeros((order + 1,) + x.shape)
        mcoef[0] = params.m0
        wcoef = np.zeros((order + 1,) + x.shape)
        wcoef[0] = superpotential(params, model, x)
        wcoef[1] = superpotential_derivative(params, model, x)
        return Jet(mcoef), Jet(wcoef)
    return mass_superpotential_jets(params, x, order)


def commutator_limit(params: OscillatorParams, a_list=(2.0, 4.0, 8.0, 16.0), x_grid=None) -> tuple[CheckReport, ConvergenceTable]:
    """The general ``[A-, A+]`` formula: equal to 1 for constant mass, and
    tending to 1 for the semiconfined profile as ``a`` grows."""
    x = np.linspace(-1.0, 1.0, 41) / params.lambda0 if x_grid is None else np.asarray(x_grid, dtype=float)
    m, w = _model_jets(params, CONST, x)
    flat = general_ladder_commutator(params, m, w)
    report = CheckReport.from_errors("[A-,A+] with M = m0", [("max |G - 1|", np.max(np.abs(flat - 1.0)))], 1e-12)
    table = ConvergenceTable("a", _increasing(a_list))
    for a in table.values:
        pa = params.with_a(a)
        xs = x[x > -a]
        m, w = _model_jets(pa, SEMI, xs)
        table.add("[A-,A+] - 1", np.max(np.abs(general_ladder_commutator(pa, m, w) - 1.0)))
        table.add("M/m0 - 1", np.max(np.abs(mass(pa, xs) / pa.m0 - 1.0)))
    return report, table


def moments_limit(params: OscillatorParams, n: int, a_list=(4.0, 8.0, 16.0)) -> ConvergenceTable:
    """|mean_x|, |var_x - var_x(const)|, |var_p - var_p(const)| over increasing ``a``."""
    table = ConvergenceTable("a", _increasing(a_list))
    ref = moments_constant(params, n)
    for a in table.values:
        ms = moments_semiconfined(params.with_a(a), n)
        table.add("|mean_x|", abs(ms.mean_x))
        table.add("|var_x - const|", abs(ms.var_x - ref.var_x))
        table.add("|var_p - const|", abs(ms.var_p - ref.var_p))
    return table
