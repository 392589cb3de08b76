"""Stationary states of both oscillators with exact derivatives.

Semiconfined states are written in the Laguerre variable ``u = 2*lambda0**2*a*(x + a)``::

    psi_n(x) = C_n * (1 + x/a)**(lambda0**2 a**2) * exp(-lambda0**2 a (x + a)) * L_n^(alpha)(u)

with ``C_n = alpha**(beta + 1/2) * sqrt(n! / (a Gamma(n + alpha + 1)))`` and
``beta = alpha/2``.  The phase is chosen so every state is positive next to
the wall; with it the su(1,1) lowering and raising coefficients are
``-sqrt(n (n + alpha))``.  The phase-flipped family ``(-1)**n psi_n`` is the one
that tends to the Hermite functions as ``a -> inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .jets import Jet
from .model import ModelKind, OscillatorParams
from .specfun import gauss_laguerre, hermite_table, laguerre_table, log_gamma

__all__ = [
    "WaveState",
    "EvalTriple",
    "log_norm_constant",
    "state_jet",
    "eval_state",
    "inner_product",
    "check_grid",
]


@dataclass(frozen=True)
class WaveState:
    params: OscillatorParams
    model: ModelKind
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError("n must be a nonnegative integer")


@dataclass(frozen=True)
class EvalTriple:
    value: np.ndarray | float
    d1: np.ndarray | float
    d2: np.ndarray | float


def log_norm_constant(params: OscillatorParams, model: ModelKind, n: int) -> float:
    """Logarithm of the (positive) normalization prefactor."""
    if model is ModelKind.CONSTANT_MASS:
        return 0.25 * math.log(params.lambda0**2 / math.pi) - 0.5 * (n * math.log(2.0) + log_gamma(n + 1.0))
    alpha = params.alpha
    return (params.beta + 0.5) * math.log(alpha) + 0.5 * (
        log_gamma(n + 1.0) - math.log(params.a) - log_gamma(n + alpha + 1.0)
    )


def _semiconfined_jet(params, n, x, order):
    a, beta, alpha = params.a, params.beta, params.alpha
    c = params.lambda0**2 * a
    s = x + a
    inside = s > 0
    coef = np.zeros((order + 1,) + x.shape)
    log_scale = np.full(x.shape, -np.inf)
    if not np.any(inside):
        return Jet(coef, log_scale)
    si = s[inside]
    u = 2.0 * c * si
    log_scale[inside] = log_norm_constant(params, ModelKind.SEMICONFINED, n) + beta * np.log(si / a) - c * si

    power = np.empty((order + 1,) + si.shape)
    power[0] = 1.0
    for k in range(1, order + 1):
        power[k] = power[k - 1] * (beta - k + 1) / (k * si)
    expo = np.array([(-c) ** k / math.factorial(k) for k in range(order + 1)])
    lag = np.zeros((order + 1,) + si.shape)
    for k in range(min(order, n) + 1):
        lag[k] = (-2.0 * c) ** k / math.factorial(k) * laguerre_table(n - k, alpha + k, u)[n - k]

    pe = np.zeros_like(power)
    for k in range(order + 1):
        for j in range(k + 1):
            pe[k] += power[j] * expo[k - j]
    for k in range(order + 1):
        acc = np.zeros(si.shape)
        for j in range(k + 1):
            acc += pe[j] * lag[k - j]
        coef[k][inside] = acc
    return Jet(coef, log_scale)


def _constant_mass_jet(params, n, x, order):
    lam = params.lambda0
    log_scale = log_norm_constant(params, ModelKind.CONSTANT_MASS, n) - 0.5 * lam**2 * x**2
    # exp(-lam^2 (x0 + t)^2 / 2) / exp(-lam^2 x0^2 / 2) = exp(-lam^2 x0 t) * exp(-lam^2 t^2 / 2)
    lin = np.array([(-(lam**2) * x) ** k / math.factorial(k) for k in range(order + 1)])
    quad = np.zeros(order + 1)
    for j in range(order // 2 + 1):
        quad[2 * j] = (-0.5 * lam**2) ** j / math.factorial(j)
    herm_rows = hermite_table(n, lam * x)
    herm = np.zeros((order + 1,) + x.shape)
    for k in range(min(order, n) + 1):
        herm[k] = (2.0 * lam) ** k * math.comb(n, k) * herm_rows[n - k]
    gauss = np.zeros((order + 1,) + x.shape)
    for k in range(order + 1):
        for j in range(k + 1):
            gauss[k] += lin[j] * quad[k - j]
    coef = np.zeros((order + 1,) + x.shape)
    for k in range(order + 1):
        for j in range(k + 1):
            coef[k] += gauss[j] * herm[k - j]
    return Jet(coef, log_scale)


def state_jet(state: WaveState, x, order: int = 2) -> Jet:
    """Taylor jet of the state up to ``order`` at every point of ``x``."""
    x = np.asarray(x, dtype=float)
    flat = x.reshape(-1)
    if state.model is ModelKind.CONSTANT_MASS:
        jet = _constant_mass_jet(state.params, state.n, flat, order)
    else:
        jet = _semiconfined_jet(state.params, state.n, flat, order)
    return Jet(jet.coef.reshape((order + 1,) + x.shape), jet.log_scale.reshape(x.shape))


def eval_state(state: WaveState, x) -> EvalTriple:
    """Value and first two derivatives; the semiconfined triple is zero for ``x <= -a``."""
    x = np.asarray(x, dtype=float)
    jet = state_jet(state, x, 2)
    triple = [jet.derivative_value(k) for k in range(3)]
    if x.ndim == 0:
        triple = [float(t) for t in triple]
    return EvalTriple(*triple)


def inner_product(f: WaveState, g: WaveState, weight_power_shift: int = 0, npoints: int | None = None) -> float:
    """``integral f(x) g(x) u(x)**shift dx`` over (-a, inf) with ``u = 2 lambda0^2 a (x + a)``.

    After the substitution the integrand is ``u**(alpha + shift) exp(-u)`` times
    ``L_m L_n``, so a Gauss-Laguerre rule with index ``alpha + shift`` is exact.
    """
    if f.params != g.params:
        raise ValueError("states must share parameters")
    if f.model is not ModelKind.SEMICONFINED or g.model is not ModelKind.SEMICONFINED:
        raise ValueError("inner_product is implemented for semiconfined states only")
    shift = int(weight_power_shift)
    if shift not in (-2, -1, 0, 1, 2):
        raise ValueError("weight_power_shift must be one of -2..2")
    p = f.params
    index = p.alpha + shift
    if not index > -1.0:
        raise ValueError(f"divergent integral: alpha + shift = {index} <= -1")
    m, n = f.n, g.n
    rule = gauss_laguerre(index, npoints or m + n + 8)
    lm = laguerre_table(m, p.alpha, rule.nodes)[m]
    ln = laguerre_table(n, p.alpha, rule.nodes)[n]
    log_amp = (
        log_norm_constant(p, ModelKind.SEMICONFINED, m)
        + log_norm_constant(p, ModelKind.SEMICONFINED, n)
        - p.alpha * math.log(p.alpha)
        + math.log(p.a / p.alpha)
        + rule.log_mu0
    )
    return math.exp(log_amp) * float(np.dot(rule.normalized_weights, lm * ln))


def check_grid(params: OscillatorParams, n_max: int, npoints: int = 60, floor: float = 1e-8) -> np.ndarray:
    """Points in x, uniform in ``u``, where states ``0..n_max`` are not negligible.

    The window starts at ``0.05 * max(alpha, 1)`` in ``u`` (clear of the
    ``(x + a)**beta`` underflow region) and is trimmed to where the envelope
    of the states exceeds ``floor`` times its maximum.
    """
    p = params
    u_hi_guess = p.alpha + 20.0 * math.sqrt(p.alpha + 1.0) + 40.0 + 8.0 * n_max
    u = np.linspace(1e-6, u_hi_guess, 8001)
    x = u / p.u_scale - p.a
    env = np.zeros_like(u)
    for n in range(n_max + 1):
        env = np.maximum(env, np.abs(state_jet(WaveState(p, ModelKind.SEMICONFINED, n), x, 0).value))
    keep = np.nonzero(env >= floor * env.max())[0]
    u_lo = max(u[keep[0]], 0.05 * max(p.alpha, 1.0))
    u_hi = u[keep[-1]]
    return np.linspace(u_lo, u_hi, npoints) / p.u_scale - p.a
