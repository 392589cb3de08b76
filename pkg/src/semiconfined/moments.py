"""Position and momentum moments of both oscillators and a corpus of
Laguerre integral identities used to cross-check them.

Closed forms are evaluated in log space.  The quadrature route integrates
the states themselves (``x psi^2``, ``psi p^2 psi``) with Gauss-Laguerre rules,
so the two routes share no algebra.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .algebra import GeneratorKind, matrix_elements
from .model import ModelKind, OscillatorParams
from .report import CheckReport
from .specfun import gauss_laguerre, laguerre_derivative, laguerre_table, log_gamma
from .states import WaveState, inner_product, log_norm_constant

__all__ = [
    "MomentSet",
    "MomentMode",
    "GroundStateBound",
    "moments_constant",
    "moments_semiconfined",
    "momentum_variance_sum",
    "momentum_variance_by_parts",
    "ground_state_bound",
    "IDENTITIES",
    "identity_lhs",
    "identity_rhs",
    "verify_identities",
]


@dataclass(frozen=True)
class MomentSet:
    n: int
    mean_x: float
    mean_p: float
    var_x: float
    var_p: float
    product: float

    COLUMNS = ("n", "mean_x", "mean_p", "var_x", "var_p", "product")

    def row(self) -> tuple:
        return (self.n, self.mean_x, self.mean_p, self.var_x, self.var_p, self.product)


class MomentMode(enum.Enum):
    CLOSED_FORM = "closed"
    QUADRATURE = "quadrature"


def moments_constant(params: OscillatorParams, n: int) -> MomentSet:
    if n < 0:
        raise ValueError("n must be >= 0")
    lam2 = params.lambda0**2
    var_x = (n + 0.5) / lam2
    var_p = params.hbar**2 * lam2 * (n + 0.5)
    return MomentSet(n, 0.0, 0.0, var_x, var_p, var_x * var_p)


def _log_sum_exp(terms: Iterable[float]) -> float:
    terms = list(terms)
    top = max(terms)
    return top + math.log(math.fsum(math.exp(t - top) for t in terms))


def momentum_variance_sum(alpha: float, n: int) -> float:
    """``alpha^2 n!/Gamma(n+alpha+1) * sum_k (k+1)^2 Gamma(n+alpha-k-1)/(n-k)!`` (needs alpha > 1).

    Each Gamma ratio is a finite product, so no large log-Gamma values are
    differenced; callers subtract 1 from this sum, which would amplify them.
    """
    if not alpha > 1.0:
        raise ValueError(f"momentum variance diverges for alpha = {alpha} <= 1")
    log_terms = []
    for k in range(n + 1):
        falling = math.fsum(math.log(n - j) for j in range(k))  # n!/(n-k)!
        rising = math.fsum(math.log(n + alpha - k - 1.0 + j) for j in range(k + 2))
        log_terms.append(2.0 * math.log(k + 1.0) + falling - rising)
    return math.exp(2.0 * math.log(alpha) + _log_sum_exp(log_terms))


def _closed_semiconfined(params, n):
    lam2, a, alpha = params.lambda0**2, params.a, params.alpha
    mean_x = (n + 0.5) / (lam2 * a)
    var_x = (n + 0.5) / lam2 + (2.0 * n * (n + 1) + 1.0) / (4.0 * lam2**2 * a**2)
    var_p = 0.5 * params.hbar**2 * lam2 * alpha * (momentum_variance_sum(alpha, n) - 1.0)
    return MomentSet(n, mean_x, 0.0, var_x, var_p, var_x * var_p)


def _diag(params, kinds, n):
    return matrix_elements(params, kinds, n + 1).entries[n, n]


def _quadrature_semiconfined(params, n):
    p = params
    if not p.alpha > 1.0:
        raise ValueError(f"momentum variance diverges for alpha = {p.alpha} <= 1")
    psi = WaveState(p, ModelKind.SEMICONFINED, n)
    # x = u/(2 lambda0^2 a) - a, so x-moments are u-weighted norms
    c2 = p.u_scale
    m0 = inner_product(psi, psi, 0)
    m1 = inner_product(psi, psi, 1)
    m2 = inner_product(psi, psi, 2)
    mean_x = m1 / c2 - p.a * m0
    mean_x2 = m2 / c2**2 - 2.0 * p.a * m1 / c2 + p.a**2 * m0
    mean_p = _diag(p, (GeneratorKind.SMALL_P_X,), n)
    mean_p2 = _diag(p, (GeneratorKind.SMALL_P_X, GeneratorKind.SMALL_P_X), n)
    var_x = mean_x2 - mean_x**2
    var_p = float(np.real(mean_p2)) - float(np.real(mean_p)) ** 2
    # <p> is i times a real number; report its real part (zero by symmetry)
    return MomentSet(n, float(mean_x), float(np.real(mean_p)), float(var_x), var_p, float(var_x) * var_p)


def momentum_variance_by_parts(params: OscillatorParams, n: int, npoints: int | None = None) -> float:
    """``hbar^2 * integral (psi_n')^2 dx``: the integrated-by-parts form of ``<p^2>``."""
    p = params
    if not p.alpha > 1.0:
        raise ValueError(f"momentum variance diverges for alpha = {p.alpha} <= 1")
    index = p.alpha - 2.0
    rule = gauss_laguerre(index, npoints or 2 * n + 10)
    u = rule.nodes
    # d psi/dx = (d psi/du) * 2 lambda0^2 a with psi = A u^beta e^{-u/2} L_n(u)
    lag = laguerre_table(n, p.alpha, u)[n]
    dlag = laguerre_derivative(n, p.alpha, u) if n > 0 else np.zeros_like(u)
    reduced = p.beta * lag + u * (dlag - 0.5 * lag)  # u^(1-beta) e^{u/2} dpsi/du / A
    log_amp = 2.0 * (log_norm_constant(p, ModelKind.SEMICONFINED, n) - p.beta * math.log(p.alpha))
    log_amp += 2.0 * math.log(p.u_scale) + math.log(p.a / p.alpha) + rule.log_mu0
    return p.hbar**2 * math.exp(log_amp) * float(np.dot(rule.normalized_weights, reduced**2))


def moments_semiconfined(params: OscillatorParams, n: int, mode: MomentMode | str = MomentMode.CLOSED_FORM) -> MomentSet:
    if n < 0:
        raise ValueError("n must be >= 0")
    mode = MomentMode(mode) if not isinstance(mode, MomentMode) else mode
    if mode is MomentMode.CLOSED_FORM:
        return _closed_semiconfined(params, n)
    return _quadrature_semiconfined(params, n)


class GroundStateBound(NamedTuple):
    product: float
    exceeds_quarter: bool
    threshold_a: float

    @property
    def physical(self) -> bool:
        """False in the alpha < 1 regime, where the formula is finite but the moment diverges."""
        return self.product > 0.0 and self.exceeds_quarter


def ground_state_bound(params: OscillatorParams) -> GroundStateBound:
    """``(hbar^2/4)(1 + 2/(alpha - 1))`` with the flag ``product > hbar^2/4``."""
    alpha = params.alpha
    if alpha == 1.0:
        raise ZeroDivisionError("ground-state product has a pole at alpha = 1")
    quarter = 0.25 * params.hbar**2
    product = quarter * (1.0 + 2.0 / (alpha - 1.0))
    return GroundStateBound(product, bool(product > quarter), params.threshold_a)


# --------------------------------------------------------------------------
# Integral identities for L_n^(alpha) and a Gamma sum

# name -> (rule index relative to alpha, smallest alpha for convergence)
IDENTITIES = {
    1: ("int x^(a-1) e^-x L^2 = sum Gamma(k+a)/k!", -1.0, 0.0),
    2: ("int x^(a-2) e^-x L^2 = sum (k+1)^2 Gamma(n+a-k-1)/(n-k)!", -2.0, 1.0),
    3: ("int x^(a-1) e^-x L L' = (1/2) sum [...]", -1.0, 1.0),
    4: ("int x^a e^-x L L' = 0", 0.0, -1.0),
    5: ("int x^a e^-x L L'' = 0", 0.0, -1.0),
    6: ("int x^(a+1) e^-x L^2 = (2n+a+1) Gamma(n+a+1)/n!", 1.0, -1.0),
    7: ("int x^(a+2) e^-x L^2 = [6n(n+a+1)+(a+1)(a+2)] Gamma(n+a+1)/n!", 2.0, -1.0),
    8: ("sum Gamma(k+a)/k! = Gamma(n+a+1)/(a n!)", None, 0.0),
}


def _reference_log(n, alpha):
    """log of Gamma(n+alpha+1)/n!, the natural size of every identity."""
    return log_gamma(n + alpha + 1.0) - log_gamma(n + 1.0)


def _sum1(n, alpha, ref):
    return math.fsum(math.exp(log_gamma(k + alpha) - log_gamma(k + 1.0) - ref) for k in range(n + 1))


def _sum2(n, alpha, ref):
    return math.fsum(
        (k + 1.0) ** 2 * math.exp(log_gamma(n + alpha - k - 1.0) - log_gamma(n - k + 1.0) - ref) for k in range(n + 1)
    )


def identity_rhs(which: int, n: int, alpha: float) -> tuple[float, float]:
    """Right side divided by ``Gamma(n+alpha+1)/n!``, and that log scale."""
    ref = _reference_log(n, alpha)
    if which == 1:
        out = _sum1(n, alpha, ref)
    elif which == 8:
        out = 1.0 / alpha
    elif which == 2:
        out = _sum2(n, alpha, ref)
    elif which == 3:
        out = 0.5 * (_sum1(n, alpha, ref) - (alpha - 1.0) * _sum2(n, alpha, ref))
    elif which in (4, 5):
        out = 0.0
    elif which == 6:
        out = 2.0 * n + alpha + 1.0
    elif which == 7:
        out = 6.0 * n * (n + alpha + 1.0) + (alpha + 1.0) * (alpha + 2.0)
    else:
        raise ValueError(f"unknown identity {which}")
    return out, ref


def identity_lhs(which: int, n: int, alpha: float, npoints: int | None = None) -> tuple[float, float]:
    """Left side divided by ``Gamma(n+alpha+1)/n!``: quadrature for the integrals,
    the term-by-term sum for the Gamma identity."""
    _, shift, lower = IDENTITIES[which]
    if not alpha > lower:
        raise ValueError(f"identity {which} needs alpha > {lower}, got {alpha}")
    ref = _reference_log(n, alpha)
    if which == 8:
        return _sum1(n, alpha, ref), ref
    rule = gauss_laguerre(alpha + shift, npoints or n + 6)
    u = rule.nodes
    lag = laguerre_table(n, alpha, u)[n]
    if which in (3, 4):
        other = laguerre_derivative(n, alpha, u, 1) if n >= 1 else np.zeros_like(u)
    elif which == 5:
        other = laguerre_derivative(n, alpha, u, 2) if n >= 2 else np.zeros_like(u)
    else:
        other = lag
    integral = float(np.dot(rule.normalized_weights, lag * other))
    return math.exp(rule.log_mu0 - ref) * integral, ref


def _side_scale(which, n, alpha):
    """Error normalization: |RHS|, or the size of the terms when the RHS vanishes."""
    rhs, ref = identity_rhs(which, n, alpha)
    if which in (4, 5):
        return 1.0
    if which == 3:
        return max(abs(rhs), 0.5 * _sum1(n, alpha, ref))
    return abs(rhs)


def verify_identities(n_max: int = 10, alpha_list=(1.5, 2.0, 8.0, 50.0), tol: float = 1e-9,
                      which: Iterable[int] = tuple(IDENTITIES)) -> CheckReport:
    """All identities for ``n <= n_max`` and each ``alpha`` in its validity range.

    The two sides for one identity are computed by different routes: a Gauss
    rule with index matched to the integrand power for the left side and
    log-space Gamma sums for the right side (the Gamma identity compares its
    term-by-term sum to the closed ratio).
    """
    errors = []
    for alpha in alpha_list:
        for k in which:
            if not alpha > IDENTITIES[k][2]:
                continue
            for n in range(n_max + 1):
                lhs = identity_lhs(k, n, alpha)[0]
                rhs = identity_rhs(k, n, alpha)[0]
                errors.append((f"identity {k} n={n} alpha={alpha:g}", abs(lhs - rhs) / _side_scale(k, n, alpha)))
    return CheckReport.from_errors(f"Laguerre identities n<={n_max}", errors, tol)
