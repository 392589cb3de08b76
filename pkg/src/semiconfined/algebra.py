"""Differential operators of both oscillators, their matrices in the
semiconfined basis, and pointwise/matrix certificates of the algebra.

Every operator acts on :class:`~semiconfined.jets.Jet` objects, so compositions
such as ``A+ A-``, commutators with ``H`` or ``(K+)**n`` are differentiated
exactly.  Pointwise residuals are reported relative to the largest magnitude
that enters the identity on the grid.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .jets import Jet, linear_jet, power_jet
from .model import ModelKind, OscillatorParams, energy
from .report import CheckReport
from .specfun import gauss_laguerre, pochhammer_log
from .states import EvalTriple, WaveState, check_grid, state_jet

__all__ = [
    "GeneratorKind",
    "OperatorMatrix",
    "ladder_coefficient",
    "act",
    "apply_operator",
    "apply_sequence",
    "matrix_elements",
    "general_ladder_commutator",
    "mass_superpotential_jets",
    "momentum_commutator_rhs",
    "check_generator_matrices",
    "check_matrix_relations",
    "check_su11",
    "check_casimir",
    "check_ladder",
    "build_state_by_ladder",
    "check_ladder_recovery",
    "check_schrodinger",
    "check_factorization",
    "check_ground_annihilation",
    "check_pdem_commutators",
    "check_heisenberg_lie",
]

SEMI = ModelKind.SEMICONFINED
CONST = ModelKind.CONSTANT_MASS


class GeneratorKind(enum.Enum):
    SMALL_A_PLUS = "aPlus"
    SMALL_A_MINUS = "aMinus"
    A_PLUS = "APlus"
    A_MINUS = "AMinus"
    K0 = "K0"
    K1 = "K1"
    K2 = "K2"
    K_PLUS = "KPlus"
    K_MINUS = "KMinus"
    P_X = "Px"
    SMALL_P_X = "SmallPx"
    H = "H"
    X = "X"


G = GeneratorKind

# derivative order consumed by each operator
_ORDER = {
    G.SMALL_A_PLUS: 1, G.SMALL_A_MINUS: 1, G.A_PLUS: 1, G.A_MINUS: 1,
    G.K0: 2, G.K1: 2, G.K2: 1, G.K_PLUS: 2, G.K_MINUS: 2,
    G.P_X: 1, G.SMALL_P_X: 1, G.H: 2, G.X: 0,
}
# lowest power of u the operator multiplies into u**beta * exp(-u/2) * polynomial
_U_SHIFT = {
    G.SMALL_A_PLUS: -1.0, G.SMALL_A_MINUS: -1.0, G.A_PLUS: -0.5, G.A_MINUS: -0.5,
    G.K0: 0.0, G.K1: 0.0, G.K2: 0.0, G.K_PLUS: 0.0, G.K_MINUS: 0.0,
    G.P_X: 0.0, G.SMALL_P_X: -1.0, G.H: 0.0, G.X: 0.0,
}
_CONSTANT_MASS_KINDS = {G.SMALL_A_PLUS, G.SMALL_A_MINUS, G.SMALL_P_X, G.X}


def ladder_coefficient(params: OscillatorParams, n: int) -> float:
    """``eps_n = -sqrt(n (n + alpha))``."""
    return -math.sqrt(n * (n + params.alpha))


# --------------------------------------------------------------------------
# Pointwise action


def act(params: OscillatorParams, kind: GeneratorKind, f: Jet, x, model: ModelKind = SEMI) -> Jet:
    """Image of the jet ``f`` under ``kind``; the jet loses ``order(kind)`` orders.

    ``model`` only matters for ``H``; every semiconfined operator requires
    ``x > -a``.
    """
    p = params
    x = np.asarray(x, dtype=float)
    k = f.order
    lam = p.lambda0
    kappa = 1.0 / (math.sqrt(2.0) * lam)
    if kind is G.X:
        return linear_jet(x, k) * f
    if kind is G.SMALL_A_PLUS:
        return (linear_jet(x, k) * f * lam**2 - f.derivative()) * kappa
    if kind is G.SMALL_A_MINUS:
        return (linear_jet(x, k) * f * lam**2 + f.derivative()) * kappa
    if kind is G.SMALL_P_X:
        return f.derivative() * (-1j * p.hbar)
    if kind is G.H and model is CONST:
        X = linear_jet(x, k)
        return f.derivative().derivative() * (-(p.hbar**2) / (2.0 * p.m0)) + X * X * f * (0.5 * p.m0 * p.omega**2)

    if np.any(x <= -p.a):
        raise ValueError(f"{kind.value} acts on the semiconfined domain x > -a = {-p.a}")
    s = x + p.a
    S = linear_jet(s, k)
    c = lam**2 * p.a
    if kind in (G.A_PLUS, G.A_MINUS):
        r = power_jet(s, 0.5, k) * p.a**-0.5  # sqrt(m0/M)
        r_inv = power_jet(s, -0.5, k) * p.a**0.5
        mult = (r - r_inv) * f * (lam**2 * p.a)
        if kind is G.A_PLUS:
            return (mult - (r * f).derivative()) * kappa
        return (mult + r * f.derivative()) * kappa
    if kind is G.P_X:
        return S * f.derivative() * (-1j)
    if kind is G.K2:
        return (f * 0.5 + S * f.derivative()) * 1j
    flux = (S * f.derivative()).derivative()  # d/dx (x + a) d/dx
    if kind is G.H:
        V = linear_jet(x, k) * linear_jet(x, k) * power_jet(s, -1.0, k) * (0.5 * p.a * p.m0 * p.omega**2)
        return flux * (-(p.hbar**2) / (2.0 * p.a * p.m0)) + V * f
    s_inv = power_jet(s, -1.0, k) * p.a**2
    if kind is G.K0:
        return (S + s_inv) * f * (0.5 * c) - flux * (0.5 / c)
    k1 = (S - s_inv) * f * (0.5 * c) + flux * (0.5 / c)
    if kind is G.K1:
        return k1
    if kind is G.K_PLUS:
        return k1 - f * 0.5 - S * f.derivative()
    if kind is G.K_MINUS:
        return k1 + f * 0.5 + S * f.derivative()
    raise ValueError(f"unknown operator {kind!r}")


def _sequence_order(kinds: Sequence[GeneratorKind]) -> int:
    return sum(_ORDER[k] for k in kinds)


def _to_jet(f, x, order):
    if isinstance(f, Jet):
        return f
    if isinstance(f, WaveState):
        return state_jet(f, x, order)
    out = f(x)
    if isinstance(out, Jet):
        return out
    if isinstance(out, EvalTriple):
        if order > 2:
            raise ValueError("an EvalTriple supplies only two derivatives")
        return Jet(np.stack([np.asarray(out.value), np.asarray(out.d1), 0.5 * np.asarray(out.d2)]))
    raise TypeError("f must be a WaveState, a Jet, or a callable returning EvalTriple/Jet")


def apply_sequence(params, kinds: Sequence[GeneratorKind], f, x, model: ModelKind = SEMI) -> Jet:
    """Apply ``kinds[0] kinds[1] ... kinds[-1]`` to ``f`` (rightmost acts first)."""
    x = np.asarray(x, dtype=float)
    jet = _to_jet(f, x, _sequence_order(kinds))
    for kind in reversed(kinds):
        jet = act(params, kind, jet, x, model)
    return jet


def apply_operator(params, kind: GeneratorKind, f, x, model: ModelKind = SEMI):
    """``(Op f)(x)`` as complex values; ``f`` is a WaveState or a callable
    returning an :class:`EvalTriple` (or a Jet) at ``x``."""
    out = apply_sequence(params, (kind,), f, x, model).value.astype(complex)
    return complex(out) if out.ndim == 0 else out


# --------------------------------------------------------------------------
# Matrices in the truncated semiconfined basis


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    kinds: tuple[GeneratorKind, ...]
    dim: int
    entries: np.ndarray
    basis_params: OscillatorParams


def _reduced_values(params, jet, u, index, log_mu0):
    """Jet values with half of the quadrature weight and measure divided out."""
    half = jet.log_scale - 0.5 * index * np.log(u) + 0.5 * u + 0.5 * (log_mu0 + math.log(params.a / params.alpha))
    return jet.coef[0] * np.exp(half)


def matrix_elements(params: OscillatorParams, kinds, N: int, *, npoints: int | None = None,
                    shift: float | None = None) -> OperatorMatrix:
    """Entries ``<psi_m | Op | psi_n>`` for ``m, n < N`` by Gauss-Laguerre quadrature.

    ``kinds`` is one operator or a product (rightmost acts first).  The rule
    index is ``alpha + shift`` with ``shift`` the sum of the lowest ``u``
    powers each factor can produce, so the reduced integrand is a polynomial
    and the rule is exact.
    """
    if isinstance(kinds, GeneratorKind):
        kinds = (kinds,)
    kinds = tuple(kinds)
    if N < 1:
        raise ValueError("N must be >= 1")
    p = params
    if shift is None:
        shift = sum(_U_SHIFT[k] for k in kinds)
    index = p.alpha + shift
    if not index > -1.0:
        raise ValueError(f"divergent matrix element: alpha + shift = {index} <= -1")
    rule = gauss_laguerre(index, npoints or 2 * N + 8 + 2 * len(kinds))
    u = rule.nodes
    x = u / p.u_scale - p.a
    order = _sequence_order(kinds)
    bras = np.empty((N, len(u)))
    kets = np.empty((N, len(u)), dtype=complex)
    for n in range(N):
        jet = state_jet(WaveState(p, SEMI, n), x, order)
        bras[n] = _reduced_values(p, jet.truncate(0), u, index, rule.log_mu0)
        image = jet
        for kind in reversed(kinds):
            image = act(p, kind, image, x, SEMI)
        kets[n] = _reduced_values(p, image, u, index, rule.log_mu0)
    entries = (bras * rule.normalized_weights) @ kets.T
    return OperatorMatrix(kinds, N, entries, p)


def _matrices(params, N, names=("K0", "K1", "K2", "KPlus", "KMinus")):
    return {name: matrix_elements(params, G(name), N).entries for name in names}


def check_generator_matrices(params: OscillatorParams, N: int = 15, tol: float = 1e-9) -> CheckReport:
    """K0 diagonal ``n + beta + 1/2``; K-/K+ single bands ``eps_n``; K1, K2 from K+-."""
    m = _matrices(params, N)
    n = np.arange(N)
    k0_exact = np.diag(n + params.beta + 0.5).astype(complex)
    km_exact = np.zeros((N, N), dtype=complex)
    for j in range(1, N):
        km_exact[j - 1, j] = ladder_coefficient(params, j)
    errors = [
        ("K0 vs n+beta+1/2", np.max(np.abs(m["K0"] - k0_exact))),
        ("KMinus vs eps_n band", np.max(np.abs(m["KMinus"] - km_exact))),
        ("KPlus vs eps_n band", np.max(np.abs(m["KPlus"] - km_exact.T))),
        ("K1 = (K+ + K-)/2", np.max(np.abs(m["K1"] - 0.5 * (m["KPlus"] + m["KMinus"])))),
        ("K2 = (K+ - K-)/2i", np.max(np.abs(m["K2"] - (m["KPlus"] - m["KMinus"]) / 2j))),
    ]
    return CheckReport.from_errors(f"generator matrices N={N} alpha={params.alpha:g}", errors, tol)


def check_matrix_relations(params: OscillatorParams, N: int = 12, tol: float = 1e-9) -> CheckReport:
    """K0 = H/(hbar omega) + beta, K1 = lambda0^2 a X - A+A- - 1/2, adjointness."""
    p = params
    b = N - 2
    m = _matrices(p, N)
    H = matrix_elements(p, G.H, N).entries
    X = matrix_elements(p, G.X, N).entries
    AA = matrix_elements(p, (G.A_PLUS, G.A_MINUS), N).entries
    eye = np.eye(N)
    blk = np.s_[:b, :b]
    errors = [
        ("K0 = H/hw + beta", np.max(np.abs(m["K0"] - H / (p.hbar * p.omega) - p.beta * eye))),
        ("K1 = l0^2 a X - A+A- - 1/2", np.max(np.abs(m["K1"] - (p.lambda0**2 * p.a * X - AA - 0.5 * eye)))),
        ("K0 = A+A- + beta + 1/2", np.max(np.abs(m["K0"] - AA - (p.beta + 0.5) * eye))),
        ("KPlus = KMinus^dagger", np.max(np.abs((m["KPlus"] - m["KMinus"].conj().T)[blk]))),
        ("K0 hermitian", np.max(np.abs((m["K0"] - m["K0"].conj().T)[blk]))),
        ("K1 hermitian", np.max(np.abs((m["K1"] - m["K1"].conj().T)[blk]))),
        ("K2 hermitian", np.max(np.abs((m["K2"] - m["K2"].conj().T)[blk]))),
    ]
    return CheckReport.from_errors(f"matrix relations N={N} alpha={p.alpha:g}", errors, tol)


def check_su11(params: OscillatorParams, N: int = 10, tol: float = 1e-9) -> CheckReport:
    """Closure of su(1,1) on the leading (N-2) block of the truncated matrices."""
    if N < 4:
        raise ValueError("N must be >= 4")
    m = _matrices(params, N)
    K0, K1, K2, Kp, Km = (m[k] for k in ("K0", "K1", "K2", "KPlus", "KMinus"))

    def comm(A, B):
        return A @ B - B @ A

    b = N - 2
    relations = {
        "[K0,K1] = iK2": comm(K0, K1) - 1j * K2,
        "[K2,K0] = iK1": comm(K2, K0) - 1j * K1,
        "[K1,K2] = -iK0": comm(K1, K2) + 1j * K0,
        "[K-,K+] = 2K0": comm(Km, Kp) - 2 * K0,
        "[K0,K+] = K+": comm(K0, Kp) - Kp,
        "[K0,K-] = -K-": comm(K0, Km) + Km,
    }
    errors = [(name, np.max(np.abs(r[:b, :b]))) for name, r in relations.items()]
    return CheckReport.from_errors(f"su(1,1) closure N={N} alpha={params.alpha:g}", errors, tol)


def check_casimir(params: OscillatorParams, N: int = 10, tol: float = 1e-9) -> CheckReport:
    """``K0^2 - (K+K- + K-K+)/2 = (beta^2 - 1/4) I`` on the interior block."""
    if N < 3:
        raise ValueError("N must be >= 3")
    m = _matrices(params, N, ("K0", "KPlus", "KMinus"))
    K0, Kp, Km = m["K0"], m["KPlus"], m["KMinus"]
    C = K0 @ K0 - 0.5 * (Kp @ Km + Km @ Kp)
    b = N - 2
    block = C[:b, :b]
    target = params.beta**2 - 0.25
    off = block - np.diag(np.diag(block))
    errors = [(f"diag[{i}]", abs(block[i, i] - target)) for i in range(b)]
    errors.append(("offdiag", np.max(np.abs(off)) if b > 1 else 0.0))
    return CheckReport.from_errors(f"Casimir N={N} alpha={params.alpha:g} (target {target:g})", errors, tol)


# --------------------------------------------------------------------------
# Pointwise certificates


def _values(params, kinds, f, x, model=SEMI):
    return apply_sequence(params, kinds, f, x, model).value


def _residual(lhs, rhs, *scales):
    amp = max(np.max(np.abs(lhs)), np.max(np.abs(rhs)), *(np.max(np.abs(s)) for s in scales))
    if amp == 0.0:
        return 0.0
    return float(np.max(np.abs(lhs - rhs)) / amp)


def _grid(params, grid, n_max):
    return check_grid(params, n_max) if grid is None else np.asarray(grid, dtype=float)


def check_ladder(params: OscillatorParams, n: int, grid=None, tol: float = 1e-8) -> CheckReport:
    """``K- psi_n = eps_n psi_{n-1}`` and ``K+ psi_n = eps_{n+1} psi_{n+1}`` on the grid."""
    x = _grid(params, grid, n + 1)
    psi = lambda k: WaveState(params, SEMI, k)
    f = state_jet(psi(n), x, 2)
    errors = []
    low = act(params, G.K_MINUS, f, x).value
    if n == 0:
        errors.append(("K- psi_0 = 0", _residual(low, np.zeros_like(x), f.value)))
    else:
        target = ladder_coefficient(params, n) * state_jet(psi(n - 1), x, 0).value
        errors.append((f"K- psi_{n}", _residual(low, target, f.value)))
    high = act(params, G.K_PLUS, f, x).value
    target = ladder_coefficient(params, n + 1) * state_jet(psi(n + 1), x, 0).value
    errors.append((f"K+ psi_{n}", _residual(high, target, f.value)))
    return CheckReport.from_errors(f"ladder n={n} alpha={params.alpha:g}", errors, tol)


def build_state_by_ladder(params: OscillatorParams, n: int) -> Callable[[np.ndarray], EvalTriple]:
    """``psi_n = (-1)**n (K+)**n psi_0 / sqrt(n! (alpha+1)_n)`` as a function of x.

    The raising operator is applied ``n`` times to an order-``2n+2`` jet of
    the ground state, so the result carries exact first and second derivatives.
    """

    ground = WaveState(params, SEMI, 0)
    log_pref = -0.5 * (math.lgamma(n + 1.0) + pochhammer_log(params.alpha + 1.0, n))
    pref = (-1) ** n * math.exp(log_pref)

    def evaluate(x) -> EvalTriple:
        x = np.asarray(x, dtype=float)
        jet = state_jet(ground, x, 2 * n + 2)
        for _ in range(n):
            jet = act(params, G.K_PLUS, jet, x)
        triple = [np.real(jet.derivative_value(k)) * pref for k in range(3)]
        if x.ndim == 0:
            triple = [float(t) for t in triple]
        return EvalTriple(*triple)

    return evaluate


def check_ladder_recovery(params: OscillatorParams, n: int, grid=None, tol: float = 1e-8) -> CheckReport:
    x = _grid(params, grid, n)
    built = build_state_by_ladder(params, n)(x)
    exact = state_jet(WaveState(params, SEMI, n), x, 2)
    errors = [
        ("value", _residual(built.value, exact.value)),
        ("d1", _residual(built.d1, exact.derivative_value(1))),
        ("d2", _residual(built.d2, exact.derivative_value(2))),
    ]
    return CheckReport.from_errors(f"ladder recovery n={n} alpha={params.alpha:g}", errors, tol)


def _default_grid_for(params, model, grid, n_max):
    if grid is not None:
        return np.asarray(grid, dtype=float)
    if model is CONST:
        half = math.sqrt(2.0 * n_max + 1.0) + 5.0
        return np.linspace(-half, half, 60) / params.lambda0
    return check_grid(params, n_max)


def check_schrodinger(params: OscillatorParams, model: ModelKind, n: int, grid=None, tol: float = 1e-7) -> CheckReport:
    """``H psi_n = E_n psi_n`` pointwise with the model's own kinetic operator."""
    x = _default_grid_for(params, model, grid, n)
    f = state_jet(WaveState(params, model, n), x, 2)
    lhs = act(params, G.H, f, x, model).value
    rhs = energy(params, n) * f.value
    return CheckReport.from_errors(
        f"Schrodinger {model.value} n={n}", [(f"H psi_{n}", _residual(lhs, rhs))], tol
    )


def check_factorization(params: OscillatorParams, model: ModelKind, n: int, grid=None, tol: float = 1e-7) -> CheckReport:
    """``hbar omega A+ A- psi_n + E0 psi_n = E_n psi_n`` (``a+ a-`` for constant mass)."""
    x = _default_grid_for(params, model, grid, n)
    pair = (G.A_PLUS, G.A_MINUS) if model is SEMI else (G.SMALL_A_PLUS, G.SMALL_A_MINUS)
    f = state_jet(WaveState(params, model, n), x, 2)
    lhs = params.hbar * params.omega * _values(params, pair, f, x, model) + params.e0 * f.value
    rhs = energy(params, n) * f.value
    return CheckReport.from_errors(
        f"factorization {model.value} n={n}", [(f"hw A+A- psi_{n} + E0 psi_{n}", _residual(lhs, rhs))], tol
    )


def check_ground_annihilation(params: OscillatorParams, model: ModelKind = SEMI, grid=None, tol: float = 1e-9) -> CheckReport:
    x = _default_grid_for(params, model, grid, 0)
    kind = G.A_MINUS if model is SEMI else G.SMALL_A_MINUS
    f = state_jet(WaveState(params, model, 0), x, 1)
    image = act(params, kind, f, x, model).value
    err = float(np.max(np.abs(image)) / np.max(np.abs(f.value)))
    return CheckReport.from_errors(f"ground annihilation {model.value}", [("A- psi_0", err)], tol)


def general_ladder_commutator(params: OscillatorParams, mass_jet: Jet, w_jet: Jet) -> np.ndarray:
    """``[A-, A+]`` for an arbitrary mass profile and superpotential (both jets
    of order >= 2): ``(sqrt2/lambda0) sqrt(m0/M) W' + (m0/M)(M''/M - 1.5 (M'/M)^2)/(4 lambda0^2)``."""
    lam = params.lambda0
    M, M1, M2 = (mass_jet.derivative_value(k) for k in range(3))
    W1 = w_jet.derivative_value(1)
    ratio = params.m0 / M
    return math.sqrt(2.0) / lam * np.sqrt(ratio) * W1 + ratio * (M2 / M - 1.5 * (M1 / M) ** 2) / (4.0 * lam**2)


def mass_superpotential_jets(params: OscillatorParams, x, order: int = 3) -> tuple[Jet, Jet]:
    """Jets of ``M(x) = a m0/(x + a)`` and ``W(x) = (lambda0 a/sqrt2)(r - 1/r)``, ``r = sqrt((x+a)/a)``."""
    s = np.asarray(x, dtype=float) + params.a
    mass = power_jet(s, -1.0, order) * (params.a * params.m0)
    r = power_jet(s, 0.5, order) * params.a**-0.5
    r_inv = power_jet(s, -0.5, order) * params.a**0.5
    w = (r - r_inv) * (params.lambda0 * params.a / math.sqrt(2.0))
    return mass, w


def check_pdem_commutators(params: OscillatorParams, grid=None, tol: float = 1e-7, states=range(4)) -> CheckReport:
    """Commutators of the position-dependent-mass factorization operators.

    Checks, on each test state: the specialized ``[A-, A+]`` against its
    operator form and against the general mass/superpotential formula, the
    specialized ``[H, A+-]`` forms, the intermediate ``[H, A+] = hw A+[A-, A+]``
    and the general ``[H, A+-]`` expressions with ``M'''`` terms.
    """
    p = params
    x = _grid(p, grid, max(states))
    hw = p.hbar * p.omega
    lam, a = p.lambda0, p.a
    s = x + a
    g = np.sqrt(a / s) / (2.0 * math.sqrt(2.0) * lam * a)  # sqrt(M/m0) / (2 sqrt2 lambda0 a)
    mass, w = mass_superpotential_jets(p, x, 3)
    G_gen = general_ladder_commutator(p, mass, w)
    M, M1, M2, M3 = (mass.derivative_value(k) for k in range(4))
    W1, W2 = w.derivative_value(1), w.derivative_value(2)
    ratio = p.m0 / M
    extra_plus = -(hw / lam**2) * ratio * (W2 - 0.5 * W1 * M1 / M) - hw / (4.0 * math.sqrt(2.0) * lam**3) * ratio**1.5 * (
        M3 / M - 5.0 * M2 * M1 / M**2 + 4.5 * (M1 / M) ** 3
    )
    errors = []
    for n in states:
        f = state_jet(WaveState(p, SEMI, n), x, 4)
        v = lambda *kinds: _values(p, kinds, f, x)
        Ap, Am = v(G.A_PLUS), v(G.A_MINUS)
        ApAm, AmAp, ApAp, AmAm = v(G.A_PLUS, G.A_MINUS), v(G.A_MINUS, G.A_PLUS), v(G.A_PLUS, G.A_PLUS), v(G.A_MINUS, G.A_MINUS)
        comm = AmAp - ApAm
        special = f.value - g * (Ap + Am)
        errors.append((f"[A-,A+] specialized, psi_{n}", _residual(comm, special, f.value)))
        errors.append((f"[A-,A+] general formula, psi_{n}", _residual(comm, G_gen * f.value, f.value)))
        errors.append((f"general vs specialized RHS, psi_{n}", _residual(G_gen * f.value, special, f.value)))

        HAp, ApH = v(G.H, G.A_PLUS), v(G.A_PLUS, G.H)
        HAm, AmH = v(G.H, G.A_MINUS), v(G.A_MINUS, G.H)
        lhs_plus, lhs_minus = HAp - ApH, HAm - AmH
        rhs_plus = hw * Ap - hw * g * (ApAm + ApAp) + hw / (8.0 * lam**2 * a) * (M1 / M) * (Ap + Am)
        rhs_minus = -hw * Am + hw * g * (ApAm + AmAm)
        scale = hw * np.max(np.abs(Ap)) + hw * np.max(np.abs(Am))
        errors.append((f"[H,A+] specialized, psi_{n}", _residual(lhs_plus, rhs_plus, scale)))
        errors.append((f"[H,A-] specialized, psi_{n}", _residual(lhs_minus, rhs_minus, scale)))
        ApAmAp = v(G.A_PLUS, G.A_MINUS, G.A_PLUS)
        ApApAm = v(G.A_PLUS, G.A_PLUS, G.A_MINUS)
        errors.append((f"[H,A+] = hw A+[A-,A+], psi_{n}", _residual(lhs_plus, hw * (ApAmAp - ApApAm), scale)))
        gen_plus = hw * G_gen * Ap + extra_plus * f.value
        gen_minus = -hw * G_gen * Am
        errors.append((f"[H,A+] general, psi_{n}", _residual(lhs_plus, gen_plus, scale)))
        errors.append((f"[H,A-] general, psi_{n}", _residual(lhs_minus, gen_minus, scale)))
    return CheckReport.from_errors(f"PDEM commutators alpha={p.alpha:g}", errors, tol)


def momentum_commutator_rhs(params: OscillatorParams, f: Jet, x, sign: float = -1.0) -> np.ndarray:
    """Right side of ``[H, p_x] f`` for the semiconfined model,
    ``i hbar M w^2 x (1 + sign * M x/(2 a m0)) f + i hbar p_x^2 f / (2 a m0)``.

    ``sign = -1`` is ``i hbar V'(x)``; the ``+1`` variant is kept for comparison.
    """
    p = params
    x = np.asarray(x, dtype=float)
    M = p.a * p.m0 / (x + p.a)
    p2 = _values(p, (G.SMALL_P_X, G.SMALL_P_X), f, x)
    return 1j * p.hbar * M * p.omega**2 * x * (1.0 + sign * M * x / (2.0 * p.a * p.m0)) * f.value + 1j * p.hbar * p2 / (
        2.0 * p.a * p.m0
    )


def check_heisenberg_lie(params: OscillatorParams, model: ModelKind, grid=None, tol: float = 1e-7, states=range(4)) -> CheckReport:
    """Heisenberg-Lie equations: ``[H, p]`` and ``[H, x]`` for constant mass;
    ``[H, P_x] = i(m0 w^2 a x - H)`` and ``[H, x] = -(hbar^2/(a m0))(i P_x + 1/2)``
    plus the unscaled ``[H, p_x]``, ``[H, x]`` forms for the semiconfined model."""
    p = params
    x = _default_grid_for(p, model, grid, max(states))
    errors = []
    for n in states:
        f = state_jet(WaveState(p, model, n), x, 3)
        v = lambda *kinds: _values(p, kinds, f, x, model)
        Hx = v(G.H, G.X) - v(G.X, G.H)
        if model is CONST:
            Hp = v(G.H, G.SMALL_P_X) - v(G.SMALL_P_X, G.H)
            errors.append((f"[H,p] psi_{n}", _residual(Hp, 1j * p.m0 * p.hbar * p.omega**2 * x * f.value, f.value)))
            errors.append((f"[H,x] psi_{n}", _residual(Hx, -1j * p.hbar / p.m0 * v(G.SMALL_P_X), f.value)))
            continue
        HP = v(G.H, G.P_X) - v(G.P_X, G.H)
        errors.append((f"[H,Px] psi_{n}", _residual(HP, 1j * (p.m0 * p.omega**2 * p.a * x * f.value - v(G.H)), f.value)))
        rhs_x = -(p.hbar**2) / (p.a * p.m0) * (1j * v(G.P_X) + 0.5 * f.value)
        errors.append((f"[H,x] scaled, psi_{n}", _residual(Hx, rhs_x, f.value)))
        M = p.a * p.m0 / (x + p.a)
        rhs_x_raw = -1j * p.hbar / M * (v(G.SMALL_P_X) - 1j * p.hbar / (2.0 * p.a) * M / p.m0 * f.value)
        errors.append((f"[H,x] unscaled, psi_{n}", _residual(Hx, rhs_x_raw, f.value)))
        Hp = v(G.H, G.SMALL_P_X) - v(G.SMALL_P_X, G.H)
        errors.append((f"[H,p_x] unscaled, psi_{n}", _residual(Hp, momentum_commutator_rhs(p, f, x), f.value)))
    return CheckReport.from_errors(f"Heisenberg-Lie {model.value} alpha={p.alpha:g}", errors, tol)
