"""Physical parameters and closed-form model functions.

Two oscillators share one parameter set: the constant-mass harmonic oscillator
on the real line and the semiconfined oscillator on (-a, +inf) whose mass is
``M(x) = a*m0/(x + a)``.  Natural units (m0 = omega = hbar = 1) are the default.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ModelKind",
    "OscillatorParams",
    "make_params",
    "mass",
    "mass_derivative",
    "potential",
    "superpotential",
    "superpotential_derivative",
    "potential_from_superpotential",
    "energy",
]


class ModelKind(enum.Enum):
    CONSTANT_MASS = "constant"
    SEMICONFINED = "semiconfined"


@dataclass(frozen=True)
class OscillatorParams:
    """Physical constants plus the derived quantities every module reads.

    ``lambda0 = sqrt(m0*omega/hbar)`` is the inverse oscillator length,
    ``alpha = 2*lambda0**2*a**2`` the Laguerre index of the semiconfined
    states and ``e0 = hbar*omega/2`` the ground energy.
    """

    m0: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0
    a: float = 1.0
    lambda0: float = field(init=False)
    alpha: float = field(init=False)
    e0: float = field(init=False)

    def __post_init__(self):
        for name in ("m0", "omega", "hbar", "a"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and > 0, got {value!r}")
            object.__setattr__(self, name, float(value))
        lambda0 = math.sqrt(self.m0 * self.omega / self.hbar)
        object.__setattr__(self, "lambda0", lambda0)
        # without the sqrt round trip, so exact inputs give exact alpha
        object.__setattr__(self, "alpha", 2.0 * self.m0 * self.omega * self.a**2 / self.hbar)
        object.__setattr__(self, "e0", 0.5 * self.hbar * self.omega)

    @property
    def beta(self) -> float:
        """Half the Laguerre index, ``lambda0**2 * a**2``."""
        return 0.5 * self.alpha

    @property
    def u_scale(self) -> float:
        """Factor ``2*lambda0**2*a`` mapping ``x + a`` to the Laguerre argument."""
        return 2.0 * self.m0 * self.omega * self.a / self.hbar

    @property
    def threshold_a(self) -> float:
        """Confinement length at which ``alpha == 1``."""
        return math.sqrt(self.hbar / (2.0 * self.m0 * self.omega))

    def with_a(self, a: float) -> "OscillatorParams":
        return OscillatorParams(self.m0, self.omega, self.hbar, a)


def make_params(m0: float, omega: float, hbar: float, a: float) -> OscillatorParams:
    return OscillatorParams(m0=m0, omega=omega, hbar=hbar, a=a)


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _ret(arr, scalar):
    return float(arr) if scalar else arr


def _require_semiconfined_domain(params, x):
    if np.any(x <= -params.a):
        raise ValueError(f"semiconfined model is defined only for x > -a = {-params.a}")


def mass(params: OscillatorParams, x):
    """Effective mass ``a*m0/(x + a)``; ``+inf`` for ``x <= -a``."""
    x, scalar = _as_array(x)
    s = x + params.a
    inside = s > 0
    out = np.full(x.shape, np.inf)
    np.divide(params.a * params.m0, s, out=out, where=inside)
    return _ret(out, scalar)


def mass_derivative(params: OscillatorParams, x, order: int = 1):
    """k-th derivative of the mass profile on the open domain."""
    x, scalar = _as_array(x)
    _require_semiconfined_domain(params, x)
    s = x + params.a
    k = int(order)
    coeff = (-1) ** k * math.factorial(k) * params.a * params.m0
    return _ret(coeff / s ** (k + 1), scalar)


def potential(params: OscillatorParams, model: ModelKind, x):
    x, scalar = _as_array(x)
    if model is ModelKind.CONSTANT_MASS:
        out = 0.5 * params.m0 * params.omega**2 * x**2
    else:
        _require_semiconfined_domain(params, x)
        out = 0.5 * params.a * params.m0 * params.omega**2 * x**2 / (x + params.a)
    return _ret(out, scalar)


def superpotential(params: OscillatorParams, model: ModelKind, x):
    x, scalar = _as_array(x)
    if model is ModelKind.CONSTANT_MASS:
        out = params.lambda0 * x / math.sqrt(2.0)
    else:
        _require_semiconfined_domain(params, x)
        # sqrt(m0/M) = sqrt((x + a)/a)
        r = np.sqrt((x + params.a) / params.a)
        out = params.lambda0 * params.a / math.sqrt(2.0) * (r - 1.0 / r)
    return _ret(out, scalar)


def superpotential_derivative(params: OscillatorParams, model: ModelKind, x):
    x, scalar = _as_array(x)
    if model is ModelKind.CONSTANT_MASS:
        out = np.full(x.shape, params.lambda0 / math.sqrt(2.0))
    else:
        _require_semiconfined_domain(params, x)
        r = np.sqrt((x + params.a) / params.a)
        out = params.lambda0 / (2.0 * math.sqrt(2.0) * r) * (1.0 + 1.0 / r**2)
    return _ret(out, scalar)


def potential_from_superpotential(params: OscillatorParams, model: ModelKind, x):
    """Rebuild V(x) from W, W' and M'/M (the factorization consistency identity)."""
    x, scalar = _as_array(x)
    hw = params.hbar * params.omega
    w = superpotential(params, model, x)
    wp = superpotential_derivative(params, model, x)
    if model is ModelKind.CONSTANT_MASS:
        r = 1.0
        mlog = 0.0
    else:
        r = np.sqrt((x + params.a) / params.a)
        mlog = -1.0 / (x + params.a)  # M'/M
    out = params.e0 + hw * w**2 - hw / (math.sqrt(2.0) * params.lambda0) * r * (wp - 0.5 * w * mlog)
    return _ret(np.asarray(out, dtype=float), scalar)


def energy(params: OscillatorParams, n: int) -> float:
    if n < 0:
        raise ValueError("n must be >= 0")
    return params.hbar * params.omega * (n + 0.5)
