"""Finite-difference eigensolver for the semiconfined Hamiltonian.

The kinetic term ``-(hbar^2/2) d/dx (1/M) d/dx`` is discretized in flux form
with ``theta = 1/M = (x + a)/(a m0)`` sampled at midpoints, which keeps the
matrix symmetric tridiagonal and handles the vanishing of ``theta`` at the
wall without special cases.  Nothing here uses the closed-form states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import OscillatorParams, energy
from .report import CheckReport, write_csv
from .specfun import SymmetricTridiagonal, tridiag_eigen

__all__ = [
    "Grid",
    "default_grid",
    "discretize_hamiltonian",
    "oracle_spectrum",
    "oracle_ground_state",
    "refine",
    "richardson_ratios",
    "spectrum_table",
    "check_spectrum",
]


@dataclass(frozen=True)
class Grid:
    """Interior points ``x_left + i h``, ``i < count``; Dirichlet zeros one step beyond each end."""

    x_left: float
    h: float
    count: int

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("h must be positive")
        if self.count < 2:
            raise ValueError("need at least two interior points")

    @property
    def points(self) -> np.ndarray:
        return self.x_left + self.h * np.arange(self.count)

    @property
    def x_right(self) -> float:
        return self.x_left + (self.count - 1) * self.h


def default_grid(params: OscillatorParams, k: int = 4, count: int = 8000) -> Grid:
    """Wall at ``-a``, truncation at ``u_max = alpha + 20 sqrt(alpha) + 60 + 10 k``."""
    u_max = params.alpha + 20.0 * math.sqrt(params.alpha) + 60.0 + 10.0 * k
    length = u_max / params.u_scale
    h = length / (count + 1)
    return Grid(-params.a + h, h, count)


def refine(grid: Grid) -> Grid:
    """Halve ``h`` with both Dirichlet ends fixed."""
    h = 0.5 * grid.h
    return Grid(grid.x_left - h, h, 2 * grid.count + 1)


def discretize_hamiltonian(params: OscillatorParams, grid: Grid) -> SymmetricTridiagonal:
    p = params
    x = grid.points
    if x[0] <= -p.a:
        raise ValueError("grid reaches the wall x = -a")
    h = grid.h
    mid = np.concatenate(([x[0] - 0.5 * h], x + 0.5 * h))  # count + 1 midpoints
    theta = (mid + p.a) / (p.a * p.m0)
    k = p.hbar**2 / (2.0 * h**2)
    V = 0.5 * p.a * p.m0 * p.omega**2 * x**2 / (x + p.a)
    diag = k * (theta[1:] + theta[:-1]) + V
    off = -k * theta[1:-1]
    return SymmetricTridiagonal(diag, off)


def oracle_spectrum(params: OscillatorParams, k: int = 4, grid: Grid | None = None) -> np.ndarray:
    if not 1 <= k <= 10:
        raise ValueError("k must be in 1..10")
    grid = default_grid(params, k) if grid is None else grid
    return tridiag_eigen(discretize_hamiltonian(params, grid), count=k)


def oracle_ground_state(params: OscillatorParams, grid: Grid | None = None) -> tuple[np.ndarray, np.ndarray, float]:
    """``(x, psi, E)``: ground eigenvector normalized by ``h * sum psi^2 = 1`` and made positive."""
    grid = default_grid(params, 1) if grid is None else grid
    vals, vecs = tridiag_eigen(discretize_hamiltonian(params, grid), want_vectors=True, count=1)
    v = vecs[:, 0]
    v = v / math.sqrt(grid.h * float(np.dot(v, v)))
    if v[np.argmax(np.abs(v))] < 0:
        v = -v
    return grid.points, v, float(vals[0])


def richardson_ratios(params: OscillatorParams, k: int = 4, count: int = 8000) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Eigenvalues at ``h`` and ``h/2`` and the ratios of their errors against ``hbar w (n + 1/2)``."""
    coarse = default_grid(params, k, count)
    e1 = oracle_spectrum(params, k, coarse)
    e2 = oracle_spectrum(params, k, refine(coarse))
    exact = np.array([energy(params, n) for n in range(k)])
    return e1, e2, (e1 - exact) / (e2 - exact)


def spectrum_table(params: OscillatorParams, values: np.ndarray) -> str:
    rows = []
    for n, e in enumerate(values):
        exact = energy(params, n)
        rows.append((n, float(e), exact, abs(e - exact) / exact))
    return write_csv(("n", "E_numeric", "E_exact", "rel_error"), rows)


def check_spectrum(params: OscillatorParams, k: int = 4, count: int = 8000, tol: float = 5e-3) -> CheckReport:
    vals = oracle_spectrum(params, k, default_grid(params, k, count))
    errors = [(f"E_{n}", abs(e - energy(params, n)) / energy(params, n)) for n, e in enumerate(vals)]
    return CheckReport.from_errors(f"finite-difference spectrum a={params.a:g} N_g={count}", errors, tol)
