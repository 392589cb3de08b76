"""Semiconfined harmonic oscillator with a position-dependent effective mass.

Exact stationary states, the su(1,1) generators and their matrices, moment
formulas, large-``a`` limits toward the constant-mass oscillator, and an
independent finite-difference eigensolver.
"""

from .model import ModelKind, OscillatorParams, energy, make_params
from .report import CheckReport
from .states import EvalTriple, WaveState, eval_state, inner_product

__all__ = [
    "ModelKind",
    "OscillatorParams",
    "make_params",
    "energy",
    "CheckReport",
    "WaveState",
    "EvalTriple",
    "eval_state",
    "inner_product",
]
