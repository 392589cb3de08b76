"""Truncated Taylor arithmetic on batches of points.

A :class:`Jet` stores ``f(x0 + t) = exp(log_scale) * sum_k coef[k] * t**k``
for every point ``x0`` of a grid.  Differential operators with closed-form
coefficients act exactly on jets, so nested applications (commutators,
factorizations, repeated ladder steps) need no numerical differentiation.
The per-point ``log_scale`` keeps states with huge or tiny envelopes finite.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["Jet", "power_jet", "linear_jet", "constant_jet", "exp_linear_jet"]


class Jet:
    __slots__ = ("coef", "log_scale")

    def __init__(self, coef, log_scale=None):
        coef = np.asarray(coef)
        if coef.ndim < 1:
            raise ValueError("coef needs a leading order axis")
        self.coef = coef
        if log_scale is None:
            log_scale = np.zeros(coef.shape[1:])
        self.log_scale = np.asarray(log_scale, dtype=float)

    @property
    def order(self) -> int:
        return self.coef.shape[0] - 1

    @property
    def scale(self) -> np.ndarray:
        return np.exp(self.log_scale)

    @property
    def value(self) -> np.ndarray:
        return self.coef[0] * self.scale

    def derivative_value(self, k: int) -> np.ndarray:
        """k-th derivative at the expansion points."""
        return math.factorial(k) * self.coef[k] * self.scale

    def truncate(self, order: int) -> "Jet":
        return Jet(self.coef[: order + 1], self.log_scale)

    def derivative(self) -> "Jet":
        if self.order < 1:
            raise ValueError("jet order exhausted")
        k = np.arange(1, self.order + 1).reshape((-1,) + (1,) * (self.coef.ndim - 1))
        return Jet(self.coef[1:] * k, self.log_scale)

    def _aligned(self, other: "Jet"):
        order = min(self.order, other.order)
        a, b = self.coef[: order + 1], other.coef[: order + 1]
        if np.array_equal(self.log_scale, other.log_scale):
            return a, b, self.log_scale
        common = np.maximum(self.log_scale, other.log_scale)
        common = np.where(np.isfinite(common), common, 0.0)
        return a * np.exp(self.log_scale - common), b * np.exp(other.log_scale - common), common

    def __add__(self, other):
        if isinstance(other, Jet):
            a, b, ls = self._aligned(other)
            return Jet(a + b, ls)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Jet):
            a, b, ls = self._aligned(other)
            return Jet(a - b, ls)
        return NotImplemented

    def __neg__(self):
        return Jet(-self.coef, self.log_scale)

    def __mul__(self, other):
        if isinstance(other, Jet):
            order = min(self.order, other.order)
            a, b = self.coef, other.coef
            dtype = np.result_type(a, b)
            out = np.zeros((order + 1,) + np.broadcast_shapes(a.shape[1:], b.shape[1:]), dtype=dtype)
            for k in range(order + 1):
                for j in range(k + 1):
                    out[k] += a[j] * b[k - j]
            return Jet(out, self.log_scale + other.log_scale)
        return Jet(self.coef * other, self.log_scale)

    __rmul__ = __mul__


def power_jet(s, p: float, order: int) -> Jet:
    """Jet of ``s**p`` where ``s`` moves with unit slope (``s = x + const``)."""
    s = np.asarray(s, dtype=float)
    coef = np.empty((order + 1,) + s.shape)
    coef[0] = s**p
    for k in range(1, order + 1):
        coef[k] = coef[k - 1] * (p - k + 1) / (k * s)
    return Jet(coef)


def linear_jet(x, order: int) -> Jet:
    x = np.asarray(x, dtype=float)
    coef = np.zeros((order + 1,) + x.shape)
    coef[0] = x
    if order >= 1:
        coef[1] = 1.0
    return Jet(coef)


def constant_jet(value, order: int, shape=()) -> Jet:
    coef = np.zeros((order + 1,) + np.broadcast_shapes(np.shape(value), shape))
    coef[0] = value
    return Jet(coef)


def exp_linear_jet(rate: float, order: int, shape=()) -> Jet:
    """Normalized jet of ``exp(rate * t)`` (value one at every point)."""
    coef = np.empty((order + 1,) + tuple(shape))
    for k in range(order + 1):
        coef[k] = rate**k / math.factorial(k)
    return Jet(coef)
