"""Special functions, Gauss-Laguerre rules and a symmetric tridiagonal eigensolver.

Normalizations follow the Koekoek-Lesky-Swarttouw conventions: ``L_n^(alpha)``
has leading coefficient ``(-1)**n/n!`` and ``H_n`` is the physicists' Hermite
polynomial with leading coefficient ``2**n``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ConvergenceError",
    "QuadratureRule",
    "SymmetricTridiagonal",
    "laguerre",
    "laguerre_table",
    "laguerre_derivative",
    "hermite",
    "hermite_table",
    "log_gamma",
    "pochhammer_log",
    "gauss_laguerre",
    "golub_welsch_first_row",
    "tridiag_eigen",
    "solve_tridiagonal",
]

_EPS = np.finfo(float).eps


class ConvergenceError(ArithmeticError):
    """Raised when the QL iteration fails to isolate eigenvalue ``index``."""

    def __init__(self, index: int, iterations: int):
        super().__init__(f"QL iteration did not converge for eigenvalue {index} after {iterations} sweeps")
        self.index = index
        self.iterations = iterations


# --------------------------------------------------------------------------
# Orthogonal polynomials


def _laguerre_rows(nmax, alpha, x):
    rows = np.empty((nmax + 1,) + x.shape)
    rows[0] = 1.0
    if nmax >= 1:
        rows[1] = alpha + 1.0 - x
    for k in range(1, nmax):
        rows[k + 1] = ((2 * k + alpha + 1.0 - x) * rows[k] - (k + alpha) * rows[k - 1]) / (k + 1)
    return rows


def _check_alpha(alpha):
    if not alpha > -1.0:
        raise ValueError(f"Laguerre index must be > -1, got {alpha}")


def laguerre_table(nmax: int, alpha: float, x) -> np.ndarray:
    """Rows ``L_0^(alpha)(x) .. L_nmax^(alpha)(x)`` stacked along axis 0."""
    _check_alpha(alpha)
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    return _laguerre_rows(int(nmax), float(alpha), np.asarray(x, dtype=float))


def laguerre(n: int, alpha: float, x):
    """Generalized Laguerre polynomial by the three-term recurrence."""
    x = np.asarray(x, dtype=float)
    out = laguerre_table(n, alpha, x)[n]
    return float(out) if out.ndim == 0 else out


def laguerre_derivative(n: int, alpha: float, x, order: int = 1):
    """``d^k/dx^k L_n^(alpha) = (-1)**k L_{n-k}^(alpha+k)``."""
    _check_alpha(alpha)
    x = np.asarray(x, dtype=float)
    if order > n:
        out = np.zeros(x.shape)
    else:
        out = (-1) ** order * _laguerre_rows(n - order, alpha + order, x)[n - order]
    return float(out) if out.ndim == 0 else out


def hermite_table(nmax: int, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    rows = np.empty((nmax + 1,) + x.shape)
    rows[0] = 1.0
    if nmax >= 1:
        rows[1] = 2.0 * x
    for k in range(1, nmax):
        rows[k + 1] = 2.0 * x * rows[k] - 2.0 * k * rows[k - 1]
    return rows


def hermite(n: int, x):
    if n < 0:
        raise ValueError("n must be >= 0")
    out = hermite_table(n, x)[n]
    return float(out) if out.ndim == 0 else out


# --------------------------------------------------------------------------
# Gamma function

# Lanczos approximation, g = 7, nine terms.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _lanczos_log_gamma(x):
    z = x - 1.0
    series = np.full(z.shape, _LANCZOS[0])
    for i in range(1, len(_LANCZOS)):
        series = series + _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * np.log(t) - t + np.log(series)


def log_gamma(x):
    """``ln Gamma(x)`` for ``x > 0``.

    Absolute error stays below ``1e-13 * max(1, |ln Gamma(x)|)``; arguments
    below 1/2 are shifted up by one with ``Gamma(x) = Gamma(x + 1)/x``.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise ValueError("log_gamma requires x > 0")
    small = arr < 0.5
    shifted = np.where(small, arr + 1.0, arr)
    out = _lanczos_log_gamma(shifted)
    out = np.where(small, out - np.log(np.where(small, arr, 1.0)), out)
    return float(out) if out.ndim == 0 else out


def pochhammer_log(a: float, n: int) -> float:
    """``ln (a)_n`` for ``a > 0``; direct log-sum for short products."""
    if not a > 0:
        raise ValueError("pochhammer_log requires a > 0")
    if n < 0:
        raise ValueError("n must be >= 0")
    if n <= 64:
        return math.fsum(math.log(a + j) for j in range(n))
    return log_gamma(a + n) - log_gamma(a)


# --------------------------------------------------------------------------
# Tridiagonal eigenproblems


@dataclass(frozen=True, eq=False)
class SymmetricTridiagonal:
    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=float)
        e = np.asarray(self.offdiag, dtype=float)
        if d.ndim != 1 or e.ndim != 1 or len(e) != max(len(d) - 1, 0) or len(d) == 0:
            raise ValueError("need len(offdiag) == len(diag) - 1 >= 0")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def size(self) -> int:
        return len(self.diag)

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diag * v
        out[:-1] += self.offdiag * v[1:]
        out[1:] += self.offdiag * v[:-1]
        return out


def _tql_implicit(d, e, z, max_sweeps=60):
    """Implicit-shift QL on (d, e) in place; rotations are accumulated into
    the columns of ``z`` (any number of rows, possibly ``None``)."""
    n = len(d)
    e = list(e) + [0.0]
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= _EPS * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            if sweeps == max_sweeps:
                raise ConvergenceError(l, sweeps)
            sweeps += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if z is not None:
                    zi = z[:, i].copy()
                    z[:, i] = c * zi - s * z[:, i + 1]
                    z[:, i + 1] = s * zi + c * z[:, i + 1]
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d


def _ql_eigen(T: SymmetricTridiagonal, rows):
    d = [float(v) for v in T.diag]
    z = None if rows is None else rows.astype(float, copy=True)
    d = _tql_implicit(d, T.offdiag.tolist(), z)
    order = np.argsort(d, kind="stable")
    vals = np.asarray(d)[order]
    return vals, (None if z is None else z[:, order])


def _count_below(d0, d_rest, e2, x, pivmin):
    """Number of eigenvalues strictly below ``x`` (Sturm sequence of LDL^T pivots)."""
    q = d0 - x
    if abs(q) < pivmin:
        q = -pivmin
    count = 1 if q < 0.0 else 0
    for di, ei2 in zip(d_rest, e2):
        q = di - x - ei2 / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


def _bisect_lowest(T: SymmetricTridiagonal, count: int):
    d = T.diag
    e = T.offdiag
    radius = np.zeros_like(d)
    radius[:-1] += np.abs(e)
    radius[1:] += np.abs(e)
    lower = float(np.min(d - radius))
    upper = float(np.max(d + radius))
    span = max(abs(lower), abs(upper), 1.0)
    pivmin = np.finfo(float).tiny * max(float(np.max(e * e)) if len(e) else 1.0, 1.0)
    d0, d_rest, e2 = float(d[0]), d[1:].tolist(), (e * e).tolist()
    vals = []
    lo_start = lower - 2 * _EPS * span
    for j in range(count):
        lo, hi = lo_start, upper + 2 * _EPS * span
        while True:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi or hi - lo <= 2 * _EPS * max(abs(lo), abs(hi)):
                break
            if _count_below(d0, d_rest, e2, mid, pivmin) > j:
                hi = mid
            else:
                lo = mid
        vals.append(0.5 * (lo + hi))
        lo_start = lo
    return np.asarray(vals)


def solve_tridiagonal(lower, diag, upper, rhs) -> np.ndarray:
    """Solve a general tridiagonal system by Gaussian elimination with row pivoting.

    ``lower[i]`` is entry (i+1, i), ``upper[i]`` entry (i, i+1).  An exactly
    zero pivot is replaced by ``eps * max|diag|`` (used by inverse iteration).
    """
    n = len(diag)
    dl = [float(v) for v in lower]
    dd = [float(v) for v in diag]
    du = [float(v) for v in upper] + [0.0]
    du2 = [0.0] * n
    b = [float(v) for v in rhs]
    tiny = _EPS * max(max(abs(v) for v in dd), 1.0)
    for i in range(n - 1):
        if abs(dd[i]) >= abs(dl[i]):
            piv = dd[i] if dd[i] != 0.0 else tiny
            dd[i] = piv
            f = dl[i] / piv
            dd[i + 1] -= f * du[i]
            b[i + 1] -= f * b[i]
            dl[i] = 0.0
        else:
            f = dd[i] / dl[i]
            dd[i] = dl[i]
            dd[i + 1], du[i] = du[i] - f * dd[i + 1], dd[i + 1]
            du2[i] = du[i + 1]
            du[i + 1] = -f * du[i + 1]
            b[i], b[i + 1] = b[i + 1], b[i] - f * b[i + 1]
    if dd[n - 1] == 0.0:
        dd[n - 1] = tiny
    x = [0.0] * n
    x[n - 1] = b[n - 1] / dd[n - 1]
    if n > 1:
        x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / dd[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (b[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / dd[i]
    return np.asarray(x)


def _inverse_iteration(T: SymmetricTridiagonal, lam: float, iterations: int = 3) -> np.ndarray:
    n = T.size
    v = np.ones(n) / math.sqrt(n)
    shifted = T.diag - lam
    for _ in range(iterations):
        v = solve_tridiagonal(T.offdiag, shifted, T.offdiag, v)
        v /= np.linalg.norm(v)
    return v


def tridiag_eigen(T: SymmetricTridiagonal, want_vectors: bool = False, *, count: int | None = None):
    """Eigenvalues (ascending) of a real symmetric tridiagonal matrix.

    With ``count=None`` the full spectrum is computed by implicit-shift QL;
    with ``count=k`` only the k lowest eigenvalues are found by Sturm-sequence
    bisection, which is linear in the matrix size per probe.  Eigenvectors
    (columns) come from QL rotations or from inverse iteration respectively.
    """
    if count is None:
        vals, vecs = _ql_eigen(T, np.eye(T.size) if want_vectors else None)
        return (vals, vecs) if want_vectors else vals
    if not 1 <= count <= T.size:
        raise ValueError("count must lie in [1, size]")
    vals = _bisect_lowest(T, int(count))
    if not want_vectors:
        return vals
    vecs = np.column_stack([_inverse_iteration(T, lam) for lam in vals])
    return vals, vecs


# --------------------------------------------------------------------------
# Gauss-Laguerre quadrature


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss rule for the weight ``u**alpha_weight * exp(-u)`` on (0, inf).

    ``weights`` may overflow for ``alpha_weight`` beyond ~170; ``log_mu0`` and
    ``normalized_weights`` (which sum to one) stay finite for any index.
    """

    alpha_weight: float
    nodes: np.ndarray
    normalized_weights: np.ndarray
    log_mu0: float

    @property
    def mu0(self) -> float:
        return math.exp(self.log_mu0)

    @property
    def weights(self) -> np.ndarray:
        return self.normalized_weights * self.mu0

    @property
    def npoints(self) -> int:
        return len(self.nodes)

    def integrate(self, values) -> float:
        """Integral of ``u**alpha_weight * exp(-u) * f(u)`` given ``f`` at the nodes."""
        return self.mu0 * float(np.dot(self.normalized_weights, values))


_RULE_CACHE: dict[tuple[str, int], QuadratureRule] = {}
_RULE_LOCK = threading.Lock()


def _orthonormal_sweep(alpha, npoints, x):
    """Orthonormal Laguerre recurrence at ``x``: returns ``p_n``, ``p_n'`` and
    ``log(sum_{k<n} p_k**2)``, rescaled together to stay finite."""
    p_prev, p_cur = np.zeros_like(x), np.ones_like(x)
    q_prev, q_cur = np.zeros_like(x), np.zeros_like(x)
    total = np.zeros_like(x)
    log_shift = np.zeros_like(x)
    b_k = 0.0
    for k in range(npoints):
        total += p_cur**2
        b_next = math.sqrt((k + 1.0) * (k + 1.0 + alpha))
        d_k = 2.0 * k + alpha + 1.0
        p_next = ((x - d_k) * p_cur - b_k * p_prev) / b_next
        q_next = (p_cur + (x - d_k) * q_cur - b_k * q_prev) / b_next
        p_prev, p_cur, q_prev, q_cur, b_k = p_cur, p_next, q_cur, q_next, b_next
        big = np.maximum(np.abs(p_cur), np.abs(p_prev)) > 1e150
        if np.any(big):
            f = np.where(big, 1e-150, 1.0)
            p_prev, p_cur, q_prev, q_cur = p_prev * f, p_cur * f, q_prev * f, q_cur * f
            total = total * f * f
            log_shift = log_shift + np.where(big, 300.0 * math.log(10.0), 0.0)
    return p_cur, q_cur, np.log(total) + log_shift


def _jacobi_matrix(alpha: float, npoints: int) -> SymmetricTridiagonal:
    i = np.arange(npoints, dtype=float)
    return SymmetricTridiagonal(2.0 * i + alpha + 1.0, np.sqrt(i[1:] * (i[1:] + alpha)))


def golub_welsch_first_row(alpha_weight: float, npoints: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and normalized weights straight from the eigen-decomposition
    (squared first eigenvector components), without refinement."""
    first_row = np.zeros((1, npoints))
    first_row[0, 0] = 1.0
    nodes, z = _ql_eigen(_jacobi_matrix(float(alpha_weight), int(npoints)), first_row)
    nw = z[0] ** 2
    return nodes, nw / math.fsum(nw)


def _build_rule(alpha: float, npoints: int) -> QuadratureRule:
    nodes = _ql_eigen(_jacobi_matrix(alpha, npoints), None)[0]
    # Newton polish on p_n, then Christoffel numbers 1/sum p_k^2; the first
    # eigenvector components lose relative accuracy on the tiny tail weights
    for _ in range(2):
        p, dp, _ = _orthonormal_sweep(alpha, npoints, nodes)
        nodes = nodes - p / dp
    log_lam = -_orthonormal_sweep(alpha, npoints, nodes)[2]
    nw = np.exp(log_lam - log_lam.max())
    nw = nw / math.fsum(nw)
    return QuadratureRule(alpha, nodes, nw, float(log_gamma(alpha + 1.0)))


def gauss_laguerre(alpha_weight: float, npoints: int) -> QuadratureRule:
    """Gauss rule for ``u**alpha exp(-u)``.

    Nodes are Jacobi-matrix eigenvalues (Golub-Welsch), polished by Newton
    steps on the orthonormal recurrence.  Weights are the Christoffel numbers
    ``1/sum_k p_k(u_i)^2``, which equal the squared first eigenvector
    components but keep full relative accuracy in the tail.
    """
    alpha = float(alpha_weight)
    if not alpha > -1.0:
        raise ValueError(f"weight exponent must be > -1, got {alpha}")
    if int(npoints) != npoints or npoints < 1:
        raise ValueError("npoints must be a positive integer")
    key = (alpha.hex(), int(npoints))
    rule = _RULE_CACHE.get(key)
    if rule is None:
        rule = _build_rule(alpha, int(npoints))
        with _RULE_LOCK:
            rule = _RULE_CACHE.setdefault(key, rule)
    return rule
