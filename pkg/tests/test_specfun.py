import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special

from semiconfined.specfun import (
    SymmetricTridiagonal,
    gauss_laguerre,
    golub_welsch_first_row,
    hermite,
    laguerre,
    laguerre_derivative,
    laguerre_table,
    log_gamma,
    pochhammer_log,
    solve_tridiagonal,
    tridiag_eigen,
)

alphas = st.floats(-0.9, 60.0)


def test_laguerre_examples():
    assert laguerre(0, 3.7, 11.0) == 1.0
    assert laguerre(1, 2.0, 1.0) == pytest.approx(2.0)
    assert laguerre(2, 0.0, 2.0) == pytest.approx(-1.0)
    with pytest.raises(ValueError):
        laguerre(1, -1.0, 0.3)


def test_laguerre_derivative_examples():
    assert laguerre_derivative(0, 2.0, 5.0) == 0.0
    assert laguerre_derivative(1, 2.0, 1.0) == pytest.approx(-1.0)
    # -L_1^(1)(2) = -(2 - 2) = 0, confirmed by central differences
    h = 1e-5
    fd = (laguerre(2, 0.0, 2.0 + h) - laguerre(2, 0.0, 2.0 - h)) / (2 * h)
    assert laguerre_derivative(2, 0.0, 2.0) == pytest.approx(0.0, abs=1e-14)
    assert fd == pytest.approx(0.0, abs=1e-9)


@given(st.integers(0, 10), st.floats(-0.5, 20.0))
def test_laguerre_derivative_against_richardson_differences(n, alpha):
    x = np.linspace(0.1, 3.0 * (n + alpha + 2.0), 20)
    h = 1e-6 * max(1.0, x.max() / 10)

    def central(step):
        return (laguerre(n, alpha, x + step) - laguerre(n, alpha, x - step)) / (2 * step)

    fd = (4 * central(h / 2) - central(h)) / 3
    scale = max(1.0, np.max(np.abs(laguerre(n, alpha, x))))
    assert np.max(np.abs(laguerre_derivative(n, alpha, x) - fd)) < 1e-7 * scale


@given(st.integers(0, 25), alphas)
def test_laguerre_matches_scipy(n, alpha):
    x = np.linspace(0.0, 4.0 * (n + alpha + 2.0), 17)
    ref = special.eval_genlaguerre(n, alpha, x)
    scale = np.maximum(1.0, np.abs(ref))
    assert np.max(np.abs(laguerre(n, alpha, x) - ref) / scale) < 1e-10


def test_laguerre_table_rows():
    x = np.array([0.3, 1.7])
    table = laguerre_table(4, 1.5, x)
    for n in range(5):
        np.testing.assert_allclose(table[n], special.eval_genlaguerre(n, 1.5, x), rtol=1e-13)


def test_hermite_examples_and_oracle():
    assert hermite(0, 9.0) == 1.0
    assert hermite(2, 1.0) == pytest.approx(2.0)
    assert hermite(3, 0.0) == 0.0
    x = np.linspace(-3, 3, 13)
    for n in range(12):
        np.testing.assert_allclose(hermite(n, x), special.eval_hermite(n, x), rtol=1e-12, atol=1e-9)


def test_log_gamma_examples():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
    assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)
    assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)
    with pytest.raises(ValueError):
        log_gamma(0.0)


@given(st.floats(1e-6, 1e6))
def test_log_gamma_matches_lgamma(x):
    ref = math.lgamma(x)
    assert abs(log_gamma(x) - ref) <= 1e-13 * max(1.0, abs(ref))


def test_pochhammer_examples():
    assert pochhammer_log(3.7, 0) == 0.0
    assert pochhammer_log(3.0, 2) == pytest.approx(math.log(12.0))
    assert pochhammer_log(0.5, 3) == pytest.approx(math.log(1.875))
    assert pochhammer_log(2.5, 200) == pytest.approx(math.lgamma(202.5) - math.lgamma(2.5), rel=1e-13)
    with pytest.raises(ValueError):
        pochhammer_log(0.0, 2)


@pytest.mark.parametrize("n", [0, 5, 20])
@pytest.mark.parametrize("alpha", [0.5, 2.0, 8.0, 50.0])
def test_gamma_sum_identity(n, alpha):
    lhs = math.fsum(math.exp(log_gamma(k + alpha) - log_gamma(k + 1.0) - log_gamma(n + alpha + 1.0) + log_gamma(n + 1.0))
                    for k in range(n + 1))
    assert lhs == pytest.approx(1.0 / alpha, rel=1e-12)


def test_quadrature_examples():
    r = gauss_laguerre(0.0, 1)
    assert r.nodes[0] == pytest.approx(1.0) and r.weights[0] == pytest.approx(1.0)
    r = gauss_laguerre(2.0, 1)
    assert r.nodes[0] == pytest.approx(3.0) and r.weights[0] == pytest.approx(2.0)
    r = gauss_laguerre(2.0, 8)
    assert r.integrate(r.nodes**5) == pytest.approx(5040.0, rel=1e-12)
    with pytest.raises(ValueError):
        gauss_laguerre(-1.0, 4)
    with pytest.raises(ValueError):
        gauss_laguerre(1.0, 0)


@given(st.floats(-0.9, 40.0), st.integers(1, 30))
def test_quadrature_moments_exact(alpha, npoints):
    r = gauss_laguerre(alpha, npoints)
    assert np.all(r.nodes > 0) and np.all(np.diff(r.nodes) > 0)
    assert math.fsum(r.weights) == pytest.approx(math.gamma(alpha + 1.0), rel=1e-12)
    for k in range(2 * npoints):
        exact = math.exp(math.lgamma(alpha + k + 1.0) - math.lgamma(alpha + 1.0))
        assert math.fsum(r.normalized_weights * r.nodes**k) == pytest.approx(exact, rel=1e-11)


@pytest.mark.parametrize("alpha,npoints", [(0.0, 10), (2.0, 40), (50.0, 80), (-0.5, 30)])
def test_quadrature_matches_scipy_and_first_row(alpha, npoints):
    r = gauss_laguerre(alpha, npoints)
    x, w = special.roots_genlaguerre(npoints, alpha)
    np.testing.assert_allclose(r.nodes, x, rtol=1e-13)
    np.testing.assert_allclose(r.normalized_weights, w / w.sum(), rtol=1e-11)
    # eigenvector route: same nodes, weights agree where they are not tiny
    nodes, nw = golub_welsch_first_row(alpha, npoints)
    np.testing.assert_allclose(nodes, r.nodes, rtol=1e-12)
    assert np.max(np.abs(nw - r.normalized_weights)) < 1e-14


@pytest.mark.parametrize("alpha", [2.0, 8.0, 50.0])
def test_quadrature_orthogonality(alpha):
    N = 21
    r = gauss_laguerre(alpha, N)
    table = laguerre_table(N - 1, alpha, r.nodes)
    gram = (table * r.normalized_weights) @ table.T
    norms = np.exp([math.lgamma(n + alpha + 1) - math.lgamma(n + 1) - math.lgamma(alpha + 1) for n in range(N)])
    assert np.max(np.abs(gram / np.sqrt(np.outer(norms, norms)) - np.eye(N))) < 1e-10


def test_quadrature_cache_returns_same_rule():
    assert gauss_laguerre(3.25, 12) is gauss_laguerre(3.25, 12)


def test_tridiag_examples():
    np.testing.assert_allclose(tridiag_eigen(SymmetricTridiagonal([2.0, 2.0], [0.0])), [2.0, 2.0])
    np.testing.assert_allclose(tridiag_eigen(SymmetricTridiagonal([0.0, 0.0], [1.0])), [-1.0, 1.0], atol=1e-15)
    np.testing.assert_allclose(tridiag_eigen(SymmetricTridiagonal([1.0, 2.0, 3.0], [0.0, 0.0])), [1.0, 2.0, 3.0])


@given(st.integers(1, 40), st.integers(0, 2**31 - 1))
def test_tridiag_against_numpy(n, seed):
    rng = np.random.default_rng(seed)
    T = SymmetricTridiagonal(rng.normal(size=n), rng.normal(size=n - 1))
    vals, vecs = tridiag_eigen(T, want_vectors=True)
    ref = np.linalg.eigvalsh(T.dense())
    np.testing.assert_allclose(vals, ref, atol=1e-12 * max(1.0, np.abs(ref).max()))
    np.testing.assert_allclose(vecs.T @ vecs, np.eye(n), atol=1e-12)
    np.testing.assert_allclose(T.dense() @ vecs, vecs * vals, atol=1e-11)
    k = max(1, n // 3)
    low = tridiag_eigen(T, count=k)
    np.testing.assert_allclose(low, ref[:k], atol=1e-12 * max(1.0, np.abs(ref).max()))


def test_bisection_vectors():
    n = 200
    i = np.arange(n)
    T = SymmetricTridiagonal(2.0 + 0.01 * i, -np.ones(n - 1))
    vals, vecs = tridiag_eigen(T, want_vectors=True, count=3)
    for j in range(3):
        assert np.linalg.norm(T.matvec(vecs[:, j]) - vals[j] * vecs[:, j]) < 1e-10


@given(st.integers(1, 30), st.integers(0, 2**31 - 1))
def test_solve_tridiagonal_against_dense(n, seed):
    rng = np.random.default_rng(seed)
    lo, di, up, b = rng.normal(size=n - 1), rng.normal(size=n), rng.normal(size=n - 1), rng.normal(size=n)
    A = np.diag(di) + np.diag(up, 1) + np.diag(lo, -1)
    if abs(np.linalg.det(A)) < 1e-6:
        return
    x = solve_tridiagonal(lo, di, up, b)
    assert np.linalg.norm(A @ x - b) < 1e-8 * (1 + np.linalg.norm(b)) * np.linalg.cond(A)


def test_tridiagonal_rejects_shape_mismatch():
    with pytest.raises(ValueError):
        SymmetricTridiagonal([1.0, 2.0], [1.0, 2.0])
