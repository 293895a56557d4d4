"""Both ascent backends: eigensolver, objective and end-to-end agreement."""

import numpy as np
import pytest

from umeb import _ascent_py
from umeb._backend import BACKEND, get_kernel

from conftest import BACKENDS, random_unitary


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_jacobi_eigh_matches_numpy(backend, n, rng):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = a @ a.conj().T
    w, v = get_kernel(backend).jacobi_eigh(h)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(h), atol=1e-12)
    np.testing.assert_allclose(v @ np.diag(w) @ v.conj().T, h, atol=1e-12)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(n), atol=1e-12)


def test_jacobi_handles_degenerate_and_diagonal():
    kernel = get_kernel(BACKENDS[-1])
    w, v = kernel.jacobi_eigh(np.eye(4) / 4)
    np.testing.assert_allclose(w, [0.25] * 4)
    w, _ = kernel.jacobi_eigh(np.diag([3.0, 1.0, 2.0]).astype(complex))
    np.testing.assert_allclose(w, [1, 2, 3])


def test_objective_gradient_matches_finite_differences(rng):
    basis = rng.standard_normal((4, 3, 5)) + 1j * rng.standard_normal((4, 3, 5))
    basis = np.linalg.qr(basis.reshape(4, 15).T)[0].T.reshape(4, 3, 5)
    c = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    c /= np.linalg.norm(c)
    _, _, grad = _ascent_py.objective(basis, c)
    h = 1e-6
    for k in range(4):
        for direction in (1, 1j):
            e = np.zeros(4, dtype=complex)
            e[k] = direction
            up = c + h * e
            dn = c - h * e
            fd = (_ascent_py.objective(basis, up / np.linalg.norm(up), False)[0]
                  - _ascent_py.objective(basis, dn / np.linalg.norm(dn), False)[0]) / (2 * h)
            analytic = grad[k].real if direction == 1 else grad[k].imag
            assert analytic == pytest.approx(fd, abs=1e-5)


def _subspace_with_mes(rng, d, dp, k):
    u = random_unitary(rng, dp)[:d] / np.sqrt(d)
    cols = [u.reshape(-1)] + [rng.standard_normal(d * dp) + 1j * rng.standard_normal(d * dp) for _ in range(k - 1)]
    q, _ = np.linalg.qr(np.column_stack(cols))
    return q.T.reshape(k, d, dp)


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("d, dp, k", [(2, 2, 2), (3, 3, 4), (3, 5, 6), (4, 6, 8)])
def test_ascent_reaches_planted_mes(backend, d, dp, k, rng):
    basis = _subspace_with_mes(rng, d, dp, k)
    kernel = get_kernel(backend)
    best = 0.0
    for r in range(8):
        g = np.random.default_rng([0, r])
        c = kernel.ascend(basis, g.standard_normal(k) + 1j * g.standard_normal(k), 500)
        assert np.linalg.norm(c) == pytest.approx(1)
        best = max(best, np.linalg.svd(np.tensordot(c, basis, 1), compute_uv=False)[-1])
    assert best >= 1 / np.sqrt(d) - 1e-6


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernel not built")
def test_backends_agree(rng):
    basis = _subspace_with_mes(rng, 3, 4, 5)
    c0 = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    c_py = get_kernel("python").ascend(basis, c0, 500)
    c_cy = get_kernel("cython").ascend(basis, c0, 500)
    s_py = np.linalg.svd(np.tensordot(c_py, basis, 1), compute_uv=False)[-1]
    s_cy = np.linalg.svd(np.tensordot(c_cy, basis, 1), compute_uv=False)[-1]
    assert s_py == pytest.approx(s_cy, abs=1e-7)
    # first steps are identical up to rounding
    c1_py = get_kernel("python").ascend(basis, c0, 1)
    c1_cy = get_kernel("cython").ascend(basis, c0, 1)
    np.testing.assert_allclose(c1_py, c1_cy, atol=1e-10)


def test_zero_steps_returns_normalized_start():
    basis = np.eye(4, dtype=complex).reshape(4, 2, 2)
    c0 = np.array([1, 2, 0, 0], dtype=complex)
    for backend in BACKENDS:
        np.testing.assert_allclose(get_kernel(backend).ascend(basis, c0, 0), c0 / np.sqrt(5))


def test_default_backend_reported():
    assert BACKEND in ("python", "cython")
    with pytest.raises(ValueError):
        get_kernel("fortran")
