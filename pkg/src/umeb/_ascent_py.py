"""Pure-numpy ascent kernel, used when the compiled ``_ascent`` is unavailable.

Both backends implement the same iteration. For coefficients ``c`` on the
unit sphere of C^K, ``M(c) = sum_k c_k B_k`` is a ``d x d'`` matrix and
``lam`` the eigenvalues of ``M M^H`` (squared singular values, summing to 1).
The ascent maximizes ``F(c) = sum log(max(lam, FLOOR))``, i.e. the log of the
product of squared singular values. With the trace fixed, that product peaks
exactly when all singular values equal ``1/sqrt(d)``, the same points where
the smallest singular value peaks, and it is smooth there.

Coefficients are handled as a real vector ``x`` in R^(2K) (real parts, then
imaginary parts) and the objective is ``F(x / |x|)``, which is invariant
under rescaling. ``x`` is renormalized after every step. Steps use BFGS with
Armijo backtracking; the inverse-Hessian estimate is reset whenever the
direction stops being an ascent direction. The iterate with the largest
smallest-singular-value estimate is returned.
"""

import numpy as np

FLOOR = 1e-12
ARMIJO = 1e-4
MAX_HALVINGS = 60
GRAD_TOL = 1e-24
STALL_TOL = 1e-15
MAX_STALLS = 3

BACKEND = "python"


def jacobi_eigh(h):
    """Eigen-decomposition of a small Hermitian matrix (ascending)."""
    return np.linalg.eigh(h)


def objective(basis, c, want_grad=True):
    """Log-product objective at unit coefficients ``c``.

    Returns ``(value, sigma_min_estimate, grad)`` where ``grad`` is the
    tangent-projected gradient in complex form (d/dRe + i d/dIm), or None.
    """
    m = np.tensordot(c, basis, axes=1)
    lam, v = np.linalg.eigh(m @ m.conj().T)
    keep = lam > FLOOR
    value = float(np.sum(np.log(np.where(keep, lam, FLOOR))))
    sigma_est = float(np.sqrt(max(lam[0], 0.0)))
    if not want_grad:
        return value, sigma_est, None
    weights = np.zeros_like(lam)
    weights[keep] = 1.0 / lam[keep]
    a = (v * weights) @ (v.conj().T @ m)
    grad = 2.0 * np.einsum("ij,kij->k", a.conj(), basis).conj()
    grad = grad - np.real(np.vdot(c, grad)) * c
    return value, sigma_est, grad


def _real_eval(basis, x, want_grad):
    k = basis.shape[0]
    nx = np.linalg.norm(x)
    value, sigma, grad = objective(basis, (x[:k] + 1j * x[k:]) / nx, want_grad)
    if grad is not None:
        grad = np.concatenate([grad.real, grad.imag]) / nx
    return value, sigma, grad


def ascend(basis, c0, steps):
    """Run one restart from ``c0``; returns the best unit coefficient vector.

    ``basis`` has shape ``(K, d, d')``; ``c0`` shape ``(K,)``.
    """
    basis = np.ascontiguousarray(basis, dtype=complex)
    k = basis.shape[0]
    n = 2 * k
    c0 = np.asarray(c0, dtype=complex)
    x = np.concatenate([c0.real, c0.imag])
    x /= np.linalg.norm(x)
    value, sigma, grad = _real_eval(basis, x, True)
    best_x, best_sigma = x.copy(), sigma
    hinv = np.eye(n)
    fresh = True
    stalls = 0
    for _ in range(steps):
        if grad @ grad < GRAD_TOL:
            break
        p = hinv @ grad
        slope = p @ grad
        if slope <= 0:
            hinv = np.eye(n)
            fresh = True
            p = grad.copy()
            slope = p @ grad
        t = 1.0
        for _ in range(MAX_HALVINGS):
            trial_value, _, _ = _real_eval(basis, x + t * p, False)
            if trial_value >= value + ARMIJO * t * slope:
                break
            t *= 0.5
        else:
            break
        x_new = x + t * p
        x_new /= np.linalg.norm(x_new)
        new_value, new_sigma, new_grad = _real_eval(basis, x_new, True)
        s = x_new - x
        y = grad - new_grad
        sy = s @ y
        if sy > 1e-12 * np.linalg.norm(s) * np.linalg.norm(y):
            if fresh:
                hinv = (sy / (y @ y)) * np.eye(n)
                fresh = False
            hy = hinv @ y
            hinv += ((sy + y @ hy) / sy**2) * np.outer(s, s) - (np.outer(hy, s) + np.outer(s, hy)) / sy
        stalls = stalls + 1 if abs(new_value - value) <= STALL_TOL * max(1.0, abs(value)) else 0
        x, value, grad = x_new, new_value, new_grad
        if new_sigma > best_sigma:
            best_x, best_sigma = x.copy(), new_sigma
        if stalls >= MAX_STALLS:
            break
    c = best_x[:k] + 1j * best_x[k:]
    return c / np.linalg.norm(c)
