# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled ascent kernel; same iteration as ``umeb._ascent_py``.

The per-step work (forming ``M M^H``, a cyclic Jacobi eigensolve, the
gradient and the dense BFGS update) runs without the GIL on preallocated
buffers, so restarts can be spread over threads.
"""

import numpy as np

from libc.math cimport fabs, log, sqrt

cdef double FLOOR = 1e-12
cdef double ARMIJO = 1e-4
cdef int MAX_HALVINGS = 60
cdef double GRAD_TOL = 1e-24
cdef double STALL_TOL = 1e-15
cdef int MAX_STALLS = 3
cdef int JACOBI_SWEEPS = 60

BACKEND = "cython"


cdef inline double cabs2(double complex z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline double complex conj(double complex z) noexcept nogil:
    return z.real - 1j * z.imag


cdef void _jacobi(double complex[:, ::1] h, double complex[:, ::1] v,
                  double[::1] w, int n) noexcept nogil:
    """Diagonalize Hermitian ``h`` in place; eigenvalues ascending in ``w``.

    Columns of ``v`` are the matching eigenvectors.
    """
    cdef int p, q, k, sweep, imin
    cdef double off, scale, a, b, ah, tau, t, c, s, tmp
    cdef double complex e, g00, g01, g10, g11, x, y
    for p in range(n):
        for q in range(n):
            v[p, q] = 1.0 if p == q else 0.0
    for sweep in range(JACOBI_SWEEPS):
        off = 0.0
        scale = 0.0
        for p in range(n):
            scale += h[p, p].real * h[p, p].real
            for q in range(p + 1, n):
                off += cabs2(h[p, q])
        if off <= 1e-34 * scale or off == 0.0:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                ah = sqrt(cabs2(h[p, q]))
                if ah == 0.0:
                    continue
                e = h[p, q] / ah
                a = h[p, p].real
                b = h[q, q].real
                tau = (b - a) / (2.0 * ah)
                if tau >= 0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                # G = diag(1, conj(e)) [[c, s], [-s, c]]
                g00 = c
                g01 = s
                g10 = -s * conj(e)
                g11 = c * conj(e)
                for k in range(n):
                    x = h[k, p]
                    y = h[k, q]
                    h[k, p] = x * g00 + y * g10
                    h[k, q] = x * g01 + y * g11
                for k in range(n):
                    x = h[p, k]
                    y = h[q, k]
                    h[p, k] = conj(g00) * x + conj(g10) * y
                    h[q, k] = conj(g01) * x + conj(g11) * y
                h[p, q] = 0.0
                h[q, p] = 0.0
                h[p, p] = h[p, p].real
                h[q, q] = h[q, q].real
                for k in range(n):
                    x = v[k, p]
                    y = v[k, q]
                    v[k, p] = x * g00 + y * g10
                    v[k, q] = x * g01 + y * g11
    for p in range(n):
        w[p] = h[p, p].real
    # selection sort, carrying eigenvectors along
    for p in range(n - 1):
        imin = p
        for q in range(p + 1, n):
            if w[q] < w[imin]:
                imin = q
        if imin != p:
            tmp = w[p]
            w[p] = w[imin]
            w[imin] = tmp
            for k in range(n):
                x = v[k, p]
                v[k, p] = v[k, imin]
                v[k, imin] = x


def jacobi_eigh(h_in):
    """Eigen-decomposition of a small Hermitian matrix (ascending)."""
    cdef double complex[:, ::1] h = np.array(h_in, dtype=complex, order="C")
    cdef int n = h.shape[0]
    v = np.empty((n, n), dtype=complex)
    w = np.empty(n, dtype=float)
    cdef double complex[:, ::1] vv = v
    cdef double[::1] ww = w
    with nogil:
        _jacobi(h, vv, ww, n)
    return w, v


cdef class _Workspace:
    cdef int K, d, dp, n
    cdef const double complex[:, :, ::1] basis
    cdef double complex[::1] c
    cdef double complex[:, ::1] m, h, v, a, vhm
    cdef double[::1] lam, weights

    def __init__(self, basis):
        self.basis = basis
        self.K = basis.shape[0]
        self.d = basis.shape[1]
        self.dp = basis.shape[2]
        self.n = 2 * self.K
        self.c = np.empty(self.K, dtype=complex)
        self.m = np.empty((self.d, self.dp), dtype=complex)
        self.h = np.empty((self.d, self.d), dtype=complex)
        self.v = np.empty((self.d, self.d), dtype=complex)
        self.a = np.empty((self.d, self.dp), dtype=complex)
        self.vhm = np.empty((self.d, self.dp), dtype=complex)
        self.lam = np.empty(self.d, dtype=float)
        self.weights = np.empty(self.d, dtype=float)

    cdef double evaluate(self, double[::1] x, bint want_grad, double[::1] grad,
                         double* sigma) noexcept nogil:
        """Objective at ``x / |x|``; fills the real gradient when asked."""
        cdef int K = self.K, d = self.d, dp = self.dp
        cdef int i, j, k, l
        cdef double nx = 0.0, value = 0.0, proj
        cdef double complex acc, gk
        for k in range(2 * K):
            nx += x[k] * x[k]
        nx = sqrt(nx)
        for k in range(K):
            self.c[k] = (x[k] + 1j * x[K + k]) / nx
        for i in range(d):
            for j in range(dp):
                acc = 0.0
                for k in range(K):
                    acc = acc + self.c[k] * self.basis[k, i, j]
                self.m[i, j] = acc
        for i in range(d):
            for l in range(i, d):
                acc = 0.0
                for j in range(dp):
                    acc = acc + self.m[i, j] * conj(self.m[l, j])
                self.h[i, l] = acc
                self.h[l, i] = conj(acc)
        _jacobi(self.h, self.v, self.lam, d)
        for i in range(d):
            if self.lam[i] > FLOOR:
                value += log(self.lam[i])
                self.weights[i] = 1.0 / self.lam[i]
            else:
                value += log(FLOOR)
                self.weights[i] = 0.0
        sigma[0] = sqrt(self.lam[0]) if self.lam[0] > 0 else 0.0
        if not want_grad:
            return value
        # a = V diag(weights) V^H m
        for l in range(d):
            for j in range(dp):
                acc = 0.0
                for k in range(d):
                    acc = acc + conj(self.v[k, l]) * self.m[k, j]
                self.vhm[l, j] = self.weights[l] * acc
        for i in range(d):
            for j in range(dp):
                acc = 0.0
                for l in range(d):
                    acc = acc + self.v[i, l] * self.vhm[l, j]
                self.a[i, j] = acc
        proj = 0.0
        for k in range(K):
            acc = 0.0
            for i in range(d):
                for j in range(dp):
                    acc = acc + self.a[i, j] * conj(self.basis[k, i, j])
            # complex gradient 2*conj(<a, B_k>) = 2*sum a * conj(B_k)
            gk = 2.0 * acc
            grad[k] = gk.real
            grad[K + k] = gk.imag
            proj += self.c[k].real * gk.real + self.c[k].imag * gk.imag
        for k in range(K):
            grad[k] = (grad[k] - proj * self.c[k].real) / nx
            grad[K + k] = (grad[K + k] - proj * self.c[k].imag) / nx
        return value


cdef inline double dot(double[::1] a, double[::1] b, int n) noexcept nogil:
    cdef int i
    cdef double acc = 0.0
    for i in range(n):
        acc += a[i] * b[i]
    return acc


cdef void _run(_Workspace ws, double[::1] x, int steps, double[::1] best_x,
               double[:, ::1] hinv, double[::1] grad, double[::1] new_grad,
               double[::1] p, double[::1] trial, double[::1] s, double[::1] y,
               double[::1] hy) noexcept nogil:
    cdef int n = ws.n
    cdef int i, j, it, halving, stalls = 0
    cdef bint fresh = True, accepted
    cdef double value, new_value, trial_value, sigma, best_sigma, slope, t
    cdef double nrm, sy, yy, yhy, ns, ny, coef, dummy
    nrm = sqrt(dot(x, x, n))
    for i in range(n):
        x[i] /= nrm
    value = ws.evaluate(x, True, grad, &sigma)
    best_sigma = sigma
    for i in range(n):
        best_x[i] = x[i]
        for j in range(n):
            hinv[i, j] = 1.0 if i == j else 0.0
    for it in range(steps):
        if dot(grad, grad, n) < GRAD_TOL:
            break
        for i in range(n):
            p[i] = 0.0
            for j in range(n):
                p[i] += hinv[i, j] * grad[j]
        slope = dot(p, grad, n)
        if slope <= 0:
            fresh = True
            for i in range(n):
                p[i] = grad[i]
                for j in range(n):
                    hinv[i, j] = 1.0 if i == j else 0.0
            slope = dot(p, grad, n)
        t = 1.0
        accepted = False
        for halving in range(MAX_HALVINGS):
            for i in range(n):
                trial[i] = x[i] + t * p[i]
            trial_value = ws.evaluate(trial, False, new_grad, &dummy)
            if trial_value >= value + ARMIJO * t * slope:
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break
        nrm = sqrt(dot(trial, trial, n))
        for i in range(n):
            trial[i] /= nrm
        new_value = ws.evaluate(trial, True, new_grad, &sigma)
        for i in range(n):
            s[i] = trial[i] - x[i]
            y[i] = grad[i] - new_grad[i]
        sy = dot(s, y, n)
        ns = sqrt(dot(s, s, n))
        ny = sqrt(dot(y, y, n))
        if sy > 1e-12 * ns * ny:
            if fresh:
                yy = dot(y, y, n)
                for i in range(n):
                    for j in range(n):
                        hinv[i, j] = (sy / yy) if i == j else 0.0
                fresh = False
            for i in range(n):
                hy[i] = 0.0
                for j in range(n):
                    hy[i] += hinv[i, j] * y[j]
            yhy = dot(y, hy, n)
            coef = (sy + yhy) / (sy * sy)
            for i in range(n):
                for j in range(n):
                    hinv[i, j] += coef * s[i] * s[j] - (hy[i] * s[j] + s[i] * hy[j]) / sy
        if fabs(new_value - value) <= STALL_TOL * (fabs(value) if fabs(value) > 1.0 else 1.0):
            stalls += 1
        else:
            stalls = 0
        for i in range(n):
            x[i] = trial[i]
            grad[i] = new_grad[i]
        value = new_value
        if sigma > best_sigma:
            best_sigma = sigma
            for i in range(n):
                best_x[i] = x[i]
        if stalls >= MAX_STALLS:
            break


def ascend(basis, c0, int steps):
    """Run one restart from ``c0``; returns the best unit coefficient vector.

    ``basis`` has shape ``(K, d, d')``; ``c0`` shape ``(K,)``.
    """
    basis = np.ascontiguousarray(basis, dtype=complex)
    c0 = np.asarray(c0, dtype=complex)
    cdef _Workspace ws = _Workspace(basis)
    cdef int n = ws.n
    x = np.concatenate([c0.real, c0.imag]).astype(float)
    best_x = np.empty(n)
    bufs = [np.empty(n) for _ in range(7)]
    hinv = np.empty((n, n))
    cdef double[::1] xv = x, bx = best_x
    cdef double[:, ::1] hv = hinv
    cdef double[::1] b0 = bufs[0], b1 = bufs[1], b2 = bufs[2], b3 = bufs[3]
    cdef double[::1] b4 = bufs[4], b5 = bufs[5], b6 = bufs[6]
    with nogil:
        _run(ws, xv, steps, bx, hv, b0, b1, b2, b3, b4, b5, b6)
    k = ws.K
    c = best_x[:k] + 1j * best_x[k:]
    return c / np.linalg.norm(c)
