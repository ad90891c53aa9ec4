# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled shift-sweep kernel.

Smallest singular value of (z I - T) for an upper-triangular T across many
shifts z, by inverse Lanczos on ((zI-T)^H (zI-T))^{-1} with two triangular
solves per step.  O(n^2) per shift instead of the O(n^3) of a dense SVD,
which is what makes grid sweeps cheap after a single Schur reduction.

The extreme Ritz value is extracted from the Lanczos tridiagonal by Sturm
bisection each step; iteration stops after two consecutive relative stalls
below tol.  Shifts that hit a diagonal entry of T exactly return 0.
"""

import numpy as np

from libc.math cimport fabs, sqrt
from libc.stdlib cimport free, malloc


cdef double _tridiag_max_eig(const double* al, const double* be, int m) noexcept nogil:
    # Largest eigenvalue of the symmetric tridiagonal (al, be) by bisection
    # on the Sturm count; Gershgorin gives the initial bracket.
    cdef double lo, hi, mid, d, rad, width
    cdef int i, it, cnt
    lo = al[0]
    hi = al[0]
    for i in range(m):
        rad = 0.0
        if i > 0:
            rad += fabs(be[i - 1])
        if i < m - 1:
            rad += fabs(be[i])
        if al[i] - rad < lo:
            lo = al[i] - rad
        if al[i] + rad > hi:
            hi = al[i] + rad
    for it in range(96):
        width = hi - lo
        if width <= 1e-15 * (fabs(hi) + fabs(lo) + 1e-300):
            break
        mid = 0.5 * (lo + hi)
        cnt = 0
        d = 1.0
        for i in range(m):
            if i == 0:
                d = al[0] - mid
            else:
                if d == 0.0:
                    d = -1e-300
                d = (al[i] - mid) - be[i - 1] * be[i - 1] / d
            if d < 0.0:
                cnt += 1
        if cnt == m:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


cdef double _sigma_min_tri(const double complex* t, int n, double complex z,
                           const double complex* v0, double complex* q,
                           double complex* qp, double complex* w,
                           double* al, double* be, int maxit,
                           double tol) noexcept nogil:
    cdef int i, k, j, stall
    cdef double nrm2, nrm, bprev, theta, theta_prev, dmin2, m2, aj
    cdef double complex s, d

    # An exactly-zero diagonal entry of the triangular zI - T means singular.
    dmin2 = 1e300
    for i in range(n):
        d = z - t[i * n + i]
        m2 = d.real * d.real + d.imag * d.imag
        if m2 < dmin2:
            dmin2 = m2
    if dmin2 == 0.0:
        return 0.0

    nrm2 = 0.0
    for i in range(n):
        nrm2 += v0[i].real * v0[i].real + v0[i].imag * v0[i].imag
    nrm = sqrt(nrm2)
    for i in range(n):
        q[i] = v0[i] / nrm
        qp[i] = 0
    bprev = 0.0
    theta_prev = 0.0
    theta = 0.0
    stall = 0

    for j in range(maxit):
        # w <- M^{-H} q by a forward solve (M^H is lower triangular with
        # entries conj(M[k,i])), then w <- M^{-1} w by back substitution.
        for i in range(n):
            s = q[i]
            for k in range(i):
                s = s + t[k * n + i].conjugate() * w[k]
            w[i] = s / (z - t[i * n + i]).conjugate()
        for i in range(n - 1, -1, -1):
            s = w[i]
            for k in range(i + 1, n):
                s = s + t[i * n + k] * w[k]
            w[i] = s / (z - t[i * n + i])

        aj = 0.0
        for i in range(n):
            aj += (q[i].conjugate() * w[i]).real
        for i in range(n):
            w[i] = w[i] - aj * q[i] - bprev * qp[i]
        al[j] = aj
        theta = _tridiag_max_eig(al, be, j + 1)
        if j > 0:
            if theta - theta_prev <= tol * theta:
                stall += 1
                if stall >= 2:
                    theta_prev = theta
                    break
            else:
                stall = 0
        theta_prev = theta

        nrm2 = 0.0
        for i in range(n):
            nrm2 += w[i].real * w[i].real + w[i].imag * w[i].imag
        nrm = sqrt(nrm2)
        if nrm <= 1e-290:
            # Invariant subspace reached; the Ritz value is exact.
            break
        be[j] = nrm
        for i in range(n):
            qp[i] = q[i]
            q[i] = w[i] / nrm
        bprev = nrm

    theta = theta_prev
    if not (theta > 0.0):
        # Overflow or breakdown: the shift is numerically on the spectrum.
        return 0.0
    return 1.0 / sqrt(theta)


def sigma_min_sweep(const double complex[:, ::1] t, const double complex[::1] shifts,
                    const double complex[::1] v0, double tol=1e-13, int maxit=0):
    """sigma_min(z I - T) for each shift z; T upper triangular, C-contiguous."""
    cdef int n = t.shape[0]
    cdef Py_ssize_t m = shifts.shape[0]
    cdef Py_ssize_t kk
    if t.shape[1] != n:
        raise ValueError("T must be square")
    if v0.shape[0] != n:
        raise ValueError("start vector length must match T")
    if maxit <= 0:
        maxit = 2 * n + 40
    if maxit > 160:
        maxit = 160
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double complex* q = <double complex*> malloc(n * sizeof(double complex))
    cdef double complex* qp = <double complex*> malloc(n * sizeof(double complex))
    cdef double complex* w = <double complex*> malloc(n * sizeof(double complex))
    cdef double* al = <double*> malloc(maxit * sizeof(double))
    cdef double* be = <double*> malloc(maxit * sizeof(double))
    if q == NULL or qp == NULL or w == NULL or al == NULL or be == NULL:
        free(q); free(qp); free(w); free(al); free(be)
        raise MemoryError()
    cdef const double complex* tp = &t[0, 0]
    cdef const double complex* vp = &v0[0]
    try:
        with nogil:
            for kk in range(m):
                out[kk] = _sigma_min_tri(tp, n, shifts[kk], vp, q, qp, w,
                                         al, be, maxit, tol)
    finally:
        free(q); free(qp); free(w); free(al); free(be)
    return out_arr
