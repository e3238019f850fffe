# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled matrix kernels, the preferred backend.

Bit-for-bit mirror of ``backend_py``: identical operation sequence over
IEEE-754 doubles. Keep the two files in lockstep.
"""

from libc.math cimport sqrt
from libc.stdlib cimport free, malloc

NAME = "cython"

cdef double JACOBI_EPS = 1e-15
cdef int MAX_SWEEPS = 60


cdef double complex *_alloc(Py_ssize_t count) except NULL:
    cdef double complex *buf = <double complex *> malloc(count * sizeof(double complex))
    if buf == NULL:
        raise MemoryError()
    return buf


def matmul(int ar, int ac, a, int bc, b):
    """Product of row-major complex matrices (ar x ac) @ (ac x bc)."""
    cdef Py_ssize_t i, j, k, ia
    cdef double complex acc
    cdef double complex *ca = _alloc(ar * ac)
    cdef double complex *cb = NULL
    cdef double complex *co = NULL
    try:
        for i in range(ar * ac):
            ca[i] = a[i]
        cb = _alloc(ac * bc)
        for i in range(ac * bc):
            cb[i] = b[i]
        co = _alloc(ar * bc)
        for i in range(ar):
            ia = i * ac
            for j in range(bc):
                acc = 0
                for k in range(ac):
                    acc = acc + ca[ia + k] * cb[k * bc + j]
                co[i * bc + j] = acc
        return [co[i] for i in range(ar * bc)]
    finally:
        free(ca)
        free(cb)
        free(co)


def jacobi_hermitian(int n, a):
    """Cyclic Jacobi diagonalization of a Hermitian matrix.

    Returns ``(diag, v)``: unsorted real eigenvalues and the accumulated
    unitary as a row-major flat list (columns are eigenvectors). Ordering
    and phase conventions belong to the caller.
    """
    cdef Py_ssize_t i, j, p, q, ip, iq, pj, qj, sweep
    cdef double anorm, thresh, r, app, aqq, tau, t, c, w
    cdef double complex apq, s, sc, aip, aiq, vip, viq, apj, aqj
    cdef bint rotated
    cdef double complex *A = _alloc(n * n)
    cdef double complex *V = NULL
    try:
        for i in range(n * n):
            A[i] = a[i]
        V = _alloc(n * n)
        for i in range(n * n):
            V[i] = 0
        for i in range(n):
            V[i * n + i] = 1.0

        anorm = 0.0
        for i in range(n * n):
            anorm += A[i].real * A[i].real + A[i].imag * A[i].imag
        anorm = sqrt(anorm)
        if anorm == 0.0:
            return [0.0] * n, [V[i] for i in range(n * n)]

        thresh = JACOBI_EPS * anorm
        for sweep in range(MAX_SWEEPS):
            rotated = False
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = A[p * n + q]
                    r = sqrt(apq.real * apq.real + apq.imag * apq.imag)
                    if r <= thresh:
                        continue
                    rotated = True
                    app = A[p * n + p].real
                    aqq = A[q * n + q].real
                    tau = (aqq - app) / (2.0 * r)
                    if tau >= 0.0:
                        t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                    c = 1.0 / sqrt(1.0 + t * t)
                    w = t * c / r
                    s = apq * w
                    sc = s.conjugate()
                    for i in range(n):
                        ip = i * n + p
                        iq = i * n + q
                        aip = A[ip]
                        aiq = A[iq]
                        A[ip] = aip * c - aiq * sc
                        A[iq] = aip * s + aiq * c
                        vip = V[ip]
                        viq = V[iq]
                        V[ip] = vip * c - viq * sc
                        V[iq] = vip * s + viq * c
                    for j in range(n):
                        pj = p * n + j
                        qj = q * n + j
                        apj = A[pj]
                        aqj = A[qj]
                        A[pj] = apj * c - aqj * s
                        A[qj] = apj * sc + aqj * c
                    A[p * n + q] = 0
                    A[q * n + p] = 0
                    A[p * n + p] = A[p * n + p].real
                    A[q * n + q] = A[q * n + q].real
            if not rotated:
                break

        return [A[i * n + i].real for i in range(n)], [V[i] for i in range(n * n)]
    finally:
        free(A)
        free(V)
