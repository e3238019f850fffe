"""Pure-Python matrix kernels, the fallback backend.

Mirrors ``backend_cy`` operation for operation: both backends perform the
same IEEE-754 double operations in the same order, so their results agree
bit for bit. Any change here must be replicated in the .pyx file.
"""

from __future__ import annotations

from math import sqrt

NAME = "python"

_JACOBI_EPS = 1e-15
_MAX_SWEEPS = 60


def matmul(ar: int, ac: int, a, bc: int, b):
    """Product of row-major complex matrices (ar x ac) @ (ac x bc)."""
    out = [0j] * (ar * bc)
    for i in range(ar):
        ia = i * ac
        for j in range(bc):
            acc = 0j
            for k in range(ac):
                acc += a[ia + k] * b[k * bc + j]
            out[i * bc + j] = acc
    return out


def jacobi_hermitian(n: int, a):
    """Cyclic Jacobi diagonalization of a Hermitian matrix.

    Returns ``(diag, v)``: unsorted real eigenvalues and the accumulated
    unitary as a row-major flat list (columns are eigenvectors). Ordering
    and phase conventions belong to the caller.
    """
    A = [complex(x) for x in a]
    V = [0j] * (n * n)
    for i in range(n):
        V[i * n + i] = 1.0 + 0j

    anorm = 0.0
    for x in A:
        anorm += x.real * x.real + x.imag * x.imag
    anorm = sqrt(anorm)
    if anorm == 0.0:
        return [0.0] * n, V

    thresh = _JACOBI_EPS * anorm
    for _ in range(_MAX_SWEEPS):
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
                s = apq * (t * c / r)
                sc = s.conjugate()
                # Right-multiply columns p, q of A and V by the rotation.
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
                # Left-multiply rows p, q of A by the adjoint rotation.
                for j in range(n):
                    pj = p * n + j
                    qj = q * n + j
                    apj = A[pj]
                    aqj = A[qj]
                    A[pj] = apj * c - aqj * s
                    A[qj] = apj * sc + aqj * c
                # The pivot is zero analytically; pin it to keep A Hermitian.
                A[p * n + q] = 0j
                A[q * n + p] = 0j
                A[p * n + p] = complex(A[p * n + p].real, 0.0)
                A[q * n + q] = complex(A[q * n + q].real, 0.0)
        if not rotated:
            break

    return [A[i * n + i].real for i in range(n)], V
