# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled box-enumeration kernels.

Same contracts as ``_kernels_py``.  All arithmetic is on C ``long long``;
``stratamon.kernels`` only dispatches here when it has checked that no
intermediate value can overflow.
"""
from libc.stdlib cimport malloc, free


def congruence_members(coeffs, moduli, bounds):
    cdef Py_ssize_t n = len(bounds)
    cdef Py_ssize_t r = len(moduli)
    cdef Py_ssize_t i, j, k
    cdef long long s, d
    cdef bint ok
    cdef long long *A = <long long *> malloc(max(r * n, 1) * sizeof(long long))
    cdef long long *D = <long long *> malloc(max(r, 1) * sizeof(long long))
    cdef long long *B = <long long *> malloc(max(n, 1) * sizeof(long long))
    cdef long long *X = <long long *> malloc(max(n, 1) * sizeof(long long))
    # running row sums, updated incrementally as the odometer advances
    cdef long long *S = <long long *> malloc(max(r, 1) * sizeof(long long))
    out = []
    if n == 0:
        free(A); free(D); free(B); free(X); free(S)
        return [()]
    try:
        for i in range(r):
            D[i] = moduli[i]
            S[i] = 0
            for j in range(n):
                A[i * n + j] = coeffs[i][j]
        for j in range(n):
            B[j] = bounds[j]
            X[j] = 0
            if B[j] < 0:
                return out
        while True:
            ok = True
            for i in range(r):
                s = S[i]
                d = D[i]
                if d != 0:
                    s = s % d
                    if s < 0:
                        s += d
                if s != 0:
                    ok = False
                    break
            if ok:
                out.append(tuple([X[j] for j in range(n)]))
            # odometer: last coordinate fastest (matches itertools.product)
            k = n - 1
            while k >= 0:
                if X[k] < B[k]:
                    X[k] += 1
                    for i in range(r):
                        S[i] += A[i * n + k]
                    break
                for i in range(r):
                    S[i] -= A[i * n + k] * X[k]
                X[k] = 0
                k -= 1
            if k < 0:
                break
        return out
    finally:
        free(A); free(D); free(B); free(X); free(S)


cdef long long *_pack(points, Py_ssize_t n):
    cdef Py_ssize_t m = len(points)
    cdef Py_ssize_t i, j
    cdef long long *P = <long long *> malloc(max(m * n, 1) * sizeof(long long))
    for i in range(m):
        p = points[i]
        for j in range(n):
            P[i * n + j] = p[j]
    return P


def minimal_nonzero(points):
    cdef Py_ssize_t m = len(points)
    if m == 0:
        return []
    cdef Py_ssize_t n = len(points[0])
    cdef long long *P = _pack(points, n)
    cdef Py_ssize_t *kept = <Py_ssize_t *> malloc(m * sizeof(Py_ssize_t))
    cdef Py_ssize_t nk = 0
    cdef Py_ssize_t i, j, t, a
    cdef bint zero, below
    try:
        for i in range(m):
            zero = True
            for j in range(n):
                if P[i * n + j] != 0:
                    zero = False
                    break
            if zero:
                continue
            below = False
            for t in range(nk):
                a = kept[t]
                below = True
                for j in range(n):
                    if P[a * n + j] > P[i * n + j]:
                        below = False
                        break
                if below:
                    break
            if not below:
                kept[nk] = i
                nk += 1
        return [points[kept[t]] for t in range(nk)]
    finally:
        free(P)
        free(kept)


def not_dominating(points, base):
    cdef Py_ssize_t m = len(points)
    cdef Py_ssize_t q = len(base)
    if m == 0:
        return []
    if q == 0:
        return list(points)
    cdef Py_ssize_t n = len(points[0])
    cdef long long *P = _pack(points, n)
    cdef long long *Q = _pack(base, n)
    cdef Py_ssize_t i, j, t
    cdef bint below
    out = []
    try:
        for i in range(m):
            below = False
            for t in range(q):
                below = True
                for j in range(n):
                    if Q[t * n + j] > P[i * n + j]:
                        below = False
                        break
                if below:
                    break
            if not below:
                out.append(points[i])
        return out
    finally:
        free(P)
        free(Q)
