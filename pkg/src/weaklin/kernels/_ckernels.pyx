# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled integer-coded matrix kernels; same contract as ``_pykernels``."""
import numpy as np
from libc.stdint cimport int64_t

cdef enum:
    TNORM_MIN = 0


cdef inline int64_t _mul(int64_t x, int64_t y, int tnorm, int64_t top) nogil:
    cdef int64_t s
    if tnorm == TNORM_MIN:
        return x if x < y else y
    s = x + y - top
    return s if s > 0 else 0


cdef inline int64_t _imp(int64_t x, int64_t y, int tnorm, int64_t top) nogil:
    cdef int64_t s
    if tnorm == TNORM_MIN:
        return top if x <= y else y
    s = top - x + y
    return s if s < top else top


def compose(const int64_t[:, :] R, const int64_t[:, :] S, int tnorm, int64_t top):
    cdef Py_ssize_t n = R.shape[0], m = R.shape[1], p = S.shape[1]
    cdef Py_ssize_t a, b, c
    cdef int64_t best, v
    if S.shape[0] != m:
        raise ValueError("inner dimensions differ")
    out = np.empty((n, p), dtype=np.int64)
    cdef int64_t[:, ::1] o = out
    with nogil:
        for a in range(n):
            for c in range(p):
                best = 0
                for b in range(m):
                    v = _mul(R[a, b], S[b, c], tnorm, top)
                    if v > best:
                        best = v
                        if best == top:
                            break
                o[a, c] = best
    return out


def right_residual(const int64_t[:, :] Z, const int64_t[:, :] V, int tnorm, int64_t top):
    cdef Py_ssize_t n = Z.shape[0], p = Z.shape[1]
    cdef Py_ssize_t a, b, a2
    cdef int64_t worst, v
    if V.shape[0] != n or V.shape[1] != n:
        raise ValueError("V must be square on the rows of Z")
    out = np.empty((n, p), dtype=np.int64)
    cdef int64_t[:, ::1] o = out
    with nogil:
        for a in range(n):
            for b in range(p):
                worst = top
                for a2 in range(n):
                    v = _imp(V[a2, a], Z[a2, b], tnorm, top)
                    if v < worst:
                        worst = v
                        if worst == 0:
                            break
                o[a, b] = worst
    return out


def left_residual(const int64_t[:, :] Z, const int64_t[:, :] W, int tnorm, int64_t top):
    cdef Py_ssize_t n = Z.shape[0], p = Z.shape[1]
    cdef Py_ssize_t a, b, b2
    cdef int64_t worst, v
    if W.shape[0] != p or W.shape[1] != p:
        raise ValueError("W must be square on the columns of Z")
    out = np.empty((n, p), dtype=np.int64)
    cdef int64_t[:, ::1] o = out
    with nogil:
        for a in range(n):
            for b in range(p):
                worst = top
                for b2 in range(p):
                    v = _imp(W[b, b2], Z[a, b2], tnorm, top)
                    if v < worst:
                        worst = v
                        if worst == 0:
                            break
                o[a, b] = worst
    return out
