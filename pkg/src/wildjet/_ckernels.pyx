# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled truncated polynomial kernels over F_p."""
from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t


cdef int64_t* _load(seq, Py_ssize_t n) except NULL:
    cdef int64_t* buf = <int64_t*> malloc(max(n, 1) * sizeof(int64_t))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = seq[i]
    return buf


def mul_trunc(a, b, Py_ssize_t n, int64_t p):
    """First ``n`` coefficients of ``a * b`` reduced mod ``p``."""
    if n <= 0:
        return []
    cdef Py_ssize_t la = min(len(a), n), lb = min(len(b), n)
    cdef int64_t* x = _load(a, la)
    cdef int64_t* y = _load(b, lb)
    cdef int64_t* acc = <int64_t*> malloc(n * sizeof(int64_t))
    cdef Py_ssize_t i, j, top
    cdef int64_t xi
    try:
        for i in range(n):
            acc[i] = 0
        for i in range(la):
            xi = x[i]
            if xi == 0:
                continue
            top = min(lb, n - i)
            for j in range(top):
                acc[i + j] += xi * y[j]
        return [acc[i] % p for i in range(n)]
    finally:
        free(x)
        free(y)
        free(acc)


cdef int64_t _inv_mod(int64_t a, int64_t p):
    cdef int64_t t = 0, nt = 1, r = p, nr = a % p, q, tmp
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    return ((t % p) + p) % p


def inv_trunc(a, Py_ssize_t n, int64_t p):
    """First ``n`` coefficients of ``1/a``; requires ``a[0] % p != 0``."""
    if n <= 0:
        return []
    cdef Py_ssize_t la = min(len(a), n)
    cdef int64_t* x = _load(a, la)
    cdef int64_t* out = <int64_t*> malloc(n * sizeof(int64_t))
    cdef Py_ssize_t i, k, top
    cdef int64_t s, inv0
    try:
        if x[0] % p == 0:
            raise ZeroDivisionError("constant term is not invertible")
        inv0 = _inv_mod(x[0], p)
        out[0] = inv0
        for k in range(1, n):
            s = 0
            top = min(k, la - 1)
            for i in range(1, top + 1):
                s += x[i] * out[k - i]
            out[k] = ((p - s % p) % p) * inv0 % p
        return [out[i] for i in range(n)]
    finally:
        free(x)
        free(out)
