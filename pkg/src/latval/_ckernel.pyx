# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice point kernel.

Same row format as ``_pykernel``.  All arithmetic is int64; the dispatcher in
``_kernels`` only calls in here after bounding every intermediate value well
below 2**62.
"""
import numpy as np
cimport numpy as cnp

from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef inline i64 floordiv(i64 a, i64 b) nogil:
    cdef i64 q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline i64 ceildiv(i64 a, i64 b) nogil:
    return -floordiv(-a, b)


cdef int _fiber(const i64[:, ::1] rows, const i64[::1] starts, int j, int n,
                i64* x, i64* lo_out, i64* hi_out) noexcept nogil:
    cdef i64 lo = 0, hi = 0, rem, a, t
    cdef int have_lo = 0, have_hi = 0
    cdef Py_ssize_t r, i
    for r in range(starts[j], starts[j + 1]):
        rem = rows[r, n]
        for i in range(j):
            rem -= rows[r, i] * x[i]
        a = rows[r, j]
        if a > 0:
            t = floordiv(rem, a)
            if not have_hi or t < hi:
                hi = t
                have_hi = 1
        elif a < 0:
            t = ceildiv(rem, a)
            if not have_lo or t > lo:
                lo = t
                have_lo = 1
    if not (have_lo and have_hi):
        return -1
    lo_out[0] = lo
    hi_out[0] = hi
    return 0


cdef int _rec(const i64[:, ::1] rows, const i64[::1] starts, int j, int n,
              i64* x, i64* cnt, i64* mom) noexcept nogil:
    cdef i64 lo, hi, c, t
    cdef int i
    if _fiber(rows, starts, j, n, x, &lo, &hi) != 0:
        return -1
    if lo > hi:
        return 0
    if j == n - 1:
        c = hi - lo + 1
        cnt[0] += c
        for i in range(j):
            mom[i] += x[i] * c
        mom[j] += ((lo + hi) * c) / 2
        return 0
    t = lo
    while t <= hi:
        x[j] = t
        if _rec(rows, starts, j + 1, n, x, cnt, mom) != 0:
            return -1
        t += 1
    return 0


def count_moment(rows, starts, int n):
    """Number of lattice points and their coordinate sum (int64 arithmetic)."""
    cdef cnp.ndarray[i64, ndim=2, mode="c"] R = np.ascontiguousarray(rows, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1, mode="c"] S = np.ascontiguousarray(starts, dtype=np.int64)
    cdef const i64[:, ::1] rv = R
    cdef const i64[::1] sv = S
    cdef i64* x = <i64*> malloc(n * sizeof(i64))
    cdef i64* mom = <i64*> malloc(n * sizeof(i64))
    cdef i64 cnt = 0
    cdef int i, status
    if x == NULL or mom == NULL:
        free(x)
        free(mom)
        raise MemoryError()
    for i in range(n):
        x[i] = 0
        mom[i] = 0
    with nogil:
        status = _rec(rv, sv, 0, n, x, &cnt, mom)
    result = [int(mom[i]) for i in range(n)]
    free(x)
    free(mom)
    if status != 0:
        raise ValueError("a fiber level is unbounded")
    return int(cnt), result
