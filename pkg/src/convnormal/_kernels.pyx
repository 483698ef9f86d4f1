# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled integer kernels for lattice-point work.

Inputs are int64 and the caller guarantees that no intermediate value can
overflow; ``convnormal.kernels`` routes anything larger to the Python fallback.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t
from libcpp.vector cimport vector

cnp.import_array()


cdef inline int64_t _floordiv(int64_t a, int64_t b) nogil:
    cdef int64_t q = a // b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline int64_t _ceildiv(int64_t a, int64_t b) nogil:
    return -_floordiv(-a, b)


def box_points(const int64_t[:, ::1] A, const int64_t[::1] b,
               const int64_t[::1] lo, const int64_t[::1] hi):
    """All z in Z^d with lo <= z <= hi and A z <= b, in lexicographic order."""
    cdef Py_ssize_t m = A.shape[0], d = A.shape[1]
    cdef Py_ssize_t i, j, last = d - 1
    cdef vector[int64_t] out
    cdef vector[int64_t] z
    cdef int64_t s, a, l, h, t
    cdef bint feasible
    z.resize(d)
    for j in range(d):
        if lo[j] > hi[j]:
            return np.empty((0, d), dtype=np.int64)
        z[j] = lo[j]
    with nogil:
        while True:
            l = lo[last]
            h = hi[last]
            feasible = True
            for i in range(m):
                s = b[i]
                for j in range(last):
                    s -= A[i, j] * z[j]
                a = A[i, last]
                if a > 0:
                    t = _floordiv(s, a)
                    if t < h:
                        h = t
                elif a < 0:
                    t = _ceildiv(s, a)
                    if t > l:
                        l = t
                elif s < 0:
                    feasible = False
                    break
            if feasible:
                t = l
                while t <= h:
                    for j in range(last):
                        out.push_back(z[j])
                    out.push_back(t)
                    t += 1
            # odometer over the leading coordinates
            j = last - 1
            while j >= 0:
                if z[j] < hi[j]:
                    z[j] += 1
                    break
                z[j] = lo[j]
                j -= 1
            if j < 0:
                break
    cdef Py_ssize_t n = out.size() // d
    res = np.empty((n, d), dtype=np.int64)
    cdef int64_t[:, ::1] rv = res
    for i in range(n):
        for j in range(d):
            rv[i, j] = out[i * d + j]
    return res


def sum_marks(const int64_t[::1] ka, const int64_t[::1] kb, int64_t size):
    """Byte mask of length ``size`` marking every key ka[i] + kb[j]."""
    mark = np.zeros(size, dtype=np.uint8)
    cdef uint8_t[::1] mv = mark
    cdef Py_ssize_t i, j, na = ka.shape[0], nb = kb.shape[0]
    cdef int64_t x
    with nogil:
        for i in range(na):
            x = ka[i]
            for j in range(nb):
                mv[x + kb[j]] = 1
    return mark
