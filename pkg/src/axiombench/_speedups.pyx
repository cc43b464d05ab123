# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels mirroring ``axiombench._purepy`` (inputs limited to 62 bits)."""

from libc.math cimport fabs
from libc.stdlib cimport malloc, free, qsort


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int _popcount(unsigned long long x) noexcept nogil:
    return __builtin_popcountll(x)


def sample_channels(const double[:, ::1] u, const double[::1] probs,
                    double first_prob, bint cyclic):
    cdef Py_ssize_t length = u.shape[0]
    cdef Py_ssize_t width = u.shape[1] if length else 0
    cdef Py_ssize_t c, j, start, stop, seg_end
    cdef int prev
    cdef unsigned long long bit
    cdef unsigned long long *items = <unsigned long long *>malloc(
        (length if length else 1) * sizeof(unsigned long long))
    if items == NULL:
        raise MemoryError()
    try:
        for j in range(length):
            items[j] = 0
        for c in range(width):
            bit = (<unsigned long long>1) << c
            if cyclic:
                if length == 1:
                    continue
                if u[0, c] < first_prob:
                    items[0] |= bit
                    start = 2
                    stop = length - 1
                    seg_end = length - 1
                else:
                    start = 1
                    stop = length
                    seg_end = length
            else:
                start = 0
                stop = length
                seg_end = length
            prev = 0
            for j in range(start, stop):
                if prev:
                    prev = 0
                elif u[j, c] < probs[seg_end - j]:
                    items[j] |= bit
                    prev = 1
        return [items[j] for j in range(length)]
    finally:
        free(items)


def admissible(items, bint cyclic):
    cdef Py_ssize_t n = len(items), i
    cdef unsigned long long a, b
    if n == 0:
        return True
    a = items[0]
    for i in range(1, n):
        b = items[i]
        if a & b:
            return False
        a = b
    if cyclic and (a & <unsigned long long>items[0]):
        return False
    return True


def match_count(a, b, unsigned long long mask):
    cdef Py_ssize_t n = min(len(a), len(b)), i
    cdef long long total = 0
    cdef unsigned long long x, y
    for i in range(n):
        x = a[i]
        y = b[i]
        total += _popcount(~(x ^ y) & mask)
    return total


cdef int _cmp_abs(const void *pa, const void *pb) noexcept nogil:
    cdef double x = fabs((<double *>pa)[0])
    cdef double y = fabs((<double *>pb)[0])
    if x < y:
        return -1
    if x > y:
        return 1
    return 0


def signed_rank(diffs):
    cdef Py_ssize_t m = len(diffs), n = 0, i, j, k
    cdef double d, rank, w_plus = 0.0
    cdef long long t, tie_sum = 0
    cdef double *vals = <double *>malloc((m if m else 1) * sizeof(double))
    if vals == NULL:
        raise MemoryError()
    try:
        for i in range(m):
            d = diffs[i]
            if d != 0.0:
                vals[n] = d
                n += 1
        qsort(vals, n, sizeof(double), _cmp_abs)
        i = 0
        while i < n:
            j = i
            while j + 1 < n and fabs(vals[j + 1]) == fabs(vals[i]):
                j += 1
            t = j - i + 1
            rank = (i + j + 2) / 2.0
            for k in range(i, j + 1):
                if vals[k] > 0.0:
                    w_plus += rank
            if t > 1:
                tie_sum += t * t * t - t
            i = j + 1
        return n, w_plus, tie_sum
    finally:
        free(vals)
