# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contracts as ``kcore._pykernels``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def prepare_table(array):
    return np.ascontiguousarray(array, dtype=np.int32)


def reduce_codes(list word, const int[:, ::1] prod, int nA):
    cdef Py_ssize_t n = len(word), i, top = 0
    cdef int c, r
    cdef int[::1] stack = np.empty(n if n > 0 else 1, dtype=np.int32)
    for i in range(n):
        c = word[i]
        if top > 0 and (stack[top - 1] >= nA) == (c >= nA):
            r = prod[stack[top - 1], c]
            top -= 1
            if r >= 0:
                stack[top] = r
                top += 1
        else:
            stack[top] = c
            top += 1
    return [stack[i] for i in range(top)]


cdef inline int _walk(const int[:, ::1] trans, int v, int[::1] w, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i
    for i in range(n):
        v = trans[v, w[i]]
        if v < 0:
            return -1
    return v


cdef int[::1] _as_codes(list word):
    cdef Py_ssize_t n = len(word), i
    cdef int[::1] w = np.empty(n if n > 0 else 1, dtype=np.int32)
    for i in range(n):
        w[i] = word[i]
    return w


def walk(const int[:, ::1] trans, int start, list word):
    cdef Py_ssize_t i, n = len(word)
    cdef int v = start
    for i in range(n):
        v = trans[v, <int>word[i]]
        if v < 0:
            return -1
    return v


def endpoints(const int[:, ::1] trans, list word):
    cdef int[::1] w = _as_codes(word)
    cdef Py_ssize_t n = len(word), v
    return [_walk(trans, <int>v, w, n) for v in range(trans.shape[0])]


def rank(const int[:, ::1] trans, list word):
    cdef int[::1] w = _as_codes(word)
    cdef Py_ssize_t n = len(word), v
    cdef int count = 0
    for v in range(trans.shape[0]):
        if _walk(trans, <int>v, w, n) >= 0:
            count += 1
    return count
