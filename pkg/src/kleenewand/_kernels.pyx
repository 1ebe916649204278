# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled table kernels, drop-in twins of ``_kernels_py``.

Tables are tuples of Python ints with ``-1`` for undefined entries.
"""

from libc.stdlib cimport malloc, free


cdef long *_load(tuple t, Py_ssize_t n) except NULL:
    cdef long *buf = <long *> malloc((n if n > 0 else 1) * sizeof(long))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = <long> t[i]
    return buf


cdef tuple _store(long *buf, Py_ssize_t n):
    return tuple([buf[i] for i in range(n)])


def compose(tuple f, tuple g):
    cdef Py_ssize_t n = len(f), i
    cdef long y
    cdef list out = [None] * n
    for i in range(n):
        y = f[i]
        out[i] = -1 if y < 0 else g[y]
    return tuple(out)


def restrict(tuple f):
    cdef Py_ssize_t n = len(f), i
    cdef list out = [None] * n
    for i in range(n):
        out[i] = i if <long> f[i] >= 0 else -1
    return tuple(out)


def union(tuple f, tuple g):
    cdef Py_ssize_t n = len(f), i
    cdef long a, b
    cdef list out = [None] * n
    for i in range(n):
        a = f[i]
        b = g[i]
        if a >= 0:
            if b >= 0:
                return (), i
            out[i] = a
        else:
            out[i] = b
    return tuple(out), -1


def wand(tuple f, tuple g):
    cdef Py_ssize_t n = len(f), i, rounds
    cdef long *ft = _load(f, n)
    cdef long *term = NULL
    cdef long *nxt = NULL
    cdef long *res = NULL
    cdef long *swap
    cdef long y
    cdef bint live
    try:
        term = _load(g, n)
        res = _load(g, n)
        nxt = <long *> malloc((n if n > 0 else 1) * sizeof(long))
        if nxt == NULL:
            raise MemoryError()
        for rounds in range(n + 1):
            live = False
            for i in range(n):
                y = ft[i]
                nxt[i] = -1 if y < 0 else term[y]
                if nxt[i] >= 0:
                    live = True
                    if res[i] >= 0:
                        raise AssertionError("wand terms overlap at point %d" % i)
                    res[i] = nxt[i]
            if not live:
                return _store(res, n)
            swap = term
            term = nxt
            nxt = swap
        raise AssertionError("wand iteration did not stabilise within %d rounds" % (n + 1))
    finally:
        free(ft)
        free(term)
        free(nxt)
        free(res)
