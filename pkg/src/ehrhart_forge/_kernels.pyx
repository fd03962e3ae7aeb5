# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice-point counter.

Mirrors ``_kernels_py.count_box`` exactly; see that module for the search
description. All arithmetic is int64, which is safe because the search is
only ever run on boxes whose coordinates and constraint sums are tiny
compared to 2**62 (the Python wrapper checks this before dispatching).
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t

cdef struct Search:
    int nvars
    int ncons
    int64_t *coef        # ncons x nvars
    int64_t *rhs
    int *is_eq
    int64_t *lo
    int64_t *hi
    int64_t *smin        # ncons x (nvars + 1)
    int64_t *smax
    int64_t *partial
    int *inv_start       # nvars + 1
    int *inv_cons
    int64_t nodes
    int64_t max_nodes
    int64_t count
    int aborted


cdef inline int64_t floordiv(int64_t a, int64_t b) nogil:
    cdef int64_t q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline int64_t ceildiv(int64_t a, int64_t b) nogil:
    return -floordiv(-a, b)


cdef void dfs(Search *s, int i) nogil:
    cdef int64_t lo, hi, a, rest_lo, rest_hi, low, upp, x, t
    cdef int k, c, w
    if s.aborted:
        return
    s.nodes += 1
    if s.max_nodes >= 0 and s.nodes > s.max_nodes:
        s.aborted = 1
        return
    if i == s.nvars:
        s.count += 1
        return
    w = s.nvars + 1
    lo = s.lo[i]
    hi = s.hi[i]
    for k in range(s.inv_start[i], s.inv_start[i + 1]):
        c = s.inv_cons[k]
        a = s.coef[c * s.nvars + i]
        rest_lo = s.smin[c * w + i + 1]
        rest_hi = s.smax[c * w + i + 1]
        upp = s.rhs[c] - s.partial[c] - rest_lo
        if a > 0:
            t = floordiv(upp, a)
            if t < hi:
                hi = t
        else:
            t = ceildiv(upp, a)
            if t > lo:
                lo = t
        if s.is_eq[c]:
            low = s.rhs[c] - s.partial[c] - rest_hi
            if a > 0:
                t = ceildiv(low, a)
                if t > lo:
                    lo = t
            else:
                t = floordiv(low, a)
                if t < hi:
                    hi = t
        if lo > hi:
            return
    x = lo
    while x <= hi:
        for k in range(s.inv_start[i], s.inv_start[i + 1]):
            c = s.inv_cons[k]
            s.partial[c] += s.coef[c * s.nvars + i] * x
        dfs(s, i + 1)
        for k in range(s.inv_start[i], s.inv_start[i + 1]):
            c = s.inv_cons[k]
            s.partial[c] -= s.coef[c * s.nvars + i] * x
        if s.aborted:
            return
        x += 1


def count_box(coef, rhs, is_eq, lo, hi, long long max_nodes=-1):
    """Count integer points of a box cut by linear constraints.

    Returns ``(count, nodes)``; ``count`` is -1 when ``max_nodes`` was hit.
    """
    cdef int nvars = len(lo)
    cdef int ncons = len(rhs)
    cdef Search s
    cdef int c, j, k, w
    cdef int64_t a, mn, mx
    w = nvars + 1
    s.nvars = nvars
    s.ncons = ncons
    s.coef = <int64_t *> malloc(sizeof(int64_t) * max(1, ncons * nvars))
    s.rhs = <int64_t *> malloc(sizeof(int64_t) * max(1, ncons))
    s.is_eq = <int *> malloc(sizeof(int) * max(1, ncons))
    s.lo = <int64_t *> malloc(sizeof(int64_t) * max(1, nvars))
    s.hi = <int64_t *> malloc(sizeof(int64_t) * max(1, nvars))
    s.smin = <int64_t *> malloc(sizeof(int64_t) * max(1, ncons * w))
    s.smax = <int64_t *> malloc(sizeof(int64_t) * max(1, ncons * w))
    s.partial = <int64_t *> malloc(sizeof(int64_t) * max(1, ncons))
    s.inv_start = <int *> malloc(sizeof(int) * (nvars + 1))
    s.inv_cons = <int *> malloc(sizeof(int) * max(1, ncons * nvars))
    try:
        for j in range(nvars):
            s.lo[j] = lo[j]
            s.hi[j] = hi[j]
        for c in range(ncons):
            s.rhs[c] = rhs[c]
            s.is_eq[c] = 1 if is_eq[c] else 0
            s.partial[c] = 0
            row = coef[c]
            for j in range(nvars):
                s.coef[c * nvars + j] = row[j]
            s.smin[c * w + nvars] = 0
            s.smax[c * w + nvars] = 0
            for j in range(nvars - 1, -1, -1):
                a = s.coef[c * nvars + j]
                mn = a * s.lo[j]
                mx = a * s.hi[j]
                if mn > mx:
                    mn, mx = mx, mn
                s.smin[c * w + j] = s.smin[c * w + j + 1] + mn
                s.smax[c * w + j] = s.smax[c * w + j + 1] + mx
        k = 0
        for j in range(nvars):
            s.inv_start[j] = k
            for c in range(ncons):
                if s.coef[c * nvars + j] != 0:
                    s.inv_cons[k] = c
                    k += 1
        s.inv_start[nvars] = k
        s.nodes = 0
        s.max_nodes = max_nodes
        s.count = 0
        s.aborted = 0
        for c in range(ncons):
            # a constraint touching no variable is never revisited by dfs
            mn = 0
            for j in range(nvars):
                if s.coef[c * nvars + j] != 0:
                    mn = 1
            if mn == 0:
                if s.is_eq[c] and s.rhs[c] != 0:
                    return 0, 0
                if (not s.is_eq[c]) and s.rhs[c] < 0:
                    return 0, 0
        for j in range(nvars):
            if s.lo[j] > s.hi[j]:
                return 0, 0
        with nogil:
            dfs(&s, 0)
        if s.aborted:
            return -1, s.nodes
        return s.count, s.nodes
    finally:
        free(s.coef)
        free(s.rhs)
        free(s.is_eq)
        free(s.lo)
        free(s.hi)
        free(s.smin)
        free(s.smax)
        free(s.partial)
        free(s.inv_start)
        free(s.inv_cons)
