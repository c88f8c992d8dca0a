# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; see ``umx._kernels_py`` for the reference semantics."""

from libc.stdlib cimport malloc, free


def triangle_failures(const long long[:] rank, Py_ssize_t n):
    cdef Py_ssize_t i, j, k
    cdef long long dij, a, b
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            dij = rank[i * n + j]
            for k in range(n):
                if k == i or k == j:
                    continue
                a = rank[i * n + k]
                b = rank[k * n + j]
                if dij > (a if a > b else b):
                    out.append((i, j, k))
    return out


def first_expansion(const long long[:] rank, Py_ssize_t n, const long long[:] image,
                    const long long[:] subset, bint strict):
    cdef Py_ssize_t p, q, m = subset.shape[0]
    cdef long long x, y, fx, dxy, dfy
    for p in range(m):
        x = subset[p]
        fx = image[x]
        for q in range(p + 1, m):
            y = subset[q]
            dxy = rank[x * n + y]
            dfy = rank[fx * n + image[y]]
            if dfy > dxy or (strict and dfy == dxy):
                return (x, y)
    return None


def find_strict_noncyclic(const long long[:] rank, Py_ssize_t n,
                          const long long[:] in_a, const long long[:] in_b):
    cdef Py_ssize_t x, y, m = 0, pos, q
    cdef long long visited = 0
    cdef long long *dom = <long long *> malloc(n * sizeof(long long))
    cdef long long *kind = <long long *> malloc(n * sizeof(long long))
    cdef long long *image = <long long *> malloc(n * sizeof(long long))
    cdef long long *cursor = <long long *> malloc(n * sizeof(long long))
    cdef bint ok, found = False
    cdef long long fx
    if not dom or not kind or not image or not cursor:
        free(dom); free(kind); free(image); free(cursor)
        raise MemoryError()
    try:
        for x in range(n):
            image[x] = -1
            if in_a[x] or in_b[x]:
                dom[m] = x
                # 3: A and B, 1: A only, 2: B only
                kind[m] = (1 if in_a[x] else 0) + (2 if in_b[x] else 0)
                m += 1
        if m == 0:
            return None, 0
        for pos in range(m):
            cursor[pos] = -1
        pos = 0
        while pos >= 0:
            x = dom[pos]
            # advance to the next admissible image for dom[pos]
            fx = cursor[pos] + 1
            ok = False
            while fx < n:
                if (kind[pos] == 3 and in_a[fx] and in_b[fx]) or \
                   (kind[pos] == 1 and in_a[fx]) or (kind[pos] == 2 and in_b[fx]):
                    visited += 1
                    ok = True
                    for q in range(pos):
                        y = dom[q]
                        if rank[fx * n + image[y]] >= rank[x * n + y]:
                            ok = False
                            break
                    if ok:
                        break
                fx += 1
            if ok:
                cursor[pos] = fx
                image[x] = fx
                if pos == m - 1:
                    found = True
                    break
                pos += 1
                cursor[pos] = -1
            else:
                image[x] = -1
                pos -= 1
        if found:
            return [image[x] for x in range(n)], visited
        return None, visited
    finally:
        free(dom); free(kind); free(image); free(cursor)
