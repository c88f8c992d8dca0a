"""Pure-Python reference kernels.

All kernels work on a flat row-major ``n*n`` sequence of integer ranks
(dense order codes of the exact distances).  Every predicate they decide
only compares distances, so ranks preserve exactness.  The compiled
module ``umx._kernels`` exposes the same functions with the same results.
"""


def triangle_failures(rank, n):
    """All ``(i, j, k)`` with ``i < j`` and ``d(i,j) > max(d(i,k), d(k,j))``."""
    out = []
    for i in range(n):
        ri = i * n
        for j in range(i + 1, n):
            dij = rank[ri + j]
            for k in range(n):
                if k == i or k == j:
                    continue
                a = rank[ri + k]
                b = rank[k * n + j]
                if dij > (a if a > b else b):
                    out.append((i, j, k))
    return out


def first_expansion(rank, n, image, subset, strict):
    """First pair ``(x, y)`` of ``subset`` (index order) the map expands.

    ``strict`` asks for ``d(Fx, Fy) < d(x, y)``; otherwise ``<=``.
    Returns ``None`` when no pair fails.
    """
    m = len(subset)
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


def find_strict_noncyclic(rank, n, in_a, in_b):
    """Search every noncyclic map on ``A u B`` for a strictly contractive one.

    ``in_a``/``in_b`` are 0/1 membership flags of length ``n``.  Returns
    ``(image, visited)``: the first such map in odometer order (``image``
    as a list, ``-1`` off the domain) or ``None``, and the number of
    partial assignments explored.
    """
    dom = [x for x in range(n) if in_a[x] or in_b[x]]
    choices = []
    for x in dom:
        if in_a[x] and in_b[x]:
            choices.append([y for y in range(n) if in_a[y] and in_b[y]])
        elif in_a[x]:
            choices.append([y for y in range(n) if in_a[y]])
        else:
            choices.append([y for y in range(n) if in_b[y]])
    image = [-1] * n
    visited = 0
    m = len(dom)

    def extend(pos):
        nonlocal visited
        if pos == m:
            return True
        x = dom[pos]
        for fx in choices[pos]:
            visited += 1
            ok = True
            for q in range(pos):
                y = dom[q]
                if rank[fx * n + image[y]] >= rank[x * n + y]:
                    ok = False
                    break
            if ok:
                image[x] = fx
                if extend(pos + 1):
                    return True
        image[x] = -1
        return False

    found = extend(0) if m else False
    return (list(image) if found else None), visited
