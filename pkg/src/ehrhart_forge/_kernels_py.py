"""Pure-Python lattice-point counter, the fallback for ``_kernels``.

The search assigns coordinates in index order. Before branching on
coordinate ``i`` every constraint touching it narrows the admissible range,
using the exact partial sum of already assigned coordinates and the
interval spanned by the unassigned ones over their box. When a constraint's
last coordinate is reached the interval collapses to the exact residual, so
every leaf is a genuine solution.
"""

from __future__ import annotations


def count_box(coef, rhs, is_eq, lo, hi, max_nodes=-1):
    """Count integer points of a box cut by linear constraints.

    Returns ``(count, nodes)``; ``count`` is -1 when ``max_nodes`` was hit.
    """
    nvars = len(lo)
    ncons = len(rhs)
    coef = [list(r) for r in coef]
    for c in range(ncons):
        if not any(coef[c]):
            if (is_eq[c] and rhs[c] != 0) or (not is_eq[c] and rhs[c] < 0):
                return 0, 0
    if any(a > b for a, b in zip(lo, hi)):
        return 0, 0

    smin = [[0] * (nvars + 1) for _ in range(ncons)]
    smax = [[0] * (nvars + 1) for _ in range(ncons)]
    for c in range(ncons):
        for j in range(nvars - 1, -1, -1):
            a = coef[c][j]
            mn, mx = sorted((a * lo[j], a * hi[j]))
            smin[c][j] = smin[c][j + 1] + mn
            smax[c][j] = smax[c][j + 1] + mx
    involved = [[(c, coef[c][j]) for c in range(ncons) if coef[c][j]] for j in range(nvars)]
    partial = [0] * ncons
    state = {"nodes": 0, "count": 0}

    def dfs(i):
        state["nodes"] += 1
        if 0 <= max_nodes < state["nodes"]:
            raise _Aborted
        if i == nvars:
            state["count"] += 1
            return
        low, upp = lo[i], hi[i]
        for c, a in involved[i]:
            slack = rhs[c] - partial[c]
            top = slack - smin[c][i + 1]
            if a > 0:
                upp = min(upp, top // a)
            else:
                low = max(low, -(top // -a))
            if is_eq[c]:
                bottom = slack - smax[c][i + 1]
                if a > 0:
                    low = max(low, -(-bottom // a))
                else:
                    upp = min(upp, bottom // a)
            if low > upp:
                return
        inv = involved[i]
        for x in range(low, upp + 1):
            for c, a in inv:
                partial[c] += a * x
            dfs(i + 1)
            for c, a in inv:
                partial[c] -= a * x

    try:
        dfs(0)
    except _Aborted:
        return -1, state["nodes"]
    return state["count"], state["nodes"]


class _Aborted(Exception):
    pass


def iter_box(coef, rhs, is_eq, lo, hi):
    """Yield the integer points counted by :func:`count_box`, in lexicographic order."""
    nvars = len(lo)
    ncons = len(rhs)
    for c in range(ncons):
        if not any(coef[c]):
            if (is_eq[c] and rhs[c] != 0) or (not is_eq[c] and rhs[c] < 0):
                return
    if any(a > b for a, b in zip(lo, hi)):
        return
    smin = [[0] * (nvars + 1) for _ in range(ncons)]
    smax = [[0] * (nvars + 1) for _ in range(ncons)]
    for c in range(ncons):
        for j in range(nvars - 1, -1, -1):
            a = coef[c][j]
            mn, mx = sorted((a * lo[j], a * hi[j]))
            smin[c][j] = smin[c][j + 1] + mn
            smax[c][j] = smax[c][j + 1] + mx
    involved = [[(c, coef[c][j]) for c in range(ncons) if coef[c][j]] for j in range(nvars)]
    partial = [0] * ncons
    point = [0] * nvars

    def walk(i):
        if i == nvars:
            yield tuple(point)
            return
        low, upp = lo[i], hi[i]
        for c, a in involved[i]:
            slack = rhs[c] - partial[c]
            top = slack - smin[c][i + 1]
            if a > 0:
                upp = min(upp, top // a)
            else:
                low = max(low, -(top // -a))
            if is_eq[c]:
                bottom = slack - smax[c][i + 1]
                if a > 0:
                    low = max(low, -(-bottom // a))
                else:
                    upp = min(upp, bottom // a)
            if low > upp:
                return
        for x in range(low, upp + 1):
            point[i] = x
            for c, a in involved[i]:
                partial[c] += a * x
            yield from walk(i + 1)
            for c, a in involved[i]:
                partial[c] -= a * x

    yield from walk(0)
