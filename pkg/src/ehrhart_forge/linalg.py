"""Exact integer and rational matrix routines.

Matrices are plain lists of rows. Integer entries stay Python ``int`` and
rational work goes through :class:`fractions.Fraction`; nothing here ever
touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix (fraction-free elimination)."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(a)):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        row_r = a[r]
        for i in range(r + 1, len(a)):
            x = a[i][c]
            if x:
                row_i = a[i]
                for j in range(c, ncols):
                    row_i[j] = row_i[j] * p - x * row_r[j]
                g = 0
                for v in row_i:
                    g = gcd(g, v)
                if g > 1:
                    a[i] = [v // g for v in row_i]
        r += 1
        if r == len(a):
            break
    return r


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine hull of ``points``; -1 for no points."""
    if not points:
        return -1
    base = points[0]
    return rank([[x - y for x, y in zip(p, base)] for p in points[1:]])


def rref(rows: Sequence[Sequence[Fraction | int]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    a = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    if not a:
        return a, pivots
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def nullspace(rows: Sequence[Sequence[Fraction | int]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}`` over Q, one basis vector per free column."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def primitive(vec: Sequence[Fraction | int]) -> list[int]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    den = 1
    for x in vec:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


def hermite_rows(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    The result is the unique echelon basis with positive pivots and entries
    above each pivot reduced into ``[0, pivot)``; zero rows are dropped.
    """
    a = [list(r) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    out: Matrix = []
    for c in range(ncols):
        nz = [r for r in a if r[c] != 0]
        if not nz:
            continue
        rest = [r for r in a if r[c] == 0]
        # Euclid on column c across all rows that touch it
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[c]))
            pivot = nz[0]
            nxt = [pivot]
            for r in nz[1:]:
                q = r[c] // pivot[c]
                r = [x - q * y for x, y in zip(r, pivot)]
                if r[c] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            nz = nxt
        pivot = nz[0]
        if pivot[c] < 0:
            pivot = [-x for x in pivot]
        out.append(pivot)
        a = rest
    for i, row in enumerate(out):
        c = next(j for j, x in enumerate(row) if x)
        for k in range(i):
            q = out[k][c] // row[c]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], row)]
    return out


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis of the integer lattice ``{x in Z^ncols : A x = 0}``.

    Column operations reduce ``A`` to echelon form while tracking the
    unimodular transform; the trailing columns of the transform span the
    kernel, which is saturated by construction.
    """
    a = [list(r) for r in rows]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def col_op(dst: int, src: int, q: int) -> None:
        for r in a:
            r[dst] -= q * r[src]
        for r in u:
            r[dst] -= q * r[src]

    def swap(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in u:
            r[i], r[j] = r[j], r[i]

    lead = 0
    for row in a:
        if lead >= ncols:
            break
        while True:
            nz = [j for j in range(lead, ncols) if row[j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(row[j]))
            if j0 != lead:
                swap(lead, j0)
            done = True
            for j in range(lead + 1, ncols):
                if row[j] != 0:
                    col_op(j, lead, row[j] // row[lead])
                    if row[j] != 0:
                        done = False
            if done:
                lead += 1
                break
    return [[u[i][j] for i in range(ncols)] for j in range(lead, ncols)]


def solve_echelon(basis: Sequence[Sequence[int]], vec: Sequence[int]) -> list[Fraction] | None:
    """Coordinates of ``vec`` in an echelon row basis, or None if outside its span."""
    coords: list[Fraction] = []
    residual = [Fraction(x) for x in vec]
    for row in basis:
        c = next(j for j, x in enumerate(row) if x)
        k = residual[c] / row[c]
        coords.append(k)
        if k:
            residual = [x - k * y for x, y in zip(residual, row)]
    if any(residual):
        return None
    return coords
