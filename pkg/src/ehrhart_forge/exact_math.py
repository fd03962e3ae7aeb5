"""Integer polynomials, Macaulay bounds, M-vectors and the g-theorem test.

Also hosts the two transforms that move between counting data and
numerators: face numbers to h-vectors, and Ehrhart values to the numerator
of ``h(t) / (1 - t)^(m + 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

from .linalg import determinant

__all__ = [
    "IntPolynomial",
    "HVector",
    "MacaulayRep",
    "MVectorResult",
    "GTheoremVerdict",
    "NotEhrhartSequence",
    "binomial",
    "macaulay_rep",
    "macaulay_bound",
    "is_m_vector",
    "g_theorem_check",
    "h_from_f",
    "h_coefficients",
    "binomial_transform",
    "numerator_from_values",
    "expand_series",
    "is_totally_unimodular",
    "TU_SIZE_BOUND",
]

TU_SIZE_BOUND = 8


class NotEhrhartSequence(ValueError):
    """Surplus values are inconsistent with a numerator of degree <= m."""

    def __init__(self, index: int, value: int):
        super().__init__(f"h_{index} = {value} is nonzero beyond the dimension bound")
        self.index = index
        self.value = value


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial in ``t`` with exact integer coefficients, lowest degree first."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def of(cls, *coeffs: int) -> "IntPolynomial":
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        """Index of the leading coefficient; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self), len(other))
        return IntPolynomial(tuple(self[i] + other[i] for i in range(n)))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self), len(other))
        return IntPolynomial(tuple(self[i] - other[i] for i in range(n)))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def __call__(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono:
                terms.append(f"{c}{mono}")
            else:
                terms.append(str(c))
        return " + ".join(terms).replace("+ -", "- ")


@dataclass(frozen=True)
class HVector:
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if not self.entries:
            raise ValueError("an h-vector has at least the entry h_0")
        if any(x < 0 for x in self.entries):
            raise ValueError(f"negative entry in h-vector {self.entries}")

    @property
    def d(self) -> int:
        return len(self.entries) - 1

    def polynomial(self) -> IntPolynomial:
        return IntPolynomial(self.entries)


@dataclass(frozen=True)
class MacaulayRep:
    """``n = sum C(k_s, s)`` over ``terms`` listed as ``(k_s, s)`` with s decreasing."""

    i: int
    terms: tuple[tuple[int, int], ...]

    @property
    def value(self) -> int:
        return sum(comb(k, s) for k, s in self.terms)


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be nonnegative")
    return comb(n, k)


def macaulay_rep(n: int, i: int) -> MacaulayRep:
    """Greedy i-th Macaulay representation of ``n >= 1``."""
    if n < 1 or i < 1:
        raise ValueError(f"macaulay_rep needs n >= 1 and i >= 1, got n={n}, i={i}")
    terms = []
    rest = n
    s = i
    while rest > 0:
        # largest k with C(k, s) <= rest: gallop, then bisect
        lo, step = s, 1
        while comb(lo + step, s) <= rest:
            lo += step
            step *= 2
        hi = lo + step
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if comb(mid, s) <= rest:
                lo = mid
            else:
                hi = mid
        k = lo
        terms.append((k, s))
        rest -= comb(k, s)
        s -= 1
    return MacaulayRep(i, tuple(terms))


def macaulay_bound(n: int, i: int) -> int:
    """``n^(i)``, the largest allowed successor of ``n`` in degree ``i``."""
    if i < 1:
        raise ValueError("macaulay_bound needs i >= 1")
    if n < 0:
        raise ValueError("macaulay_bound needs n >= 0")
    if n == 0:
        return 0
    return sum(comb(k + 1, s + 1) for k, s in macaulay_rep(n, i).terms)


@dataclass(frozen=True)
class MVectorResult:
    ok: bool
    violated_index: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_m_vector(g: Sequence[int]) -> MVectorResult:
    g = list(g)
    if not g or g[0] != 1:
        return MVectorResult(False, 0)
    for idx, x in enumerate(g):
        if x < 0:
            return MVectorResult(False, idx)
    for i in range(1, len(g) - 1):
        if g[i + 1] > macaulay_bound(g[i], i):
            return MVectorResult(False, i + 1)
    return MVectorResult(True)


@dataclass(frozen=True)
class GTheoremVerdict:
    symmetric: bool
    g_is_m_vector: bool
    unimodal: bool
    g_vector: tuple[int, ...] = field(default=())
    m_vector_violation: int | None = None

    @property
    def passed(self) -> bool:
        return self.symmetric and self.g_is_m_vector and self.unimodal


def g_theorem_check(h: HVector | Sequence[int]) -> GTheoremVerdict:
    entries = list(h.entries if isinstance(h, HVector) else h)
    d = len(entries) - 1
    symmetric = all(entries[i] == entries[d - i] for i in range(d + 1))
    half = d // 2
    g = [entries[0]] + [entries[i] - entries[i - 1] for i in range(1, half + 1)]
    mres = is_m_vector(g)
    unimodal = all(entries[i] <= entries[i + 1] for i in range(half))
    return GTheoremVerdict(symmetric, mres.ok, unimodal, tuple(g), mres.violated_index)


def h_coefficients(f: Sequence[int], d: int) -> list[int]:
    """Raw coefficients ``h_0..h_d`` of the f-to-h transform; may be negative."""
    if d < 0 or len(f) != d:
        raise ValueError(f"need exactly d={d} face numbers f_0..f_(d-1), got {len(f)}")
    fx = [1] + list(f)  # fx[i] = f_{i-1}
    return [
        sum((-1) ** (k - i) * comb(d - i, k - i) * fx[i] for i in range(k + 1))
        for k in range(d + 1)
    ]


def h_from_f(f: Sequence[int], d: int) -> HVector:
    """h-vector of a (d-1)-dimensional complex with face numbers ``f``.

    >>> h_from_f((6, 12, 8), 3).entries
    (1, 3, 3, 1)
    """
    return HVector(tuple(h_coefficients(f, d)))


def binomial_transform(values: Sequence[int], m: int) -> list[int]:
    """``h_i = sum_j (-1)^(i-j) C(m+1, i-j) values[j]`` for every supplied index."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return [
        sum((-1) ** (i - j) * comb(m + 1, i - j) * values[j] for j in range(i + 1))
        for i in range(len(values))
    ]


def numerator_from_values(values: Sequence[int], m: int) -> IntPolynomial:
    """Numerator ``h`` with ``sum_r values[r] t^r = h(t) / (1 - t)^(m + 1)``.

    Values past index ``m`` must transform to zero; otherwise the input is
    not the counting sequence of an ``m``-dimensional integer polytope.
    """
    if len(values) < m + 1:
        raise ValueError(f"need at least m+1={m + 1} values, got {len(values)}")
    h = binomial_transform(values, m)
    for i in range(m + 1, len(h)):
        if h[i] != 0:
            raise NotEhrhartSequence(i, h[i])
    return IntPolynomial(tuple(h[: m + 1]))


def expand_series(numerator: IntPolynomial, exponent: int, terms: int) -> list[int]:
    """First ``terms`` coefficients of ``numerator(t) / (1 - t)^exponent``."""
    return [
        sum(numerator[i] * comb(r - i + exponent - 1, exponent - 1) for i in range(min(r, numerator.degree) + 1))
        if exponent > 0
        else numerator[r]
        for r in range(terms)
    ]


def is_totally_unimodular(matrix: Sequence[Sequence[int]], size_bound: int = TU_SIZE_BOUND) -> bool:
    """Brute-force check that every square minor lies in {-1, 0, 1}."""
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return True
    nr, nc = len(rows), len(rows[0])
    if any(x not in (-1, 0, 1) for r in rows for x in r):
        return False
    if min(nr, nc) > size_bound:
        raise ValueError(f"matrix too large for brute force ({nr}x{nc}, bound {size_bound})")
    for k in range(2, min(nr, nc) + 1):
        for ri in combinations(range(nr), k):
            sub = [rows[i] for i in ri]
            for ci in combinations(range(nc), k):
                if determinant([[r[j] for j in ci] for r in sub]) not in (-1, 0, 1):
                    return False
    return True
