"""Lattice-point counts of dilates and the two routes to the Ehrhart numerator.

The counting route enumerates ``rP`` for ``r = 0..m+1`` and inverts the
binomial transform. The triangulation route reads the numerator off the
h-polynomial of a unimodular pulling triangulation. The pipeline runs both
and checks the special-simplex conclusions.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import _kernels_py, kernels
from .exact_math import (
    IntPolynomial,
    NotEhrhartSequence,
    binomial_transform,
    expand_series,
    g_theorem_check,
    numerator_from_values,
)
from .families import MultiGraph, Poset, birkhoff, matching_polytope
from .polytope import (
    FaceLattice,
    IntegerPolytope,
    SpecialSimplexError,
    faces_of,
    codimension_violations,
    validate_polytope,
    verify_special_simplex,
)
from .triangulation import (
    SimplicialComplex,
    VertexOrder,
    face_complex,
    is_unimodular_triangulation,
    join_decomposition_check,
    pulling_triangulation,
)

__all__ = [
    "BudgetExceeded",
    "NotCompressed",
    "Budgets",
    "EhrhartSeries",
    "count_points",
    "lattice_points",
    "series_by_counting",
    "series_by_triangulation",
    "magic_square_series",
    "magic_labeling_series",
    "order_reversing_count",
    "PipelineReport",
    "Stage",
    "verify_stanley_pipeline",
]

MAX_DILATE = 16
MAX_NODES = 2 * 10**9
THREADS_ENV = "EHRHART_FORGE_THREADS"


class BudgetExceeded(RuntimeError):
    pass


class NotCompressed(ValueError):
    def __init__(self, simplex: tuple[int, ...], volume: int):
        super().__init__(f"simplex {list(simplex)} has normalized volume {volume}, not 1")
        self.simplex = simplex
        self.volume = volume


@dataclass(frozen=True)
class Budgets:
    max_dilate: int = MAX_DILATE
    max_nodes: int = MAX_NODES
    max_faces: int = 10**6


def _threads(threads: int | None) -> int:
    if threads is not None:
        return max(1, threads)
    raw = os.environ.get(THREADS_ENV, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _system(P: IntegerPolytope, r: int):
    coef, rhs, is_eq = [], [], []
    for c, e in P.equalities:
        coef.append(list(c))
        rhs.append(r * e)
        is_eq.append(True)
    for a, b in P.facets:
        coef.append(list(a))
        rhs.append(r * b)
        is_eq.append(False)
    q = P.ambient_dim
    lo = [r * min(v[k] for v in P.vertices) for k in range(q)]
    hi = [r * max(v[k] for v in P.vertices) for k in range(q)]
    return coef, rhs, is_eq, lo, hi


def count_points(
    P: IntegerPolytope,
    r: int,
    *,
    max_nodes: int = MAX_NODES,
    max_dilate: int = MAX_DILATE,
    backend: str | None = None,
    threads: int | None = None,
) -> int:
    """``#(rP ∩ Z^q)`` by backtracking over coordinates.

    The search is split on the value of the first coordinate; slices run on
    a thread pool when more than one worker is allowed. The node budget
    covers all slices together.
    """
    if r < 0:
        raise ValueError("dilation factor must be nonnegative")
    if r > max_dilate:
        raise BudgetExceeded(f"dilate r = {r} exceeds max_dilate = {max_dilate}")
    coef, rhs, is_eq, lo, hi = _system(P, r)
    if P.ambient_dim == 0:
        return 1

    def run(x0: int, budget: int):
        lo2, hi2 = lo[:], hi[:]
        lo2[0] = hi2[0] = x0
        return kernels.count_box(coef, rhs, is_eq, lo2, hi2, budget, backend=backend)

    slices = range(lo[0], hi[0] + 1)
    workers = _threads(threads)
    total = used = 0
    if workers > 1 and len(slices) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda x: run(x, max_nodes), slices))
        for cnt, nodes in results:
            used += nodes
            if cnt < 0 or used > max_nodes:
                raise BudgetExceeded(f"more than {max_nodes} search nodes at r = {r}")
            total += cnt
        return total
    for x0 in slices:
        cnt, nodes = run(x0, max_nodes - used)
        used += nodes
        if cnt < 0:
            raise BudgetExceeded(f"more than {max_nodes} search nodes at r = {r}")
        total += cnt
    return total


def lattice_points(P: IntegerPolytope, r: int, *, max_dilate: int = MAX_DILATE) -> Iterator[tuple[int, ...]]:
    """Integer points of ``rP`` in lexicographic order."""
    if r > max_dilate:
        raise BudgetExceeded(f"dilate r = {r} exceeds max_dilate = {max_dilate}")
    yield from _kernels_py.iter_box(*_system(P, r))


@dataclass(frozen=True)
class EhrhartSeries:
    """``numerator(t) / (1 - t)^denom_exponent``."""

    numerator: IntPolynomial
    denom_exponent: int

    @property
    def h(self) -> tuple[int, ...]:
        return self.numerator.coeffs

    @property
    def d(self) -> int:
        return self.numerator.degree

    def values(self, terms: int) -> list[int]:
        return expand_series(self.numerator, self.denom_exponent, terms)

    def __str__(self) -> str:
        h = " ".join(str(c) for c in self.h) or "0"
        return f"h = {h}, d = {self.d}, denom = (1-t)^{self.denom_exponent}"


def series_by_counting(
    P: IntegerPolytope,
    m: int | None = None,
    *,
    extra: int = 1,
    upto: int | None = None,
    **count_kw,
) -> EhrhartSeries:
    """Count ``rP`` for ``r <= m + extra`` and invert; the surplus values must transform to zero.

    ``upto`` caps the dilates counted; below ``m`` it yields only the
    leading coefficients ``h_0..h_upto`` (the rest assumed zero), which is
    how degree-bounded numerators are checked on large instances.
    """
    if m is None:
        m = P.dimension
    top = m + extra if upto is None else upto
    values = [count_points(P, r, **count_kw) for r in range(top + 1)]
    if top >= m:
        return EhrhartSeries(numerator_from_values(values, m), m + 1)
    return EhrhartSeries(IntPolynomial(tuple(binomial_transform(values, m))), m + 1)


def series_by_triangulation(
    P: IntegerPolytope,
    tau: VertexOrder | None = None,
    *,
    lattice: FaceLattice | None = None,
    delta: SimplicialComplex | None = None,
) -> EhrhartSeries:
    """h-polynomial of the pulling triangulation, after checking it is unimodular."""
    tau = tau or VertexOrder(range(P.num_vertices))
    if delta is None:
        delta = pulling_triangulation(face_complex(lattice or faces_of(P)), tau)
    res = is_unimodular_triangulation(P, delta)
    if not res.ok:
        raise NotCompressed(res.witness, res.volume)
    return EhrhartSeries(delta.h_polynomial(), P.dimension + 1)


def magic_square_series(n: int, route: str = "counting", **count_kw) -> EhrhartSeries:
    """Series of ``H_n(r)``; checks the denominator and the degree ``n^2 - 3n + 2``."""
    from .families import birkhoff_default_order

    P = birkhoff(n)
    if route == "counting":
        s = series_by_counting(P, **count_kw)
    elif route == "triangulation":
        s = series_by_triangulation(P, birkhoff_default_order(n, P))
    else:
        raise ValueError(f"unknown route {route!r}")
    if s.denom_exponent != (n - 1) ** 2 + 1:
        raise AssertionError(f"denominator exponent {s.denom_exponent} != {(n - 1) ** 2 + 1}")
    if s.d != n * n - 3 * n + 2:
        raise AssertionError(f"numerator degree {s.d} != {n * n - 3 * n + 2}")
    return s


def magic_labeling_series(G: MultiGraph, **count_kw) -> EhrhartSeries:
    """Series of magic labelings of a connected regular bipartite graph."""
    n = G.require_magic_ready()
    P = matching_polytope(G)
    s = series_by_counting(P, **count_kw)
    m = P.dimension
    if m != G.q - G.p + 1:
        raise AssertionError(f"dimension {m} != q - p + 1 = {G.q - G.p + 1}")
    if s.d != m - n + 1:
        raise AssertionError(f"numerator degree {s.d} != m - n + 1 = {m - n + 1}")
    return s


def order_reversing_count(P: Poset, r: int, max_nodes: int = MAX_NODES) -> int:
    """Maps ``rho: P -> {0..r}`` with ``i < j`` forcing ``rho(i) >= rho(j)``."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    order = sorted(range(1, P.m + 1), key=lambda x: (bin(P.down_mask(x)).count("1"), x))
    lower = {j: P.lower_covers(j) for j in order}
    rho = [0] * (P.m + 1)
    nodes = 0

    def rec(k: int) -> int:
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise BudgetExceeded(f"more than {max_nodes} search nodes")
        if k == len(order):
            return 1
        j = order[k]
        cap = min((rho[i] for i in lower[j]), default=r)
        total = 0
        for v in range(cap + 1):
            rho[j] = v
            total += rec(k + 1)
        return total

    return rec(0)


# --- pipeline ---------------------------------------------------------------


@dataclass
class Stage:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class PipelineReport:
    name: str
    m: int | None = None
    num_vertices: int = 0
    num_facets: int = 0
    sigma: tuple[int, ...] = ()
    tau: tuple[int, ...] = ()
    h_triangulation: tuple[int, ...] | None = None
    h_counting: tuple[int, ...] | None = None
    counted_upto: int | None = None
    d: int | None = None
    g_vector: tuple[int, ...] = ()
    stages: list[Stage] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.stages.append(Stage(name, bool(ok), detail))
        return bool(ok)

    def stage(self, name: str) -> Stage | None:
        return next((s for s in self.stages if s.name == name), None)

    @property
    def passed(self) -> bool:
        return bool(self.stages) and all(s.ok for s in self.stages)

    @property
    def failed(self) -> list[str]:
        return [s.name for s in self.stages if not s.ok]

    @property
    def h(self) -> tuple[int, ...] | None:
        return self.h_triangulation if self.h_triangulation is not None else self.h_counting

    _SECTIONS = {
        "HYPOTHESES": ("valid polytope", "special simplex", "codimension rule", "sigma pulled first", "compressed"),
        "H-NUMERATOR": ("triangulation route", "counting route", "routes agree"),
        "G-THEOREM": ("h_0 = 1", "degree d = m - n + 1", "symmetric", "unimodal", "g is an M-vector"),
    }

    def to_text(self) -> str:
        def fmt(s: Stage) -> str:
            tail = f"  {s.detail}" if s.detail else ""
            return f"  [{'ok' if s.ok else 'FAIL'}] {s.name}{tail}"

        lines = [f"polytope: {self.name}"]
        if self.m is not None:
            lines.append(f"  m = {self.m}, {self.num_vertices} vertices, {self.num_facets} facets")
        placed = set()
        for title, names in self._SECTIONS.items():
            lines.append(title)
            if title == "H-NUMERATOR" and self.h is not None:
                lines.append("  h = " + " ".join(map(str, self.h)))
                if self.m is not None:
                    lines.append(f"  denom = (1-t)^{self.m + 1}")
            if title == "G-THEOREM" and self.d is not None:
                lines.append(f"  d = {self.d}, g = " + " ".join(map(str, self.g_vector)))
            for s in self.stages:
                if s.name in names:
                    lines.append(fmt(s))
                    placed.add(s.name)
        lines.append("CONCLUSION")
        for s in self.stages:
            if s.name not in placed:
                lines.append(fmt(s))
        if self.passed:
            lines.append("  PASS")
        else:
            lines.append("  FAIL at: " + ", ".join(self.failed))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "m": self.m,
            "num_vertices": self.num_vertices,
            "num_facets": self.num_facets,
            "sigma": list(self.sigma),
            "tau": list(self.tau),
            "h_triangulation": None if self.h_triangulation is None else list(self.h_triangulation),
            "h_counting": None if self.h_counting is None else list(self.h_counting),
            "counted_upto": self.counted_upto,
            "d": self.d,
            "g_vector": list(self.g_vector),
            "stages": [{"name": s.name, "ok": s.ok, "detail": s.detail} for s in self.stages],
            "passed": self.passed,
        }

    def to_machine(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def verify_stanley_pipeline(
    P: IntegerPolytope,
    sigma: Sequence[int],
    tau: VertexOrder | None = None,
    *,
    name: str | None = None,
    count_upto: int | None = None,
    counting: bool = True,
    expected: dict[str, IntPolynomial] | None = None,
    budgets: Budgets = Budgets(),
    backend: str | None = None,
    threads: int | None = None,
) -> PipelineReport:
    """Check every hypothesis and conclusion for ``(P, sigma, tau)``, gathering all failures.

    ``tau`` defaults to index order with ``sigma`` moved to the end.
    ``count_upto`` caps the counting route (default ``m + 1``); below ``m``
    only the leading numerator coefficients are compared. ``expected`` adds
    named equality checks against the final numerator.
    """
    sigma = tuple(sigma)
    rep = PipelineReport(name or P.name or "polytope")
    val = validate_polytope(P, max_faces=budgets.max_faces)
    if not rep.add("valid polytope", val.valid, "" if val.valid else val.message):
        return rep
    m = P.dimension
    rep.m, rep.num_vertices, rep.num_facets = m, P.num_vertices, len(P.facets)
    rep.sigma = sigma
    if tau is None:
        tau = VertexOrder.with_last(P.num_vertices, sigma)
    rep.tau = tau.order
    n = len(sigma)

    sigma_ok = False
    try:
        cert = verify_special_simplex(P, sigma)
        sigma_ok = rep.add("special simplex", True, f"n = {n}, every facet holds {n - 1} of {list(sigma)}")
    except SpecialSimplexError as exc:
        rep.add("special simplex", False, str(exc))
    lattice = faces_of(P, max_faces=budgets.max_faces)
    if sigma_ok:
        bad = codimension_violations(lattice, sigma)
        rep.add("codimension rule", not bad, f"{len(bad)} violations" if bad else "")
    tail = set(tau.order[len(tau.order) - n :]) if n else set()
    rep.add("sigma pulled first", sorted(tau.order) == list(range(P.num_vertices)) and tail == set(sigma),
            "" if tail == set(sigma) else "sigma must occupy the last positions of the order")

    delta = None
    try:
        delta = pulling_triangulation(face_complex(lattice), tau)
        uni = is_unimodular_triangulation(P, delta)
        rep.add("compressed", uni.ok, f"{len(delta)} unimodular simplices" if uni.ok
                else f"simplex {list(uni.witness)} has volume {uni.volume}")
        if uni.ok:
            rep.h_triangulation = delta.h_polynomial().coeffs
            rep.add("triangulation route", True)
        else:
            delta = None
    except ValueError as exc:
        rep.add("compressed", False, str(exc))

    if counting:
        top = m + 1 if count_upto is None else min(count_upto, m + 1)
        try:
            s = series_by_counting(
                P, m, upto=top, max_nodes=budgets.max_nodes, max_dilate=budgets.max_dilate,
                backend=backend, threads=threads,
            )
            rep.h_counting = s.h
            rep.counted_upto = top
            rep.add("counting route", True, f"r = 0..{top}")
            if rep.h_triangulation is not None:
                k = top + 1 if top < m else m + 1
                tri = (list(rep.h_triangulation) + [0] * (m + 1))[:k]
                cnt = (list(rep.h_counting) + [0] * (m + 1))[:k]
                rep.add("routes agree", tri == cnt, "" if tri == cnt else f"{tri} vs {cnt}")
        except NotEhrhartSequence as exc:
            rep.add("counting route", False, str(exc))
        except BudgetExceeded as exc:
            rep.add("counting route", False, f"budget: {exc}")

    h = rep.h
    if h is not None:
        if rep.h_triangulation is None and rep.counted_upto is not None and rep.counted_upto < m:
            rep.add("h complete", False, "counting route truncated and no triangulation to confirm the tail")
        d = len(h) - 1
        rep.d = d
        verdict = g_theorem_check(h)
        rep.g_vector = verdict.g_vector
        rep.add("h_0 = 1", h[0] == 1)
        if sigma_ok:
            rep.add("degree d = m - n + 1", d == m - n + 1, f"deg h = {d}, m - n + 1 = {m - n + 1}")
        rep.add("symmetric", verdict.symmetric)
        rep.add("unimodal", verdict.unimodal)
        rep.add("g is an M-vector", verdict.g_is_m_vector,
                "" if verdict.g_is_m_vector else f"fails at g_{verdict.m_vector_violation}")
    for label, poly in (expected or {}).items():
        rep.add(label, h is not None and IntPolynomial(tuple(h)) == poly,
                f"expected {' '.join(map(str, poly.coeffs))}")

    if sigma_ok and delta is not None and tail == set(sigma):
        jd = join_decomposition_check(P, sigma, tau, lattice=lattice, delta_tau=delta)
        rep.add("join decomposition", jd.join_ok, "" if jd.join_ok else jd.witness)
        rep.add("quotient sphere", jd.sphere_ok, "" if jd.sphere_ok else jd.witness)
    elif not sigma_ok:
        rep.add("join decomposition", False, "needs a special simplex")
    return rep
