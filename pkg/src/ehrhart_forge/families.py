"""Birkhoff polytopes, order polytopes and perfect-matching polytopes.

Also the poset side of the story: linear extensions, descent polynomials
and the equatorial complex of a graded poset. Posets live on ``1..m``;
order polytopes add the coordinate ``x_0 = 1`` for the adjoined minimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Iterable, Iterator, Sequence

from .exact_math import IntPolynomial
from .polytope import IntegerPolytope, members
from .triangulation import SimplicialComplex, VertexOrder

__all__ = [
    "Poset",
    "MultiGraph",
    "GraphPropertyError",
    "EnumerationLimit",
    "birkhoff",
    "birkhoff_cyclic_simplex",
    "birkhoff_default_order",
    "order_polytope",
    "order_polytope_ideals",
    "order_polytope_default_order",
    "rank_ideal_simplex",
    "linear_extensions",
    "descents",
    "eulerian_polynomial",
    "equatorial_ideals",
    "equatorial_complex",
    "posets_up_to_isomorphism",
    "matching_polytope",
    "matching_default_order",
    "ones_minimal_element",
    "monoid_generation_check",
    "chain",
    "antichain",
    "cycle_graph",
    "complete_bipartite",
]

MAX_EXTENSIONS = 10**6


class EnumerationLimit(RuntimeError):
    pass


class Poset:
    """Finite poset on ``1..m`` given by its cover relations ``(i, j)``, i covered by j."""

    __slots__ = ("m", "covers", "_below", "__dict__")

    def __init__(self, m: int, covers: Iterable[tuple[int, int]]):
        if m < 0:
            raise ValueError("poset size must be nonnegative")
        covers = frozenset((int(i), int(j)) for i, j in covers)
        for i, j in covers:
            if not (1 <= i <= m and 1 <= j <= m):
                raise ValueError(f"cover ({i}, {j}) outside 1..{m}")
            if i == j:
                raise ValueError(f"cover ({i}, {j}) is a loop")
        self.m = m
        self.covers = covers
        self._below = self._closure()
        for i, j in covers:
            # (i, j) is implied if i lies below another lower cover of j
            if any(k != i and (self._below[k] >> i) & 1 for k, jj in covers if jj == j):
                raise ValueError(f"cover ({i}, {j}) is implied by others")

    def _closure(self) -> list[int]:
        below = [0] * (self.m + 1)  # bit i set in below[j] iff i < j
        lower = {j: [i for i, jj in self.covers if jj == j] for j in range(1, self.m + 1)}
        state = [0] * (self.m + 1)

        def visit(j):
            if state[j] == 2:
                return
            if state[j] == 1:
                raise ValueError("cover relations contain a cycle")
            state[j] = 1
            acc = 0
            for i in lower[j]:
                visit(i)
                acc |= below[i] | (1 << i)
            below[j] = acc
            state[j] = 2

        for j in range(1, self.m + 1):
            visit(j)
        return below

    @classmethod
    def from_relations(cls, m: int, relations: Iterable[tuple[int, int]]) -> "Poset":
        """Build from any generating set of relations ``i < j`` (reduced to covers)."""
        rel = set((int(i), int(j)) for i, j in relations)
        tmp = cls.__new__(cls)
        tmp.m = m
        tmp.covers = frozenset(rel)
        for i, j in rel:
            if i == j or not (1 <= i <= m and 1 <= j <= m):
                raise ValueError(f"bad relation ({i}, {j})")
        below = tmp._closure()
        covers = [
            (i, j)
            for i in range(1, m + 1)
            for j in range(1, m + 1)
            if (below[j] >> i) & 1 and not any((below[j] >> k) & 1 and (below[k] >> i) & 1 for k in range(1, m + 1))
        ]
        return cls(m, covers)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poset) and self.m == other.m and self.covers == other.covers

    def __hash__(self) -> int:
        return hash((self.m, self.covers))

    def __repr__(self) -> str:
        return f"Poset({self.m}, {sorted(self.covers)})"

    def leq(self, i: int, j: int) -> bool:
        return i == j or bool((self._below[j] >> i) & 1)

    def less(self, i: int, j: int) -> bool:
        return bool((self._below[j] >> i) & 1)

    def down_mask(self, j: int) -> int:
        """Strict down-set of ``j`` as a bitmask over ``1..m``."""
        return self._below[j]

    def lower_covers(self, j: int) -> list[int]:
        return sorted(i for i, jj in self.covers if jj == j)

    def upper_covers(self, i: int) -> list[int]:
        return sorted(j for ii, j in self.covers if ii == i)

    @cached_property
    def minimal(self) -> tuple[int, ...]:
        return tuple(j for j in range(1, self.m + 1) if not self._below[j])

    @cached_property
    def maximal(self) -> tuple[int, ...]:
        has_upper = {i for i, _ in self.covers}
        return tuple(i for i in range(1, self.m + 1) if i not in has_upper)

    @cached_property
    def height(self) -> dict[int, int]:
        """Length of the longest chain ending at each element (minimal elements 0)."""
        h: dict[int, int] = {}
        for j in sorted(range(1, self.m + 1), key=lambda x: bin(self._below[x]).count("1")):
            h[j] = max((h[i] + 1 for i in self.lower_covers(j)), default=0)
        return h

    @cached_property
    def graded(self) -> bool:
        """All maximal chains have the same length."""
        if self.m == 0:
            return True
        h = self.height
        if any(h[j] != h[i] + 1 for i, j in self.covers):
            return False
        top = {h[i] for i in self.maximal}
        return len(top) == 1

    def rank(self, i: int) -> int:
        if not self.graded:
            raise ValueError("poset is not graded")
        return self.height[i]

    @property
    def num_ranks(self) -> int:
        """Number of ranks of a graded poset; ``n`` in the special simplex is this plus one."""
        if not self.graded:
            raise ValueError("poset is not graded")
        return max(self.height.values(), default=-1) + 1

    def ranks(self) -> list[list[int]]:
        out = [[] for _ in range(self.num_ranks)]
        for i in range(1, self.m + 1):
            out[self.height[i]].append(i)
        return out

    @cached_property
    def naturally_labeled(self) -> bool:
        return all(i < j for i, j in self.covers)

    def ideals(self) -> list[int]:
        """All order ideals of ``1..m`` as bitmasks (bit i for element i), sorted by (size, members)."""
        return sorted(set(self._all_ideals()), key=lambda I: (bin(I).count("1"), members(I)))

    def _all_ideals(self) -> Iterator[int]:
        order = sorted(range(1, self.m + 1), key=lambda x: (bin(self._below[x]).count("1"), x))

        def rec(k: int, I: int):
            if k == len(order):
                yield I
                return
            j = order[k]
            yield from rec(k + 1, I)
            need = self._below[j]
            if I & need == need:
                yield from rec(k + 1, I | (1 << j))

        yield from rec(0, 0)

    def relabel(self, perm: Sequence[int]) -> "Poset":
        """Rename element ``perm[k-1]`` to ``k``."""
        new = {old: k + 1 for k, old in enumerate(perm)}
        return Poset(self.m, ((new[i], new[j]) for i, j in self.covers))

    def relabel_naturally(self) -> "Poset":
        ext = next(_extensions(self, 1))
        return self.relabel(ext)

    def canonical_form(self) -> tuple[tuple[int, int], ...]:
        """Isomorphism invariant: least sorted cover list over all natural relabelings."""
        best = None
        for ext in _extensions(self, MAX_EXTENSIONS):
            new = {old: k + 1 for k, old in enumerate(ext)}
            cand = tuple(sorted((new[i], new[j]) for i, j in self.covers))
            if best is None or cand < best:
                best = cand
        return best


def chain(m: int) -> Poset:
    return Poset(m, ((i, i + 1) for i in range(1, m)))


def antichain(m: int) -> Poset:
    return Poset(m, ())


def _extensions(P: Poset, limit: int) -> Iterator[tuple[int, ...]]:
    m = P.m
    below = [P.down_mask(j) for j in range(m + 1)]
    out: list[int] = []
    count = 0

    def rec(placed: int):
        nonlocal count
        if len(out) == m:
            count += 1
            if count > limit:
                raise EnumerationLimit(f"more than {limit} linear extensions")
            yield tuple(out)
            return
        for j in range(1, m + 1):
            if not (placed >> j) & 1 and below[j] & placed == below[j]:
                out.append(j)
                yield from rec(placed | (1 << j))
                out.pop()

    yield from rec(0)


def linear_extensions(P: Poset, limit: int = MAX_EXTENSIONS) -> list[tuple[int, ...]]:
    """Permutations ``w`` of ``1..m`` with ``w_i < w_j`` in P forcing ``i < j``, lexicographic."""
    return list(_extensions(P, limit))


def descents(w: Sequence[int]) -> int:
    return sum(1 for a, b in zip(w, w[1:]) if a > b)


def eulerian_polynomial(P: Poset, limit: int = MAX_EXTENSIONS) -> IntPolynomial:
    if not P.naturally_labeled:
        raise ValueError("poset is not naturally labeled")
    coeffs = [0] * max(P.m, 1)
    for w in _extensions(P, limit):
        coeffs[descents(w)] += 1
    return IntPolynomial(tuple(coeffs))


def _is_equatorial(P: Poset, g: Sequence[int]) -> bool:
    """``g`` indexed by element (``g[0]`` unused)."""
    if P.m == 0:
        return False
    if min(g[1:]) != 0:
        return False
    h = P.height
    levels = P.num_ranks
    for r in range(1, levels):
        if not any(h[i] == r - 1 and g[i] == g[j] for i, j in P.covers if h[j] == r):
            return False
    return True


def _require_graded(P: Poset) -> None:
    if not P.graded:
        raise ValueError("poset is not graded")


def _indicator(P: Poset, masks: Iterable[int]) -> list[int]:
    g = [0] * (P.m + 1)
    for I in masks:
        for i in members(I):
            g[i] += 1
    return g


def equatorial_ideals(P: Poset) -> list[int]:
    """Nonempty equatorial ideals of ``P`` as bitmasks, in (size, members) order."""
    _require_graded(P)
    return [I for I in P.ideals() if I and _is_equatorial(P, _indicator(P, [I]))]


def equatorial_complex(P: Poset) -> SimplicialComplex:
    """Complex of equatorial chains of nonempty equatorial ideals, labelled by ideal bitmask."""
    _require_graded(P)
    verts = equatorial_ideals(P)
    faces: list[tuple[int, ...]] = []

    def extend(chain_: list[int], g: list[int], start: int):
        grew = False
        for k in range(start, len(verts)):
            J = verts[k]
            top = chain_[-1] if chain_ else 0
            if J == top or J & top != top:
                continue
            g2 = g[:]
            for i in members(J):
                g2[i] += 1
            # a face of a chain is a chain, so only equatorial prefixes can grow
            if not _is_equatorial(P, g2):
                continue
            grew = True
            chain_.append(J)
            extend(chain_, g2, k + 1)
            chain_.pop()
        if not grew:
            faces.append(tuple(chain_))

    extend([], [0] * (P.m + 1), 0)
    return SimplicialComplex(faces, verts)


def posets_up_to_isomorphism(m: int) -> list[Poset]:
    """One naturally labeled representative per isomorphism class on ``m`` elements."""
    layer: list[Poset] = [Poset(0, ())]
    for k in range(m):
        nxt: dict[tuple, Poset] = {}
        for P in layer:
            for I in P.ideals():
                # new element k+1 sits strictly above the ideal I
                new_covers = set(P.covers)
                maxi = [i for i in members(I) if not any(P.less(i, j) for j in members(I))]
                new_covers.update((i, k + 1) for i in maxi)
                Q = Poset(k + 1, new_covers)
                key = Q.canonical_form()
                if key not in nxt:
                    nxt[key] = Poset(k + 1, key)
        layer = [nxt[key] for key in sorted(nxt)]
    return layer


# --- Birkhoff polytopes -----------------------------------------------------


def _perm_matrix(perm: Sequence[int]) -> tuple[int, ...]:
    n = len(perm)
    return tuple(1 if perm[i] == j else 0 for i in range(n) for j in range(n))


def birkhoff(n: int) -> IntegerPolytope:
    """Doubly stochastic ``n x n`` matrices; vertices are permutation matrices in lexicographic order."""
    if n < 1:
        raise ValueError("n must be positive")
    verts = sorted(_perm_matrix(p) for p in permutations(range(n)))
    q = n * n
    ineqs = []
    for k in range(q):
        a = [0] * q
        a[k] = -1
        ineqs.append((tuple(a), 0))
    eqs = []
    for i in range(n):
        eqs.append((tuple(1 if k // n == i else 0 for k in range(q)), 1))
        eqs.append((tuple(1 if k % n == i else 0 for k in range(q)), 1))
    return IntegerPolytope.from_inequalities(verts, ineqs, eqs, name=f"B_{n}")


def birkhoff_cyclic_simplex(n: int, P: IntegerPolytope | None = None) -> tuple[int, ...]:
    """Indices of the powers of the full cycle ``i -> i + 1 (mod n)``."""
    P = P or birkhoff(n)
    out = []
    for s in range(n):
        out.append(P.vertex_index(_perm_matrix([(i + s) % n for i in range(n)])))
    return tuple(out)


def birkhoff_default_order(n: int, P: IntegerPolytope | None = None) -> VertexOrder:
    P = P or birkhoff(n)
    return VertexOrder.with_last(P.num_vertices, birkhoff_cyclic_simplex(n, P))


# --- order polytopes --------------------------------------------------------


def order_polytope_ideals(P: Poset) -> list[int]:
    """Vertex ideals of the order polytope, as bitmasks over ``1..m`` (vertex = {0} plus ideal)."""
    return P.ideals()


def order_polytope(P: Poset) -> IntegerPolytope:
    """Order polytope in ``x_0 = 1``; vertex ``k`` is the indicator of ``{0} ∪ ideals()[k]``."""
    m = P.m
    verts = [tuple([1] + [(I >> i) & 1 for i in range(1, m + 1)]) for I in P.ideals()]

    def row(pos: int, neg: int) -> tuple[int, ...]:
        # x_neg - x_pos <= 0, i.e. x_pos >= x_neg
        a = [0] * (m + 1)
        a[neg] += 1
        a[pos] -= 1
        return tuple(a)

    ineqs = [(row(i, j), 0) for i, j in sorted(P.covers)]
    ineqs += [(row(0, j), 0) for j in P.minimal]
    for i in P.maximal:
        a = [0] * (m + 1)
        a[i] = -1
        ineqs.append((tuple(a), 0))
    eq = [(tuple([1] + [0] * m), 1)]
    return IntegerPolytope.from_inequalities(verts, ineqs, eq, name=f"O(poset on {m})")


def rank_ideal_simplex(P: Poset) -> tuple[int, ...]:
    """Vertices ``v_1..v_n``: ideals of elements of rank below ``i - 1`` in ``P``, smallest first."""
    _require_graded(P)
    ideals = P.ideals()
    index = {I: k for k, I in enumerate(ideals)}
    h = P.height
    out = []
    for r in range(P.num_ranks + 1):
        I = 0
        for i in range(1, P.m + 1):
            if h[i] < r:
                I |= 1 << i
        out.append(index[I])
    return tuple(out)


def order_polytope_default_order(P: Poset, sigma: Sequence[int] | None = None) -> VertexOrder:
    """Larger ideals first, so the smallest ideal is pulled first; ``sigma`` forced to the end.

    With ``sigma`` given, its entries keep their given order at the end of the
    order, so the first entry of ``sigma`` is pulled last.
    """
    p = len(P.ideals())
    body = list(range(p - 1, -1, -1))
    if sigma is None:
        return VertexOrder(body)
    s = set(sigma)
    return VertexOrder([v for v in body if v not in s] + list(reversed(tuple(sigma))))


# --- graphs ---------------------------------------------------------------


class GraphPropertyError(ValueError):
    pass


@dataclass(frozen=True)
class MultiGraph:
    """Vertices ``0..p-1``; ``edges`` lists endpoint pairs, repeated for multi-edges."""

    p: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        for u, v in self.edges:
            if not (0 <= u < self.p and 0 <= v < self.p):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{self.p - 1}")

    @property
    def q(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        # a loop counts once toward its vertex sum
        return sum(1 for e in self.edges if v in e)

    @property
    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges)

    @property
    def regular_degree(self) -> int | None:
        degs = {self.degree(v) for v in range(self.p)}
        return degs.pop() if len(degs) == 1 else None

    @property
    def connected(self) -> bool:
        if self.p == 0:
            return True
        adj = {v: set() for v in range(self.p)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.p

    @property
    def bipartition(self) -> tuple[int, ...] | None:
        """A 0/1 color per vertex, or None when some odd cycle (or loop) exists."""
        color = [-1] * self.p
        adj = {v: [] for v in range(self.p)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for s in range(self.p):
            if color[s] >= 0:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if color[w] < 0:
                        color[w] = 1 - color[u]
                        stack.append(w)
                    elif color[w] == color[u]:
                        return None
        return tuple(color)

    def require_magic_ready(self) -> int:
        """Check the graph is loopless, regular, bipartite and connected; returns the degree."""
        if self.has_loops:
            raise GraphPropertyError("graph has loops")
        deg = self.regular_degree
        if deg is None:
            raise GraphPropertyError("graph not regular")
        if self.bipartition is None:
            raise GraphPropertyError("graph not bipartite")
        if not self.connected:
            raise GraphPropertyError("graph not connected")
        if deg == 0:
            raise GraphPropertyError("graph has no edges")
        return deg

    def perfect_matchings(self) -> list[tuple[int, ...]]:
        """Edge index sets of all perfect matchings."""
        inc = {v: [k for k, e in enumerate(self.edges) if v in e] for v in range(self.p)}
        out = []

        def rec(covered: int, chosen: list[int]):
            if covered == (1 << self.p) - 1:
                out.append(tuple(sorted(chosen)))
                return
            v = next(u for u in range(self.p) if not (covered >> u) & 1)
            for k in inc[v]:
                a, b = self.edges[k]
                w = b if a == v else a
                if w == v or (covered >> w) & 1:
                    continue
                chosen.append(k)
                rec(covered | (1 << v) | (1 << w), chosen)
                chosen.pop()

        rec(0, [])
        return out


def cycle_graph(p: int) -> MultiGraph:
    return MultiGraph(p, tuple((i, (i + 1) % p) for i in range(p)))


def complete_bipartite(a: int, b: int) -> MultiGraph:
    return MultiGraph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def matching_polytope(G: MultiGraph) -> IntegerPolytope:
    """Perfect-matching polytope; each vertex sum is 1 and every edge is nonnegative."""
    G.require_magic_ready()
    q = G.q
    verts = sorted(
        (tuple(1 if k in M else 0 for k in range(q)) for M in G.perfect_matchings()),
        reverse=False,
    )
    ineqs = []
    for k in range(q):
        a = [0] * q
        a[k] = -1
        ineqs.append((tuple(a), 0))
    eqs = []
    for v in range(G.p):
        eqs.append((tuple(1 if v in e else 0 for e in G.edges), 1))
    return IntegerPolytope.from_inequalities(verts, ineqs, eqs, name=f"matchings({G.p}, {q})")


def matching_default_order(P: IntegerPolytope, sigma: Sequence[int]) -> VertexOrder:
    """Index order (lexicographic on indicator vectors) with ``sigma`` forced last."""
    return VertexOrder.with_last(P.num_vertices, sigma)


def ones_minimal_element(obj) -> tuple[tuple[int, ...], int] | None:
    """The all-ones vector and its grading when it is a valid minimal element.

    For a graph: available exactly when the graph is regular, graded by the
    degree. For a polytope: every facet must be a coordinate facet
    ``x_k >= 0`` and the all-ones vector must lie in the dilate ``L P`` for a
    positive integer ``L``.
    """
    if isinstance(obj, MultiGraph):
        deg = obj.regular_degree
        if deg is None or deg == 0:
            return None
        return tuple([1] * obj.q), deg
    P: IntegerPolytope = obj
    q = P.ambient_dim
    for a, b in P.facets:
        if b != 0 or sum(1 for x in a if x) != 1 or min(a) >= 0:
            return None
    ones = [1] * q
    lam = None
    for c, e in P.equalities:
        s = sum(c)
        if e == 0:
            if s != 0:
                return None
            continue
        if s % e or s // e <= 0:
            return None
        if lam is None:
            lam = s // e
        elif lam != s // e:
            return None
    if lam is None:
        return None
    if not P.contains(ones, lam):
        return None
    return tuple(ones), lam


def monoid_generation_check(P: IntegerPolytope, degree_bound: int, **count_kw) -> bool:
    """Every point of ``rP`` for ``r <= degree_bound`` is a sum of ``r`` vertices."""
    from .ehrhart import lattice_points

    verts = P.vertices
    for r in range(1, degree_bound + 1):
        memo: dict[tuple[tuple[int, ...], int], bool] = {}

        def splits(x: tuple[int, ...], k: int) -> bool:
            if k == 0:
                return not any(x)
            key = (x, k)
            if key in memo:
                return memo[key]
            ok = False
            for v in verts:
                y = tuple(a - b for a, b in zip(x, v))
                if P.contains(y, k - 1) and splits(y, k - 1):
                    ok = True
                    break
            memo[key] = ok
            return ok

        for x in lattice_points(P, r, **count_kw):
            if not splits(tuple(x), r):
                return False
    return True
