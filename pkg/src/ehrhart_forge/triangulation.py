"""Pulling (reverse lexicographic) triangulations and simplicial complexes.

Simplices are vertex sets only; coordinates enter through the face lattice
that defines which vertex sets are faces, and through the unimodularity
test. Vertex labels are the vertex indices of the underlying polytope.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .exact_math import IntPolynomial, h_coefficients
from .polytope import (
    FaceLattice,
    IntegerPolytope,
    LatticeBasis,
    QuotientMismatch,
    SpecialSimplexError,
    faces_of,
    mask_of,
    members,
    quotient_polytope,
    saturated_lattice_basis,
    simplex_volume,
    verify_special_simplex,
)

__all__ = [
    "SimplicialComplex",
    "PolytopalComplex",
    "VertexOrder",
    "face_complex",
    "boundary_complex",
    "restrict",
    "pulling_triangulation",
    "pulling_triangulation_by_flags",
    "f_vector",
    "h_polynomial",
    "simplicial_join",
    "is_unimodular_triangulation",
    "normalized_volume",
    "is_compressed_ordering",
    "JoinDecomposition",
    "join_decomposition_check",
    "NotATriangulation",
]


def _maximal_masks(masks: Iterable[int]) -> list[int]:
    ordered = sorted(set(masks), key=lambda m: -bin(m).count("1"))
    kept: list[int] = []
    by_vertex: dict[int, list[int]] = {}
    for m in ordered:
        if m == 0:
            if not kept:
                kept.append(0)
            continue
        low = (m & -m).bit_length() - 1
        if any(m & ~k == 0 for k in by_vertex.get(low, ())):
            continue
        kept.append(m)
        for v in members(m):
            by_vertex.setdefault(v, []).append(m)
    return kept


class SimplicialComplex:
    """Abstract simplicial complex stored by its maximal faces.

    ``SimplicialComplex([()])`` is the complex whose only face is the empty
    set (h-polynomial 1); ``SimplicialComplex([])`` has no faces at all.
    """

    __slots__ = ("maximal_faces", "vertex_labels", "_bits")

    def __init__(self, maximal_faces: Iterable[Iterable[int]], vertex_labels: Iterable[int] | None = None):
        faces = [frozenset(f) for f in maximal_faces]
        labels = sorted(set().union(*faces)) if faces else []
        if vertex_labels is not None:
            extra = set(labels) - set(vertex_labels)
            if extra:
                raise ValueError(f"faces use unknown vertices {sorted(extra)}")
            labels = sorted(set(vertex_labels))
        bits = {v: i for i, v in enumerate(labels)}
        masks = _maximal_masks(mask_of(bits[v] for v in f) for f in faces)
        self._bits = bits
        self.vertex_labels = tuple(labels)
        self.maximal_faces = frozenset(frozenset(labels[i] for i in members(m)) for m in masks)

    @classmethod
    def from_masks(cls, masks: Iterable[int]) -> "SimplicialComplex":
        return cls(members(m) for m in masks)

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.maximal_faces == other.maximal_faces

    def __hash__(self) -> int:
        return hash(self.maximal_faces)

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.maximal_faces)} maximal faces, dim {self.dimension})"

    def __len__(self) -> int:
        return len(self.maximal_faces)

    @property
    def dimension(self) -> int:
        if not self.maximal_faces:
            return -2
        return max(len(f) for f in self.maximal_faces) - 1

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.maximal_faces}) <= 1

    def __contains__(self, face: Iterable[int]) -> bool:
        s = frozenset(face)
        return any(s <= f for f in self.maximal_faces)

    def sorted_faces(self) -> list[tuple[int, ...]]:
        return sorted((tuple(sorted(f)) for f in self.maximal_faces), key=lambda t: (len(t), t))

    def all_faces(self) -> set[frozenset[int]]:
        """Downward closure, including the empty face when the complex is nonempty."""
        labels = self.vertex_labels
        out = set()
        for m in self._face_masks():
            out.add(frozenset(labels[i] for i in members(m)))
        return out

    def _face_masks(self) -> set[int]:
        seen: set[int] = set()
        for f in self.maximal_faces:
            top = mask_of(self._bits[v] for v in f)
            sub = top
            while True:
                if sub in seen and sub != top:
                    pass
                seen.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & top
        return seen

    def f_vector(self) -> tuple[int, ...]:
        d = self.dimension + 1
        counts = [0] * max(d, 0)
        for m in self._face_masks():
            k = bin(m).count("1")
            if k:
                counts[k - 1] += 1
        return tuple(counts)

    def h_polynomial(self) -> IntPolynomial:
        if not self.maximal_faces:
            return IntPolynomial()
        d = self.dimension + 1
        return IntPolynomial(tuple(h_coefficients(self.f_vector(), d)))

    def relabel(self, mapping) -> "SimplicialComplex":
        return SimplicialComplex(
            ([mapping[v] for v in f] for f in self.maximal_faces),
            [mapping[v] for v in self.vertex_labels],
        )


def f_vector(delta: SimplicialComplex) -> tuple[int, ...]:
    return delta.f_vector()


def h_polynomial(delta: SimplicialComplex) -> IntPolynomial:
    return delta.h_polynomial()


def simplicial_join(d1: SimplicialComplex, d2: SimplicialComplex) -> SimplicialComplex:
    """Join on disjoint vertex sets; checks that h-polynomials multiply."""
    if set(d1.vertex_labels) & set(d2.vertex_labels):
        raise ValueError("join needs disjoint vertex labels")
    joined = SimplicialComplex(
        (a | b for a in d1.maximal_faces for b in d2.maximal_faces),
        d1.vertex_labels + d2.vertex_labels,
    )
    if joined.h_polynomial() != d1.h_polynomial() * d2.h_polynomial():
        raise AssertionError("h(D1 * D2) != h(D1) h(D2)")
    return joined


def simplex(vertices: Iterable[int]) -> SimplicialComplex:
    return SimplicialComplex([tuple(vertices)])


@dataclass(frozen=True)
class PolytopalComplex:
    """A down-closed family of faces of one polytope's face lattice."""

    lattice: FaceLattice
    masks: frozenset[int]

    @property
    def polytope(self) -> IntegerPolytope:
        return self.lattice.polytope

    @property
    def vertices(self) -> tuple[int, ...]:
        acc = 0
        for m in self.masks:
            acc |= m
        return members(acc)

    def maximal_faces(self) -> list[int]:
        return sorted(
            (m for m in self.masks if not any(p in self.masks for p in self.lattice.parents[m])),
            key=lambda m: (bin(m).count("1"), members(m)),
        )

    @property
    def dimension(self) -> int:
        return max((self.lattice.by_mask[m].dim for m in self.masks), default=-1)

    @property
    def is_pure(self) -> bool:
        return len({self.lattice.by_mask[m].dim for m in self.maximal_faces()}) <= 1

    def __len__(self) -> int:
        return len(self.masks)


def face_complex(P: IntegerPolytope | FaceLattice) -> PolytopalComplex:
    lattice = P if isinstance(P, FaceLattice) else faces_of(P)
    return PolytopalComplex(lattice, frozenset(lattice.by_mask))


def boundary_complex(P: IntegerPolytope | FaceLattice) -> PolytopalComplex:
    lattice = P if isinstance(P, FaceLattice) else faces_of(P)
    top = lattice.polytope.full_mask
    return PolytopalComplex(lattice, frozenset(m for m in lattice.by_mask if m != top))


def restrict(F: PolytopalComplex, sigma: Iterable[int]) -> PolytopalComplex:
    """Faces of ``F`` containing none of the vertices in ``sigma``."""
    smask = mask_of(sigma)
    return PolytopalComplex(F.lattice, frozenset(m for m in F.masks if m & smask == 0))


class VertexOrder:
    """Linear order on vertices, listed first to last.

    The last vertex is the one pulled first. In the labelling
    ``(v_p, ..., v_1)`` the entry ``v_1`` sits at the end.
    """

    __slots__ = ("order", "position")

    def __init__(self, order: Sequence[int]):
        self.order = tuple(order)
        if len(set(self.order)) != len(self.order):
            raise ValueError("vertex order repeats a vertex")
        self.position = {v: i for i, v in enumerate(self.order)}

    def __repr__(self) -> str:
        return f"VertexOrder({self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, VertexOrder) and self.order == other.order

    def __hash__(self) -> int:
        return hash(self.order)

    def last_of(self, mask: int) -> int:
        pos = self.position
        return max(members(mask), key=pos.__getitem__)

    def induced(self, keep: Iterable[int]) -> "VertexOrder":
        keep = set(keep)
        return VertexOrder([v for v in self.order if v in keep])

    def covers(self, vertices: Iterable[int]) -> bool:
        return set(vertices) <= set(self.order)

    @classmethod
    def with_last(cls, num_vertices: int, last: Sequence[int]) -> "VertexOrder":
        """Index order on the other vertices, then ``last`` (so ``last[-1]`` is pulled first)."""
        tail = set(last)
        return cls([v for v in range(num_vertices) if v not in tail] + list(last))


def pulling_triangulation(F: PolytopalComplex, tau: VertexOrder) -> SimplicialComplex:
    """Pulling triangulation of ``F`` with respect to ``tau``.

    Follows the recursion ``D(F) = D(F minus v) ∪ cones from v``: the last
    remaining vertex ``v`` is coned over the triangulated facets (avoiding
    ``v``) of every maximal face that contains it, then ``v`` and its star
    are deleted and the loop continues on what is left.
    """
    if not tau.covers(F.vertices):
        raise ValueError("vertex order does not cover the complex")
    lat = F.lattice
    memo: dict[int, tuple[int, ...]] = {}

    def pull_face(face: int) -> tuple[int, ...]:
        # maximal simplices of the face complex of one polytope face; the
        # part triangulating faces away from v lies inside these cones
        got = memo.get(face)
        if got is not None:
            return got
        if face & (face - 1) == 0:
            res: tuple[int, ...] = (face,)
        else:
            vbit = 1 << tau.last_of(face)
            res = tuple(s | vbit for g in lat.children[face] if not g & vbit for s in pull_face(g))
        memo[face] = res
        return res

    current = set(F.masks)
    simplices: list[int] = []
    while current:
        present = 0
        for m in current:
            present |= m
        v = tau.last_of(present)
        vbit = 1 << v
        star = [m for m in current if m & vbit]
        for m in star:
            if any(p in current for p in lat.parents[m]):
                continue
            if m == vbit:
                simplices.append(vbit)
            else:
                simplices.extend(s | vbit for g in lat.children[m] if not g & vbit for s in pull_face(g))
        current.difference_update(star)
    if not simplices:
        return SimplicialComplex([()])
    return SimplicialComplex.from_masks(_maximal_masks(simplices))


def pulling_triangulation_by_flags(F: PolytopalComplex, tau: VertexOrder) -> SimplicialComplex:
    """Pulling triangulation read off maximal flags of faces.

    ``{w_0, ..., w_t}`` is a maximal simplex when some saturated chain
    ``F_0 ⊂ ... ⊂ F_t`` from a vertex to a maximal face of ``F`` has ``w_j``
    the last vertex of ``F_j`` and ``w_j`` outside ``F_(j-1)``. Every such
    chain is walked explicitly, top down.
    """
    if not tau.covers(F.vertices):
        raise ValueError("vertex order does not cover the complex")
    lat = F.lattice
    found: set[int] = set()
    for top in F.maximal_faces():
        stack = [(top, 0)]
        while stack:
            face, acc = stack.pop()
            w = tau.last_of(face)
            acc |= 1 << w
            if lat.by_mask[face].dim == 0:
                found.add(acc)
                continue
            for g in lat.children[face]:
                if not g >> w & 1:
                    stack.append((g, acc))
    if not found:
        return SimplicialComplex([()])
    return SimplicialComplex.from_masks(_maximal_masks(found))


class NotATriangulation(ValueError):
    pass


@dataclass(frozen=True)
class UnimodularityResult:
    ok: bool
    witness: tuple[int, ...] | None = None
    volume: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def _check_triangulation_shape(P: IntegerPolytope, delta: SimplicialComplex) -> None:
    m = P.dimension
    if set(delta.vertex_labels) - set(range(P.num_vertices)):
        raise NotATriangulation("triangulation uses vertices outside the polytope")
    for f in delta.maximal_faces:
        if len(f) != m + 1:
            raise NotATriangulation(f"simplex {sorted(f)} is not full dimensional")


def is_unimodular_triangulation(
    P: IntegerPolytope, delta: SimplicialComplex, basis: LatticeBasis | None = None
) -> UnimodularityResult:
    """Every maximal simplex must be a lattice basis of the affine lattice of ``P``."""
    _check_triangulation_shape(P, delta)
    L = basis or saturated_lattice_basis(P)
    for f in delta.sorted_faces():
        vol = simplex_volume([P.vertices[i] for i in f], L)
        if vol != 1:
            return UnimodularityResult(False, f, vol)
    return UnimodularityResult(True)


def normalized_volume(P: IntegerPolytope, delta: SimplicialComplex, basis: LatticeBasis | None = None) -> int:
    L = basis or saturated_lattice_basis(P)
    return sum(simplex_volume([P.vertices[i] for i in f], L) for f in delta.maximal_faces)


def is_compressed_ordering(
    P: IntegerPolytope, tau: VertexOrder, lattice: FaceLattice | None = None
) -> bool:
    delta = pulling_triangulation(face_complex(lattice or P), tau)
    return is_unimodular_triangulation(P, delta).ok


@dataclass(frozen=True)
class JoinDecomposition:
    delta: SimplicialComplex
    delta_tau: SimplicialComplex
    join_ok: bool
    sphere_ok: bool
    witness: str = ""

    @property
    def iso_ok(self) -> bool:
        return self.join_ok and self.sphere_ok


def join_decomposition_check(
    P: IntegerPolytope,
    sigma: Sequence[int],
    tau: VertexOrder,
    lattice: FaceLattice | None = None,
    delta_tau: SimplicialComplex | None = None,
) -> JoinDecomposition:
    """Split the pulling triangulation along a special simplex pulled first.

    Checks that the triangulation of ``P`` is the join of ``sigma`` with the
    pulling triangulation ``D`` of the faces avoiding ``sigma``, and that
    those faces form the boundary of the quotient of ``P`` along ``sigma``
    (so ``D`` triangulates a sphere of dimension ``m - n``).
    """
    sigma = tuple(sigma)
    n = len(sigma)
    if set(tau.order[len(tau.order) - n :]) != set(sigma):
        raise ValueError("sigma must occupy the last positions of the order")
    verify_special_simplex(P, sigma)
    lattice = lattice or faces_of(P)
    F = face_complex(lattice)
    if delta_tau is None:
        delta_tau = pulling_triangulation(F, tau)
    rest = restrict(F, sigma)
    delta = pulling_triangulation(rest, tau.induced(rest.vertices))
    witness = ""
    sig = frozenset(sigma)
    expected = {s | sig for s in delta.maximal_faces}
    join_ok = set(delta_tau.maximal_faces) == expected
    if not join_ok:
        odd = sorted(set(delta_tau.maximal_faces) ^ expected, key=sorted)[0]
        witness = f"simplex {sorted(odd)} breaks the join"
    m = P.dimension
    if any(len(f) != m - n + 1 for f in delta.maximal_faces):
        join_ok = False
        witness = witness or f"triangulation of the faces avoiding sigma is not pure of dim {m - n}"
    if join_ok and simplicial_join(simplex(sigma), delta).h_polynomial() != delta.h_polynomial():
        join_ok = False
        witness = "h(sigma * D) != h(D)"
    try:
        quotient_polytope(P, sigma, lattice=lattice, verify=True)
        sphere_ok = True
    except (QuotientMismatch, ValueError) as exc:
        sphere_ok = False
        witness = witness or f"quotient: {exc}"
    return JoinDecomposition(delta, delta_tau, join_ok, sphere_ok, witness)
