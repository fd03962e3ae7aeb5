"""Integer polytopes carried as paired vertex and facet descriptions.

Nothing here computes a convex hull. Builders supply both descriptions;
:func:`validate_polytope` checks that they agree, and the face lattice is
generated by intersecting facet tight sets. Vertex sets are bitmasks over
vertex indices internally and ``frozenset`` at the API boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg

__all__ = [
    "IntegerPolytope",
    "ValidationReport",
    "LatticeBasis",
    "Face",
    "FaceLattice",
    "SpecialSimplexCertificate",
    "SpecialSimplexError",
    "SearchInconclusive",
    "QuotientPolytope",
    "QuotientMismatch",
    "FaceBudgetExceeded",
    "validate_polytope",
    "saturated_lattice_basis",
    "is_unimodular_simplex",
    "faces_of",
    "verify_special_simplex",
    "codimension_violations",
    "find_special_simplex",
    "quotient_polytope",
    "mask_of",
    "members",
]

MAX_FACES = 10**6

Point = tuple[int, ...]
Halfspace = tuple[tuple[int, ...], int]


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _dot(a: Sequence[int], x: Sequence[int]) -> int:
    return sum(p * q for p, q in zip(a, x))


@dataclass(frozen=True)
class IntegerPolytope:
    """``conv(vertices)``, also described by ``a.x <= b`` facets and ``c.x = e`` equalities."""

    ambient_dim: int
    vertices: tuple[Point, ...]
    facets: tuple[Halfspace, ...]
    equalities: tuple[Halfspace, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(tuple(int(x) for x in v) for v in self.vertices))
        object.__setattr__(
            self, "facets", tuple((tuple(int(x) for x in a), int(b)) for a, b in self.facets)
        )
        object.__setattr__(
            self, "equalities", tuple((tuple(int(x) for x in a), int(b)) for a, b in self.equalities)
        )

    @classmethod
    def from_inequalities(
        cls,
        vertices: Sequence[Sequence[int]],
        inequalities: Iterable[Halfspace],
        equalities: Iterable[Halfspace] = (),
        name: str = "",
    ) -> "IntegerPolytope":
        """Keep only inequalities that are facets, one per distinct tight set.

        Every vertex must satisfy every supplied inequality.
        """
        verts = [tuple(v) for v in vertices]
        q = len(verts[0])
        m = linalg.affine_rank(verts)
        kept: list[Halfspace] = []
        seen: set[int] = set()
        for a, b in inequalities:
            tight = 0
            for i, v in enumerate(verts):
                s = _dot(a, v)
                if s > b:
                    raise ValueError(f"vertex {i} violates inequality {a} <= {b}")
                if s == b:
                    tight |= 1 << i
            if tight in seen or tight == (1 << len(verts)) - 1 or not tight:
                continue
            if linalg.affine_rank([verts[i] for i in members(tight)]) != m - 1:
                continue
            seen.add(tight)
            kept.append((tuple(a), b))
        return cls(q, tuple(verts), tuple(kept), tuple((tuple(c), e) for c, e in equalities), name)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @cached_property
    def dimension(self) -> int:
        return linalg.affine_rank(self.vertices)

    @cached_property
    def facet_masks(self) -> tuple[int, ...]:
        """Vertex bitmask of the tight set of each facet."""
        return tuple(
            mask_of(i for i, v in enumerate(self.vertices) if _dot(a, v) == b) for a, b in self.facets
        )

    @property
    def incidence(self) -> tuple[tuple[bool, ...], ...]:
        """Vertex-by-facet incidence matrix."""
        return tuple(
            tuple(bool(fm >> i & 1) for fm in self.facet_masks) for i in range(self.num_vertices)
        )

    @property
    def full_mask(self) -> int:
        return (1 << self.num_vertices) - 1

    def vertex_index(self, point: Sequence[int]) -> int:
        return self.vertices.index(tuple(point))

    def contains(self, x: Sequence[int], scale: int = 1) -> bool:
        """Membership of ``x`` in the dilate ``scale * P``."""
        return all(_dot(c, x) == scale * e for c, e in self.equalities) and all(
            _dot(a, x) <= scale * b for a, b in self.facets
        )


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    dimension: int
    message: str = "ok"
    witness: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


def validate_polytope(P: IntegerPolytope, check_lattice: bool = True, max_faces: int = MAX_FACES) -> ValidationReport:
    """Check that the V- and H-descriptions of ``P`` describe the same polytope.

    Beyond the per-facet invariants this checks the facet list is complete:
    every vertex must be cut out by the facets through it, and the lattice
    of tight-set intersections must be graded by dimension with the diamond
    property. A missing facet breaks one of these.
    """
    q = P.ambient_dim
    n = P.num_vertices
    if n == 0:
        return ValidationReport(False, -1, "polytope has no vertices")
    for i, v in enumerate(P.vertices):
        if len(v) != q:
            return ValidationReport(False, -1, f"vertex {i} has {len(v)} coordinates, expected {q}", (i,))
    if len(set(P.vertices)) != n:
        dup = next(i for i, v in enumerate(P.vertices) if P.vertices.index(v) != i)
        return ValidationReport(False, -1, f"vertex {dup} is repeated", (dup,))
    for j, (c, e) in enumerate(P.equalities):
        for i, v in enumerate(P.vertices):
            if _dot(c, v) != e:
                return ValidationReport(False, -1, f"vertex {i} violates equality {j}", (i, j))
    for j, (a, b) in enumerate(P.facets):
        for i, v in enumerate(P.vertices):
            if _dot(a, v) > b:
                return ValidationReport(False, -1, f"vertex {i} violates facet {j}", (i, j))
    m = P.dimension
    eq_rank = linalg.rank([list(c) for c, _ in P.equalities]) if P.equalities else 0
    if q - eq_rank != m:
        return ValidationReport(
            False, m, f"equalities cut out dimension {q - eq_rank} but vertices span {m}"
        )
    if m == 0:
        if P.facets:
            return ValidationReport(False, 0, "a point has no facets", (0,))
        return ValidationReport(True, 0)
    seen: dict[int, int] = {}
    for j, fm in enumerate(P.facet_masks):
        if fm == P.full_mask:
            return ValidationReport(False, m, f"facet {j} is tight on every vertex", (j,))
        if fm in seen:
            return ValidationReport(False, m, f"facets {seen[fm]} and {j} have the same tight set", (seen[fm], j))
        seen[fm] = j
        if linalg.affine_rank([P.vertices[i] for i in members(fm)]) != m - 1:
            return ValidationReport(False, m, f"tight set of facet {j} does not span a hyperplane", (j,))
    for i in range(n):
        cut = P.full_mask
        for fm in P.facet_masks:
            if fm >> i & 1:
                cut &= fm
        if cut != 1 << i:
            return ValidationReport(False, m, f"vertex {i} is not cut out by its facets (facet list incomplete)", (i,))
    if check_lattice:
        try:
            lattice = faces_of(P, max_faces=max_faces)
        except FaceBudgetExceeded:
            raise
        except ValueError as exc:
            return ValidationReport(False, m, f"face lattice: {exc}")
        bad = lattice.diamond_violation()
        if bad is not None:
            return ValidationReport(
                False, m, "face lattice fails the diamond property (facet list incomplete)", members(bad[0])
            )
    return ValidationReport(True, m)


@dataclass(frozen=True)
class LatticeBasis:
    """Basis of ``(aff P - origin) ∩ Z^q`` in Hermite normal form."""

    origin: Point
    basis: tuple[Point, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def rational_coordinates(self, point: Sequence[int]) -> list[Fraction] | None:
        diff = [x - o for x, o in zip(point, self.origin)]
        return linalg.solve_echelon(self.basis, diff)

    def coordinates(self, point: Sequence[int]) -> tuple[int, ...]:
        """Integer coordinates of ``point - origin``; raises if outside the lattice."""
        c = self.rational_coordinates(point)
        if c is None:
            raise ValueError(f"{tuple(point)} is not in the affine hull")
        if any(x.denominator != 1 for x in c):
            raise ValueError(f"{tuple(point)} is not a lattice point of the affine hull")
        return tuple(int(x) for x in c)


def saturated_lattice_basis(P: IntegerPolytope) -> LatticeBasis:
    """Basis of the integer points of the linear span of ``P - v_0``.

    The span is described as the kernel of an integer matrix (a basis of
    its orthogonal complement); the integer kernel of that matrix is
    saturated automatically, and the result is brought to Hermite form.
    """
    origin = P.vertices[0]
    q = P.ambient_dim
    diffs = [[x - o for x, o in zip(v, origin)] for v in P.vertices[1:]]
    diffs = [d for d in diffs if any(d)]
    if not diffs:
        return LatticeBasis(origin, ())
    complement = [linalg.primitive(v) for v in linalg.nullspace(diffs, q)]
    kernel = linalg.integer_kernel(complement, q) if complement else [
        [int(i == j) for j in range(q)] for i in range(q)
    ]
    basis = linalg.hermite_rows(kernel)
    return LatticeBasis(origin, tuple(tuple(r) for r in basis))


def is_unimodular_simplex(S: Sequence[Sequence[int]], L: LatticeBasis) -> bool:
    """True iff the simplex on ``S`` has normalized volume 1 in ``L``."""
    if len(S) != L.rank + 1:
        raise ValueError(f"a maximal simplex needs {L.rank + 1} vertices, got {len(S)}")
    coords = [L.coordinates(p) for p in S]
    base = coords[0]
    rows = [[x - y for x, y in zip(c, base)] for c in coords[1:]]
    return abs(linalg.determinant(rows)) == 1


def simplex_volume(S: Sequence[Sequence[int]], L: LatticeBasis) -> int:
    """Normalized volume (absolute determinant in lattice coordinates)."""
    coords = [L.coordinates(p) for p in S]
    base = coords[0]
    return abs(linalg.determinant([[x - y for x, y in zip(c, base)] for c in coords[1:]]))


class FaceBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Face:
    mask: int
    dim: int
    facets: frozenset[int]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(members(self.mask))

    def __contains__(self, v: int) -> bool:
        return bool(self.mask >> v & 1)


class FaceLattice:
    """All nonempty faces of a polytope with their cover relations."""

    def __init__(self, polytope: IntegerPolytope, faces: list[Face], children: dict[int, tuple[int, ...]]):
        self.polytope = polytope
        self.faces = tuple(sorted(faces, key=lambda f: (f.dim, members(f.mask))))
        self.by_mask = {f.mask: f for f in self.faces}
        self.children = children
        parents: dict[int, list[int]] = {f.mask: [] for f in self.faces}
        for p, ch in children.items():
            for c in ch:
                parents[c].append(p)
        self.parents = {k: tuple(v) for k, v in parents.items()}

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def f_vector(self) -> tuple[int, ...]:
        top = max(f.dim for f in self.faces)
        counts = [0] * (top + 1)
        for f in self.faces:
            counts[f.dim] += 1
        return tuple(counts)

    def of_dim(self, k: int) -> list[Face]:
        return [f for f in self.faces if f.dim == k]

    def faces_within(self, mask: int) -> list[Face]:
        return [f for f in self.faces if f.mask & ~mask == 0]

    def diamond_violation(self) -> tuple[int, int] | None:
        """First (face, subface) pair two ranks apart without exactly two faces between."""
        for f in self.faces:
            if f.dim == 0:
                continue
            if f.dim == 1:
                if len(self.children[f.mask]) != 2:
                    return (f.mask, 0)
                continue
            between: dict[int, int] = {}
            for c in self.children[f.mask]:
                for g in self.children[c]:
                    between[g] = between.get(g, 0) + 1
            for g, k in between.items():
                if k != 2:
                    return (f.mask, g)
        return None


def faces_of(P: IntegerPolytope, max_faces: int = MAX_FACES) -> FaceLattice:
    """Face lattice of ``P`` generated top-down from facet tight sets.

    The facets of a face ``F`` are the maximal members of
    ``{F ∩ G : G a facet of P not containing F}``.
    """
    top = P.full_mask
    fmasks = P.facet_masks
    dims: dict[int, int] = {top: P.dimension}
    children: dict[int, tuple[int, ...]] = {}
    stack = [top]
    while stack:
        face = stack.pop()
        cands = set()
        for fm in fmasks:
            x = face & fm
            if x and x != face:
                cands.add(x)
        maximal = tuple(sorted(c for c in cands if not any(c != o and c & ~o == 0 for o in cands)))
        children[face] = maximal
        for c in maximal:
            if c not in dims:
                if len(dims) >= max_faces:
                    raise FaceBudgetExceeded(f"more than {max_faces} faces")
                dims[c] = linalg.affine_rank([P.vertices[i] for i in members(c)])
                stack.append(c)
            if dims[c] != dims[face] - 1:
                raise ValueError(
                    f"face {members(c)} (dim {dims[c]}) is maximal in a face of dim {dims[face]}"
                )
    faces = [
        Face(m, d, frozenset(j for j, fm in enumerate(fmasks) if m & ~fm == 0)) for m, d in dims.items()
    ]
    return FaceLattice(P, faces, children)


@dataclass(frozen=True)
class SpecialSimplexCertificate:
    vertex_indices: tuple[int, ...]
    per_facet_counts: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.vertex_indices)


class SpecialSimplexError(ValueError):
    def __init__(self, message: str, facet: int | None = None, count: int | None = None):
        super().__init__(message)
        self.facet = facet
        self.count = count


class SearchInconclusive(RuntimeError):
    """The special-simplex search hit its size or node budget without an answer."""


def verify_special_simplex(P: IntegerPolytope, sigma: Sequence[int]) -> SpecialSimplexCertificate:
    """Certify that every facet of ``P`` contains exactly ``n - 1`` of ``sigma``."""
    sigma = tuple(sigma)
    n = len(sigma)
    if n == 0:
        raise SpecialSimplexError("empty vertex set")
    if len(set(sigma)) != n or any(not 0 <= i < P.num_vertices for i in sigma):
        raise SpecialSimplexError(f"invalid vertex indices {sigma}")
    if linalg.affine_rank([P.vertices[i] for i in sigma]) != n - 1:
        raise SpecialSimplexError(f"vertices {sigma} are affinely dependent")
    smask = mask_of(sigma)
    counts = []
    for j, fm in enumerate(P.facet_masks):
        k = bin(fm & smask).count("1")
        if k != n - 1:
            raise SpecialSimplexError(
                f"facet {j} contains {k} of the {n} vertices, expected {n - 1}", facet=j, count=k
            )
        counts.append(k)
    return SpecialSimplexCertificate(sigma, tuple(counts))


def codimension_violations(
    lattice: FaceLattice, sigma: Sequence[int]
) -> list[tuple[tuple[int, ...], int, tuple[int, ...]]]:
    """Witnesses against the codimension rule for a special simplex.

    For each face ``F`` of codimension ``k`` with ``1 <= k <= n - 1`` and each
    choice of ``k`` vertices of ``sigma`` missing from ``F`` (an ordering whose
    first ``k`` entries avoid ``F``), ``F`` must contain the remaining
    ``n - k``. Returns ``(face vertices, k, first k)`` triples that fail.
    """
    sigma = tuple(sigma)
    n = len(sigma)
    m = lattice.polytope.dimension
    bad = []
    for f in lattice.faces:
        k = m - f.dim
        if not 1 <= k <= n - 1:
            continue
        missing = [v for v in sigma if v not in f]
        for first in combinations(missing, k):
            rest = [v for v in sigma if v not in first]
            if not all(v in f for v in rest):
                bad.append((members(f.mask), k, first))
    return bad


def find_special_simplex(
    P: IntegerPolytope,
    hint: Sequence[int] | None = None,
    max_size: int = 12,
    max_vertices: int = 64,
    max_nodes: int = 10**6,
) -> SpecialSimplexCertificate | None:
    """Search for a special simplex, guided by ``hint`` when given.

    With a hint ``beta``, looks for vertices with pairwise disjoint supports
    summing to ``beta`` (an exact-cover search). Otherwise enumerates vertex
    subsets by size, pruning any subset that already misses some facet
    twice. Returns None when none exists within ``max_size``; raises
    :class:`SearchInconclusive` when a budget stops the search first.
    """
    nodes = 0

    def tick():
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise SearchInconclusive(f"more than {max_nodes} search nodes")

    if hint is not None:
        beta = tuple(hint)
        if len(beta) != P.ambient_dim:
            raise ValueError("hint has the wrong length")
        pieces = []
        for i, v in enumerate(P.vertices):
            if all(x == 0 or x == b for x, b in zip(v, beta)) and any(v) and all(x >= 0 for x in v):
                pieces.append((i, mask_of(j for j, x in enumerate(v) if x)))
        target = mask_of(j for j, b in enumerate(beta) if b)
        if any(b < 0 for b in beta):
            return None

        def cover(covered: int, chosen: list[int]):
            tick()
            if covered == target:
                try:
                    return verify_special_simplex(P, sorted(chosen))
                except SpecialSimplexError:
                    return None
            free = target & ~covered
            low = (free & -free).bit_length() - 1
            for i, sm in pieces:
                if sm >> low & 1 and sm & covered == 0 and sm & ~target == 0:
                    chosen.append(i)
                    got = cover(covered | sm, chosen)
                    chosen.pop()
                    if got is not None:
                        return got
            return None

        return cover(0, [])

    p = P.num_vertices
    if p > max_vertices:
        raise SearchInconclusive(f"{p} vertices exceeds the exhaustive bound {max_vertices}")
    fmasks = P.facet_masks
    nf = len(fmasks)
    # off[i] = facets not containing vertex i
    off = [[j for j in range(nf) if not fmasks[j] >> i & 1] for i in range(p)]

    def extend(start: int, size: int, chosen: list[int], misses: list[int]):
        tick()
        if len(chosen) == size:
            if all(x == 1 for x in misses):
                try:
                    return verify_special_simplex(P, chosen)
                except SpecialSimplexError:
                    return None
            return None
        for i in range(start, p):
            if any(misses[j] for j in off[i]):
                continue
            for j in off[i]:
                misses[j] += 1
            chosen.append(i)
            got = extend(i + 1, size, chosen, misses)
            chosen.pop()
            for j in off[i]:
                misses[j] -= 1
            if got is not None:
                return got
        return None

    for size in range(1, min(max_size, p) + 1):
        got = extend(0, size, [], [0] * nf)
        if got is not None:
            return got
    if p > max_size and P.dimension + 1 > max_size:
        raise SearchInconclusive(f"no special simplex with at most {max_size} vertices")
    return None


class QuotientMismatch(AssertionError):
    """The quotient's boundary does not match the faces avoiding sigma."""


@dataclass(frozen=True)
class QuotientPolytope:
    """Image of ``P`` under a linear map whose kernel is parallel to ``sigma``."""

    sigma: tuple[int, ...]
    dimension: int
    images: tuple[tuple[Fraction, ...], ...]
    projection: tuple[tuple[Fraction, ...], ...]
    vertex_map: tuple[int, ...]
    vertices: tuple[tuple[Fraction, ...], ...]
    boundary: tuple[frozenset[int], ...]


def _complete_basis(vectors: list[list[Fraction]], dim: int) -> list[list[Fraction]]:
    basis = [list(v) for v in vectors]
    for j in range(dim):
        e = [Fraction(int(i == j)) for i in range(dim)]
        if linalg.rank(_integral(basis + [e])) > len(basis):
            basis.append(e)
    return basis


def _integral(rows: list[list[Fraction]]) -> list[list[int]]:
    return [linalg.primitive(r) if any(r) else [0] * len(r) for r in rows]


def quotient_polytope(
    P: IntegerPolytope,
    sigma: Sequence[int],
    lattice: FaceLattice | None = None,
    verify: bool = True,
) -> QuotientPolytope:
    """Project ``P`` along the affine span of ``sigma``.

    Coordinates are taken in the saturated lattice of ``aff P``; the span of
    the sigma differences is extended to a rational basis and the map keeps
    the complementary coordinates. Sigma lands on the origin. With
    ``verify`` the boundary of the image is checked face by face against the
    faces of ``P`` avoiding ``sigma`` (raises :class:`QuotientMismatch`).
    """
    sigma = tuple(sigma)
    n = len(sigma)
    if n == 0:
        raise ValueError("sigma is empty")
    L = saturated_lattice_basis(P)
    m = L.rank
    coords = [[Fraction(x) for x in L.coordinates(v)] for v in P.vertices]
    base = coords[sigma[0]]
    kernel = [[a - b for a, b in zip(coords[i], base)] for i in sigma[1:]]
    if kernel and linalg.rank(_integral(kernel)) != n - 1:
        raise ValueError("sigma is not affinely independent")
    basis = _complete_basis(kernel, m)
    # rows of the inverse of the column matrix [basis]
    cols = [[basis[j][i] for j in range(m)] for i in range(m)]
    aug = [row + [Fraction(int(i == k)) for k in range(m)] for i, row in enumerate(cols)]
    red, _ = linalg.rref(aug)
    inverse = [r[m:] for r in red]
    proj = tuple(tuple(r) for r in inverse[n - 1 :])
    d = m - n + 1
    images = tuple(
        tuple(sum(a * (x - b) for a, x, b in zip(row, c, base)) for row in proj) for c in coords
    )
    smask = mask_of(sigma)
    rest = [i for i in range(P.num_vertices) if not smask >> i & 1]
    boundary: tuple[frozenset[int], ...] = ()
    if verify:
        if any(fm & smask == smask for fm in P.facet_masks):
            raise ValueError("sigma lies in a facet, so it is not interior")
        lattice = lattice or faces_of(P)
        avoiding = [f for f in lattice.faces if f.mask & smask == 0]
        boundary = tuple(sorted((f.vertices for f in avoiding), key=lambda s: (len(s), sorted(s))))
        _check_quotient_boundary(images, d, lattice, avoiding, rest)
    return QuotientPolytope(
        sigma,
        d,
        images,
        proj,
        tuple(rest),
        tuple(images[i] for i in rest),
        boundary,
    )


def _rational_affine_rank(points) -> int:
    if not points:
        return -1
    base = points[0]
    return linalg.rank(_integral([[a - b for a, b in zip(p, base)] for p in points[1:]]))


def _check_quotient_boundary(images, d: int, lattice: FaceLattice, avoiding: list[Face], rest: list[int]) -> None:
    origin = tuple(Fraction(0) for _ in range(d))
    if d == 0:
        if rest:
            raise QuotientMismatch("zero-dimensional quotient but vertices remain outside sigma")
        return
    if len({images[i] for i in rest}) != len(rest):
        raise QuotientMismatch("two vertices outside sigma share an image")
    if not avoiding:
        raise QuotientMismatch("no faces avoid sigma")
    avoid_masks = {f.mask for f in avoiding}
    maximal = [f for f in avoiding if not any(p in avoid_masks for p in lattice.parents[f.mask])]
    facets = []
    for f in maximal:
        pts = [images[i] for i in members(f.mask)]
        if f.dim != d - 1 or _rational_affine_rank(pts) != d - 1:
            raise QuotientMismatch(f"maximal face {members(f.mask)} does not map onto a hyperplane")
        normal = _hyperplane(pts, d)
        level = sum(a * x for a, x in zip(normal, pts[0]))
        sides = set()
        for i in rest + [None]:
            if i is not None and f.mask >> i & 1:
                continue
            y = origin if i is None else images[i]
            s = sum(a * x for a, x in zip(normal, y)) - level
            if s == 0:
                raise QuotientMismatch(f"point {i} lies on the hyperplane of face {members(f.mask)}")
            sides.add(s > 0)
        if len(sides) > 1:
            raise QuotientMismatch(f"face {members(f.mask)} does not support the quotient")
        facets.append(f.mask)
    closure = set(facets)
    frontier = list(facets)
    while frontier:
        nxt = []
        for a in frontier:
            for b in facets:
                x = a & b
                if x and x not in closure:
                    closure.add(x)
                    nxt.append(x)
        frontier = nxt
    if closure != avoid_masks:
        raise QuotientMismatch("faces of the quotient differ from the faces avoiding sigma")
    if d == 1:
        if len(facets) != 2:
            raise QuotientMismatch("a segment needs exactly two endpoints")
        return
    for x in closure:
        if _rational_affine_rank([images[i] for i in members(x)]) == d - 2:
            k = sum(1 for fm in facets if x & ~fm == 0)
            if k != 2:
                raise QuotientMismatch(f"ridge {members(x)} lies in {k} facets")


def _hyperplane(points, d: int) -> list[Fraction]:
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    null = linalg.nullspace(diffs, d) if diffs else [
        [Fraction(int(i == j)) for j in range(d)] for i in range(d)
    ]
    if len(null) != 1:
        raise QuotientMismatch("face image is not a hyperplane")
    return null[0]
