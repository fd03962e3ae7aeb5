"""Text formats: polytope JSON, poset and graph edge lists, triangulation export."""

from __future__ import annotations

import json
from typing import Iterable

from .families import MultiGraph, Poset
from .polytope import IntegerPolytope
from .triangulation import SimplicialComplex

__all__ = [
    "ParseError",
    "polytope_to_json",
    "polytope_from_json",
    "read_poset",
    "write_poset",
    "read_graph",
    "write_graph",
    "triangulation_to_text",
    "triangulation_from_text",
]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


def polytope_to_json(P: IntegerPolytope) -> str:
    doc = {
        "ambient_dim": P.ambient_dim,
        "vertices": [list(v) for v in P.vertices],
        "facets": [{"normal": list(a), "offset": b} for a, b in P.facets],
        "equalities": [{"normal": list(c), "offset": e} for c, e in P.equalities],
    }
    if P.name:
        doc["name"] = P.name
    return json.dumps(doc, sort_keys=True) + "\n"


def _halfspaces(items, key: str, q: int):
    out = []
    for k, item in enumerate(items):
        try:
            normal = [int(x) for x in item["normal"]]
            offset = int(item["offset"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"{key}[{k}] needs integer 'normal' and 'offset' ({exc})") from None
        if len(normal) != q:
            raise ParseError(f"{key}[{k}] normal has length {len(normal)}, expected {q}")
        out.append((tuple(normal), offset))
    return out


def polytope_from_json(text: str) -> IntegerPolytope:
    """Parse ``{"ambient_dim", "vertices", "facets": [{"normal", "offset"}], "equalities"}``.

    A facet entry means ``normal . x <= offset``; an equality entry means
    ``normal . x = offset``.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    try:
        q = int(doc["ambient_dim"])
        verts = [tuple(int(x) for x in v) for v in doc["vertices"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"need integer 'ambient_dim' and 'vertices' ({exc})") from None
    if not verts:
        raise ParseError("no vertices")
    for k, v in enumerate(verts):
        if len(v) != q:
            raise ParseError(f"vertex {k} has {len(v)} coordinates, expected {q}")
    facets = _halfspaces(doc.get("facets", []), "facets", q)
    eqs = _halfspaces(doc.get("equalities", []), "equalities", q)
    return IntegerPolytope(q, tuple(verts), tuple(facets), tuple(eqs), str(doc.get("name", "")))


def _content_lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _ints(tokens: list[str], count: int, no: int) -> list[int]:
    if len(tokens) != count:
        raise ParseError(f"expected {count} integers, got {len(tokens)}", no)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"not an integer in {' '.join(tokens)!r}", no) from None


def read_poset(text: str) -> Poset:
    """First line ``m``, then covers ``i j`` (i covered by j), elements ``1..m``."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty poset file")
    no, toks = lines[0]
    (m,) = _ints(toks, 1, no)
    if m < 0:
        raise ParseError("m must be nonnegative", no)
    rels = []
    for no, toks in lines[1:]:
        i, j = _ints(toks, 2, no)
        if not (1 <= i <= m and 1 <= j <= m) or i == j:
            raise ParseError(f"cover ({i}, {j}) invalid for elements 1..{m}", no)
        rels.append((i, j))
    try:
        return Poset.from_relations(m, rels)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def write_poset(P: Poset) -> str:
    return "\n".join([str(P.m)] + [f"{i} {j}" for i, j in sorted(P.covers)]) + "\n"


def read_graph(text: str) -> MultiGraph:
    """First line ``p q``, then ``q`` edge lines ``u v`` with vertices ``1..p``."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty graph file")
    no, toks = lines[0]
    p, q = _ints(toks, 2, no)
    if p < 0 or q < 0:
        raise ParseError("p and q must be nonnegative", no)
    edges = []
    for no, toks in lines[1:]:
        u, v = _ints(toks, 2, no)
        if not (1 <= u <= p and 1 <= v <= p):
            raise ParseError(f"edge ({u}, {v}) has an endpoint outside 1..{p}", no)
        edges.append((u - 1, v - 1))
    if len(edges) != q:
        raise ParseError(f"header promises {q} edges, file has {len(edges)}")
    return MultiGraph(p, tuple(edges))


def write_graph(G: MultiGraph) -> str:
    return "\n".join([f"{G.p} {G.q}"] + [f"{u + 1} {v + 1}" for u, v in G.edges]) + "\n"


def triangulation_to_text(delta: SimplicialComplex, num_vertices: int, dim: int) -> str:
    """Header ``p dim``, then one line of sorted vertex indices per maximal simplex."""
    lines = [f"{num_vertices} {dim}"]
    lines += [" ".join(map(str, f)) for f in delta.sorted_faces()]
    return "\n".join(lines) + "\n"


def triangulation_from_text(text: str) -> tuple[SimplicialComplex, int, int]:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty triangulation file")
    no, toks = lines[0]
    p, dim = _ints(toks, 2, no)
    faces = []
    for no, toks in lines[1:]:
        f = _ints(toks, len(toks), no)
        if any(not 0 <= v < p for v in f):
            raise ParseError(f"vertex index outside 0..{p - 1}", no)
        faces.append(f)
    return SimplicialComplex(faces or [()]), p, dim
