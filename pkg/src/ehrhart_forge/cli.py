"""Command-line entry point.

Exit status: 0 when everything checked holds, 1 when a mathematical check
fails, 2 for bad input or an exhausted budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .ehrhart import (
    Budgets,
    BudgetExceeded,
    EhrhartSeries,
    NotCompressed,
    series_by_counting,
    series_by_triangulation,
    verify_stanley_pipeline,
)
from .exact_math import IntPolynomial
from .families import (
    EnumerationLimit,
    GraphPropertyError,
    birkhoff,
    birkhoff_cyclic_simplex,
    birkhoff_default_order,
    equatorial_complex,
    eulerian_polynomial,
    matching_default_order,
    matching_polytope,
    order_polytope,
    order_polytope_default_order,
    rank_ideal_simplex,
)
from .formats import ParseError, polytope_from_json, read_graph, read_poset, triangulation_to_text
from .polytope import (
    FaceBudgetExceeded,
    SearchInconclusive,
    faces_of,
    find_special_simplex,
    members,
    validate_polytope,
)
from .triangulation import VertexOrder, face_complex, pulling_triangulation

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _index_list(text: str) -> list[int]:
    try:
        out = [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None
    if any(v < 0 for v in out):
        raise argparse.ArgumentTypeError("vertex indices must be nonnegative")
    return out


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--machine", action="store_true", help="emit JSON instead of text")
    p.add_argument("--max-dilate", type=_nonneg, default=Budgets.max_dilate)
    p.add_argument("--max-nodes", type=_nonneg, default=Budgets.max_nodes)
    p.add_argument("--max-faces", type=_nonneg, default=Budgets.max_faces)
    p.add_argument("--route", choices=("counting", "triangulation"), default="counting",
                   help="how `series` computes the numerator")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="ehrhart-forge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("birkhoff", parents=[common], help="doubly stochastic matrices")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("action", choices=("series", "triangulate", "verify"))

    po = sub.add_parser("poset", parents=[common], help="order polytope of a poset file")
    po.add_argument("path")
    po.add_argument("action", choices=("eulerian", "series", "equatorial", "verify"))

    g = sub.add_parser("graph", parents=[common], help="magic labelings of a graph file")
    g.add_argument("path")
    g.add_argument("action", choices=("series", "verify"))

    pt = sub.add_parser("polytope", parents=[common], help="a polytope JSON file")
    pt.add_argument("path")
    pt.add_argument("action", choices=("validate", "series", "triangulate", "find-special", "verify"))
    pt.add_argument("--order", type=_index_list, help="vertex order, first to last (last is pulled first)")
    pt.add_argument("--sigma", type=_index_list, help="vertex indices of a special simplex")
    return parser


def _budgets(args) -> Budgets:
    return Budgets(max_dilate=args.max_dilate, max_nodes=args.max_nodes, max_faces=args.max_faces)


def _count_kw(args) -> dict:
    return {"max_dilate": args.max_dilate, "max_nodes": args.max_nodes}


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _print_series(out, args, s: EhrhartSeries, extra: dict | None = None) -> None:
    if args.machine:
        doc = {"h": list(s.h), "d": s.d, "denom_exponent": s.denom_exponent}
        doc.update(extra or {})
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        out.write(str(s) + "\n")


def _series(P, args, tau: VertexOrder | None = None) -> EhrhartSeries:
    if args.route == "triangulation":
        return series_by_triangulation(P, tau)
    return series_by_counting(P, **_count_kw(args))


def _report(out, args, rep) -> int:
    out.write(rep.to_machine() if args.machine else rep.to_text())
    return EXIT_OK if rep.passed else EXIT_FAIL


def _triangulate(out, P, tau: VertexOrder, args) -> int:
    lattice = faces_of(P, max_faces=args.max_faces)
    delta = pulling_triangulation(face_complex(lattice), tau)
    out.write(triangulation_to_text(delta, P.num_vertices, P.dimension))
    return EXIT_OK


def cmd_birkhoff(args, out) -> int:
    if args.n < 1:
        raise InputError("--n must be at least 1")
    P = birkhoff(args.n)
    tau = birkhoff_default_order(args.n, P)
    if args.action == "series":
        _print_series(out, args, _series(P, args, tau))
        return EXIT_OK
    if args.action == "triangulate":
        return _triangulate(out, P, tau, args)
    rep = verify_stanley_pipeline(P, birkhoff_cyclic_simplex(args.n, P), tau, budgets=_budgets(args))
    return _report(out, args, rep)


def _ideal_label(I: int) -> str:
    return "{" + ",".join(map(str, members(I))) + "}"


def cmd_poset(args, out) -> int:
    Q = read_poset(_read(args.path))
    if args.action in ("eulerian", "verify") and not Q.naturally_labeled:
        raise InputError("poset is not naturally labeled")
    if args.action in ("equatorial", "verify") and not Q.graded:
        raise InputError("poset is not graded")
    if args.action == "eulerian":
        W = eulerian_polynomial(Q)
        if args.machine:
            out.write(json.dumps({"W": list(W.coeffs)}) + "\n")
        else:
            out.write(" ".join(map(str, W.coeffs)) + "\n")
        return EXIT_OK
    P = order_polytope(Q)
    if args.action == "series":
        _print_series(out, args, _series(P, args, order_polytope_default_order(Q)))
        return EXIT_OK
    if args.action == "equatorial":
        E = equatorial_complex(Q)
        faces = [[_ideal_label(I) for I in sorted(f, key=lambda I: bin(I).count("1"))] for f in E.sorted_faces()]
        h = E.h_polynomial().coeffs
        if args.machine:
            out.write(json.dumps({"faces": faces, "h": list(h)}, sort_keys=True) + "\n")
        else:
            for f in faces:
                out.write(" < ".join(f) + "\n" if f else "(empty face)\n")
            out.write("h = " + " ".join(map(str, h)) + "\n")
        return EXIT_OK
    sigma = rank_ideal_simplex(Q)
    W = eulerian_polynomial(Q)
    rep = verify_stanley_pipeline(
        P, sigma, order_polytope_default_order(Q, sigma), name=f"order polytope of {args.path}",
        budgets=_budgets(args), expected={"h = W(t)": W},
    )
    return _report(out, args, rep)


def cmd_graph(args, out) -> int:
    G = read_graph(_read(args.path))
    try:
        n = G.require_magic_ready()
    except GraphPropertyError as exc:
        raise InputError(str(exc)) from None
    P = matching_polytope(G)
    m = P.dimension
    if args.action == "series":
        s = series_by_counting(P, **_count_kw(args))
        if args.machine:
            _print_series(out, args, s, {"m": m, "n": n})
        else:
            out.write(f"h = {' '.join(map(str, s.h))}, m = {m}, d = {m - n + 1}, n = {n}\n")
        return EXIT_OK
    cert = find_special_simplex(P, hint=[1] * G.q)
    if cert is None:
        out.write("no special simplex from the all-ones decomposition\n")
        return EXIT_FAIL
    sigma = cert.vertex_indices
    rep = verify_stanley_pipeline(P, sigma, matching_default_order(P, sigma), name=f"graph {args.path}",
                                  budgets=_budgets(args))
    return _report(out, args, rep)


def cmd_polytope(args, out) -> int:
    try:
        P = polytope_from_json(_read(args.path))
    except ParseError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from None
    val = validate_polytope(P, max_faces=args.max_faces)
    if not val.valid:
        raise InputError(f"invalid polytope: {val.message}")
    if args.order is not None and sorted(args.order) != list(range(P.num_vertices)):
        raise InputError(f"--order must list each of the {P.num_vertices} vertex indices once")
    if args.action == "validate":
        if args.machine:
            out.write(json.dumps({"valid": True, "dimension": P.dimension, "vertices": P.num_vertices,
                                  "facets": len(P.facets)}, sort_keys=True) + "\n")
        else:
            out.write(f"dim {P.dimension}, {P.num_vertices} vertices, {len(P.facets)} facets\n")
        return EXIT_OK
    tau = VertexOrder(args.order) if args.order is not None else None
    if args.action == "series":
        _print_series(out, args, _series(P, args, tau))
        return EXIT_OK
    if args.action == "triangulate":
        return _triangulate(out, P, tau or VertexOrder(range(P.num_vertices)), args)
    sigma = args.sigma
    if sigma is not None and any(v >= P.num_vertices for v in sigma):
        raise InputError("--sigma index out of range")
    if args.action == "find-special" or sigma is None:
        cert = find_special_simplex(P)
        if cert is None:
            out.write("no special simplex found (exhaustive)\n")
            return EXIT_FAIL
        if args.action == "find-special":
            if args.machine:
                out.write(json.dumps({"sigma": list(cert.vertex_indices)}) + "\n")
            else:
                out.write("special simplex: " + " ".join(map(str, cert.vertex_indices)) + "\n")
            return EXIT_OK
        sigma = list(cert.vertex_indices)
    rep = verify_stanley_pipeline(P, sigma, tau, name=P.name or args.path, budgets=_budgets(args))
    return _report(out, args, rep)


COMMANDS = {"birkhoff": cmd_birkhoff, "poset": cmd_poset, "graph": cmd_graph, "polytope": cmd_polytope}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except (InputError, ParseError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except NotCompressed as exc:
        sys.stderr.write(f"error: order is not compressed: {exc}\n")
        return EXIT_FAIL
    except (BudgetExceeded, FaceBudgetExceeded, SearchInconclusive, EnumerationLimit) as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
