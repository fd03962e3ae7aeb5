import itertools
import random

import pytest
from conftest import make_box, make_point, make_simplex

from ehrhart_forge.exact_math import IntPolynomial
from ehrhart_forge.families import antichain, birkhoff, birkhoff_cyclic_simplex, birkhoff_default_order
from ehrhart_forge.families import order_polytope, order_polytope_default_order, rank_ideal_simplex
from ehrhart_forge.polytope import faces_of
from ehrhart_forge.triangulation import (
    SimplicialComplex,
    VertexOrder,
    boundary_complex,
    face_complex,
    is_compressed_ordering,
    is_unimodular_triangulation,
    join_decomposition_check,
    normalized_volume,
    pulling_triangulation,
    pulling_triangulation_by_flags,
    restrict,
    simplex,
    simplicial_join,
)


def test_complex_keeps_maximal_faces():
    D = SimplicialComplex([(1, 2), (1,), (2, 3), (1, 2)])
    assert D.sorted_faces() == [(1, 2), (2, 3)]
    assert (2,) in D and (1, 3) not in D
    assert D.is_pure and D.dimension == 1


def test_empty_face_complex():
    D = SimplicialComplex([()])
    assert D.dimension == -1 and D.h_polynomial() == IntPolynomial.of(1)
    assert SimplicialComplex([]).h_polynomial() == IntPolynomial()


def test_f_and_h():
    tri = SimplicialComplex([(0, 1), (1, 2), (0, 2)])
    assert tri.f_vector() == (3, 3) and tri.h_polynomial().coeffs == (1, 1, 1)
    pt = SimplicialComplex([(7,)])
    assert pt.f_vector() == (1,) and pt.h_polynomial().coeffs == (1,)
    edge = SimplicialComplex([(0, 1)])
    assert edge.f_vector() == (2, 1) and edge.h_polynomial().coeffs == (1,)


def test_joins():
    assert simplicial_join(simplex([0]), simplex([1])) == simplex([0, 1])
    s0a = SimplicialComplex([(0,), (1,)])
    s0b = SimplicialComplex([(2,), (3,)])
    c4 = simplicial_join(s0a, s0b)
    assert len(c4) == 4 and c4.h_polynomial().coeffs == (1, 2, 1)
    hexa = SimplicialComplex([(i, (i + 1) % 6) for i in range(6)])
    assert simplicial_join(simplex([10, 11]), hexa).h_polynomial() == hexa.h_polynomial()
    with pytest.raises(ValueError):
        simplicial_join(s0a, s0a)


def test_restrict_square(square):
    F = face_complex(square)
    K = restrict(F, [3])
    assert sorted(K.maximal_faces()) == sorted([0b0011, 0b0101])
    assert restrict(F, []) == F


def test_restrict_birkhoff_pure():
    B = birkhoff(3)
    K = restrict(face_complex(B), birkhoff_cyclic_simplex(3, B))
    assert K.is_pure and K.dimension == 1


def test_square_pulling_last_vertex(square):
    D = pulling_triangulation(face_complex(square), VertexOrder([1, 2, 3, 0]))
    assert D.sorted_faces() == [(0, 1, 3), (0, 2, 3)]


@pytest.mark.parametrize("tau", list(itertools.permutations(range(4))))
def test_square_all_orders(square, tau):
    F = face_complex(square)
    D = pulling_triangulation(F, VertexOrder(tau))
    assert D == pulling_triangulation_by_flags(F, VertexOrder(tau))
    assert len(D) == 2
    assert is_unimodular_triangulation(square, D)
    assert is_compressed_ordering(square, VertexOrder(tau))


def test_polygon_boundary_is_fixed(hexagon):
    B = boundary_complex(hexagon)
    D = pulling_triangulation(B, VertexOrder(range(6)))
    assert len(D) == 6 and all(len(f) == 2 for f in D.maximal_faces)


def test_triangle_is_itself():
    tri = make_simplex(2)
    D = pulling_triangulation_by_flags(face_complex(tri), VertexOrder([2, 0, 1]))
    assert D.sorted_faces() == [(0, 1, 2)]


def test_birkhoff_random_orders_agree():
    B = birkhoff(3)
    L = faces_of(B)
    rng = random.Random(3)
    for _ in range(5):
        t = list(range(6))
        rng.shuffle(t)
        tau = VertexOrder(t)
        D = pulling_triangulation(face_complex(L), tau)
        assert D == pulling_triangulation_by_flags(face_complex(L), tau)
        assert is_unimodular_triangulation(B, D)
        assert normalized_volume(B, D) == 3


def test_cube_volume_invariant(cube):
    L = faces_of(cube)
    vols = {normalized_volume(cube, pulling_triangulation(face_complex(L), VertexOrder(t)))
            for t in [range(8), range(7, -1, -1), [3, 1, 4, 0, 5, 2, 6, 7]]}
    assert vols == {6}


def test_rectangle_not_compressed():
    R = make_box((2, 1))
    for t in itertools.islice(itertools.permutations(range(4)), 8):
        res = is_unimodular_triangulation(R, pulling_triangulation(face_complex(R), VertexOrder(t)))
        assert not res and res.volume == 2


def test_big_square_corner_triangles():
    S = make_box((2, 2))
    D = SimplicialComplex([(0, 1, 2), (1, 2, 3)])
    assert not is_unimodular_triangulation(S, D)


def test_order_must_cover(square):
    with pytest.raises(ValueError):
        pulling_triangulation(face_complex(square), VertexOrder([0, 1, 2]))


def test_join_decomposition_birkhoff():
    B = birkhoff(3)
    jd = join_decomposition_check(B, birkhoff_cyclic_simplex(3, B), birkhoff_default_order(3, B))
    assert jd.iso_ok
    assert jd.delta.h_polynomial().coeffs == (1, 1, 1) and len(jd.delta) == 3


def test_join_decomposition_antichain():
    Q = antichain(3)
    O = order_polytope(Q)
    sig = rank_ideal_simplex(Q)
    jd = join_decomposition_check(O, sig, order_polytope_default_order(Q, sig))
    assert jd.iso_ok and len(jd.delta) == 6
    assert jd.delta.h_polynomial().coeffs == (1, 4, 1)


def test_join_decomposition_point():
    P = make_point()
    jd = join_decomposition_check(P, (0,), VertexOrder([0]))
    assert jd.iso_ok and jd.delta.h_polynomial().coeffs == (1,)


def test_join_decomposition_needs_sigma_last():
    B = birkhoff(3)
    with pytest.raises(ValueError):
        join_decomposition_check(B, birkhoff_cyclic_simplex(3, B), VertexOrder(range(6)[::-1]))
