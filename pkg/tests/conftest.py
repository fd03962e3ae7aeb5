import itertools
import sys

import pytest

from ehrhart_forge import kernels
from ehrhart_forge.polytope import IntegerPolytope


def box_facets(dim, upper):
    out = []
    for i in range(dim):
        e = [0] * dim
        e[i] = -1
        out.append((tuple(e), 0))
        e = [0] * dim
        e[i] = 1
        out.append((tuple(e), upper[i]))
    return out


def make_box(upper):
    verts = list(itertools.product(*[(0, u) for u in upper]))
    return IntegerPolytope.from_inequalities(verts, box_facets(len(upper), upper), name=f"box{tuple(upper)}")


def make_simplex(dim):
    verts = [tuple(0 for _ in range(dim))] + [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    ineqs = [(tuple(-int(i == j) for j in range(dim)), 0) for i in range(dim)] + [((1,) * dim, 1)]
    return IntegerPolytope.from_inequalities(verts, ineqs, name=f"simplex{dim}")


def make_octahedron():
    verts = [tuple(s * (i == j) for j in range(3)) for i in range(3) for s in (1, -1)]
    ineqs = [(s, 1) for s in itertools.product((1, -1), repeat=3)]
    return IntegerPolytope.from_inequalities(verts, ineqs, name="octahedron")


def make_prism():
    verts = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1), (0, 1, 1)]
    ineqs = [((-1, 0, 0), 0), ((0, -1, 0), 0), ((1, 1, 0), 1), ((0, 0, -1), 0), ((0, 0, 1), 1)]
    return IntegerPolytope.from_inequalities(verts, ineqs, name="prism")


def make_hexagon():
    verts = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
    ineqs = [((1, 0), 1), ((0, 1), 1), ((-1, 1), 1), ((-1, 0), 1), ((0, -1), 1), ((1, -1), 1)]
    return IntegerPolytope.from_inequalities(verts, ineqs, name="hexagon")


def make_point():
    return IntegerPolytope(1, ((3,),), (), (((1,), 3),), name="point")


@pytest.fixture
def square():
    return make_box((1, 1))


@pytest.fixture
def cube():
    return make_box((1, 1, 1))


@pytest.fixture
def octahedron():
    return make_octahedron()


@pytest.fixture
def prism():
    return make_prism()


@pytest.fixture
def hexagon():
    return make_hexagon()


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
