import pytest

from ehrhart_forge.exact_math import (
    HVector,
    IntPolynomial,
    NotEhrhartSequence,
    binomial,
    binomial_transform,
    expand_series,
    g_theorem_check,
    h_coefficients,
    h_from_f,
    is_m_vector,
    is_totally_unimodular,
    macaulay_bound,
    macaulay_rep,
    numerator_from_values,
)


def test_polynomial_arithmetic():
    p = IntPolynomial.of(1, 1)
    assert (p * p).coeffs == (1, 2, 1)
    assert (p - p).coeffs == ()
    assert (p - p).degree == -1
    assert IntPolynomial.of(1, 0, 0).degree == 0
    assert (p * p)(2) == 9
    assert str(IntPolynomial.of(1, -4, 1)) == "1 - 4t + t^2"
    big = IntPolynomial.of(10**30, 1)
    assert (big * big)[0] == 10**60


@pytest.mark.parametrize("n,k,val", [(5, 2, 10), (4, 0, 1), (3, 5, 0)])
def test_binomial(n, k, val):
    assert binomial(n, k) == val


def test_binomial_rejects_negative():
    with pytest.raises(ValueError):
        binomial(-1, 2)


@pytest.mark.parametrize(
    "n,i,terms", [(3, 1, ((3, 1),)), (4, 2, ((3, 2), (1, 1))), (1, 2, ((2, 2),))]
)
def test_macaulay_rep(n, i, terms):
    rep = macaulay_rep(n, i)
    assert rep.terms == terms
    assert rep.value == n


@pytest.mark.parametrize("n,i,val", [(0, 3, 0), (3, 1, 6), (4, 2, 5)])
def test_macaulay_bound(n, i, val):
    assert macaulay_bound(n, i) == val


def test_m_vectors():
    assert is_m_vector((1, 3, 6))
    res = is_m_vector((1, 2, 5))
    assert not res and res.violated_index == 2
    assert is_m_vector((1,))
    assert not is_m_vector((2, 1))
    assert not is_m_vector((1, -1))


def test_g_theorem():
    assert g_theorem_check((1, 1, 1)).passed
    v = g_theorem_check((1, 2, 1, 2, 1))
    assert v.symmetric and not v.unimodal and not v.g_is_m_vector
    assert -1 in v.g_vector
    b4 = g_theorem_check(HVector((1, 14, 87, 148, 87, 14, 1)))
    assert b4.passed and b4.g_vector == (1, 13, 73, 61)
    assert g_theorem_check((1,)).passed
    assert not g_theorem_check((1, 2)).symmetric


@pytest.mark.parametrize(
    "f,d,h", [((3, 3), 2, (1, 1, 1)), ((4, 4), 2, (1, 2, 1)), ((6, 12, 8), 3, (1, 3, 3, 1)), ((1,), 1, (1, 0))]
)
def test_h_from_f(f, d, h):
    assert h_from_f(f, d).entries == h


def test_h_of_single_edge():
    # an edge has f = (2, 1); with d = 2 every coefficient past h_0 vanishes
    assert h_coefficients((2, 1), 2) == [1, 0, 0]
    assert h_from_f((2, 1), 2).polynomial() == IntPolynomial.of(1)


def test_h_from_f_rejects_wrong_length():
    with pytest.raises(ValueError):
        h_from_f((3,), 2)


def test_hvector_rejects_negative():
    with pytest.raises(ValueError):
        HVector((1, -1))


@pytest.mark.parametrize(
    "values,m,h",
    [((1, 1, 1), 0, (1,)), ((1, 2, 3, 4), 1, (1,)), ((1, 3, 6, 10), 2, (1,)), ((1, 4, 9, 16), 2, (1, 1))],
)
def test_numerator_from_values(values, m, h):
    assert numerator_from_values(values, m).coeffs == h


def test_numerator_surplus_detected():
    with pytest.raises(NotEhrhartSequence) as ei:
        numerator_from_values((1, 2, 3, 5), 1)
    assert ei.value.index == 3


def test_numerator_needs_enough_values():
    with pytest.raises(ValueError):
        numerator_from_values((1, 2), 2)


def test_binomial_transform_prefix():
    vals = [1, 6, 21, 55, 120]
    assert binomial_transform(vals[:3], 4) == [1, 1, 1]
    assert expand_series(IntPolynomial.of(1, 1, 1), 5, 5) == vals


def test_total_unimodularity():
    assert is_totally_unimodular([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert not is_totally_unimodular([[1, 1], [-1, 1]])
    # vertex-edge incidence of the 4-cycle
    c4 = [[1, 0, 0, 1], [1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]]
    assert is_totally_unimodular(c4)
    # odd cycle incidence has determinant 2
    c3 = [[1, 0, 1], [1, 1, 0], [0, 1, 1]]
    assert not is_totally_unimodular(c3)
    assert not is_totally_unimodular([[2]])
    with pytest.raises(ValueError):
        is_totally_unimodular([[0] * 9 for _ in range(9)])
