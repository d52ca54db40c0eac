from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from cycletrace.poly import Poly, parse_poly
from cycletrace.symprod import (
    discriminant_coeffs, elem_from_power, elementary_symmetric, linear_forms,
    multiplicity_in_tuple, newton_weighted, power_sums, stratum, sym_coords,
    verify_newton_relation,
)

PROPS = settings(max_examples=100, derandomize=True, deadline=None)

rat = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def tuples(k_max=4, p_max=3):
    return st.integers(1, p_max).flatmap(
        lambda p: st.lists(st.tuples(*[rat] * p), min_size=1, max_size=k_max))


def test_linear_forms():
    (L,) = linear_forms([(1, 2)])
    assert L == parse_poly("xi1 + 2*xi2", ("xi1", "xi2"))


def test_elementary_symmetric_two_points():
    S = elementary_symmetric([(1,), (2,)])
    gens = ("xi1",)
    assert S[1] == parse_poly("3*xi1", gens)
    assert S[2] == parse_poly("2*xi1^2", gens)


def test_newton_relation_single_point_is_trivial():
    assert verify_newton_relation([(3, 4)], [1], 5).is_zero()


def test_newton_relation_rejects_small_l():
    with pytest.raises(ValueError):
        verify_newton_relation([(1,), (2,), (3,)], [1, 1, 1], 2)


def test_newton_relation_vector_weights():
    pts = [(1, 2), (0, -1), (3, 3)]
    ws = [(1, 2), (Fraction(1, 2), 0), (0, 5)]
    assert all(r.is_zero() for r in verify_newton_relation(pts, ws, 4))


def test_newton_relation_symbolic_points():
    gens = ("a", "b")
    a, b = Poly.var("a", gens), Poly.var("b", gens)
    assert verify_newton_relation([(a,), (b,), (a + b,)], [1, 2, 3], 3).is_zero()


def test_elem_from_power_numbers():
    # points 1, 2, 3: e = 6, 11, 6
    assert elem_from_power([6, 14, 36]) == [6, 11, 6]


def test_discriminant_detects_coincidence():
    D = discriminant_coeffs([(1, 0), (1, 0), (2, 1)])
    assert D[0].is_zero()
    D = discriminant_coeffs([(1, 0), (0, 1), (2, 1)])
    assert not D[0].is_zero()


def test_stratum_partition():
    s = stratum([(0, 0), (0, 0), (1, 1), (0, 0)])
    assert s.partition == (3, 1)
    assert s.mu == 3
    assert stratum([(1,), (2,)]).generic
    assert multiplicity_in_tuple([(0, 0), (0, 0), (1, 1)], (0, 0)) == 2


def test_sym_coords_degree():
    S = sym_coords([(1, 1), (2, 0), (0, 3)])
    assert [s.degree() for s in S] == [1, 2, 3]


@PROPS
@given(tuples())
def test_elem_from_power_inverts_power_sums(pts):
    k = len(pts)
    e = elem_from_power(power_sums(pts, k))
    S = elementary_symmetric(pts)
    assert all(a == b for a, b in zip(e, S[1:]))


@settings(max_examples=30, derandomize=True, deadline=None)
@given(st.lists(st.tuples(rat, rat), min_size=1, max_size=4))
def test_elementary_symmetric_permutation_invariant(pts):
    ref = elementary_symmetric(pts)
    for perm in permutations(pts):
        assert elementary_symmetric(list(perm)) == ref


@PROPS
@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), min_size=2, max_size=4))
def test_generic_iff_discriminant_nonzero(pts):
    D0 = discriminant_coeffs(pts)[0]
    assert stratum(pts).generic == (not D0.is_zero())
    assert (stratum(pts).mu == 0) == (len(set(pts)) == len(pts))
