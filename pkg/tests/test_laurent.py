import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotrep.errors import ZeroArgument
from knotrep.laurent import (LaurentMatrix, LaurentPoly, base_change,
                             cyclic_resultant, det_laurent, divides,
                             exact_divide, gcd_polys, maximal_minors_gcd,
                             normalize_unit, parse_poly, resultant,
                             units_equal)

from helpers import (cofactor_det, product_over_cube_roots,
                     product_over_square_roots, sylvester_resultant)


def L(coeffs):
    return LaurentPoly(coeffs)


polys = st.dictionaries(st.integers(min_value=-4, max_value=4),
                        st.integers(min_value=-6, max_value=6),
                        max_size=5).map(LaurentPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero)


def small_matrix(n, max_deg=3):
    entries = st.dictionaries(st.integers(min_value=0, max_value=max_deg),
                              st.integers(min_value=-3, max_value=3),
                              max_size=3).map(LaurentPoly)
    return st.lists(st.lists(entries, min_size=n, max_size=n),
                    min_size=n, max_size=n).map(LaurentMatrix)


# ---------------------------------------------------------------- unit forms

def test_normalize_unit_examples():
    unf = normalize_unit(L({5: 1, 3: -1}))
    assert (unf.poly, unf.shift, unf.sign) == (L({2: 1, 0: -1}), 3, 1)
    unf = normalize_unit(L({-1: -1}))
    assert (unf.poly, unf.shift, unf.sign) == (LaurentPoly.one(), -1, -1)
    unf = normalize_unit(L({2: 1, 1: -1, 0: 1}))
    assert (unf.poly, unf.shift, unf.sign) == (L({2: 1, 1: -1, 0: 1}), 0, 1)
    z = normalize_unit(LaurentPoly.zero())
    assert (z.poly, z.shift, z.sign) == (LaurentPoly.zero(), 0, 1)


@given(polys)
def test_normalize_unit_idempotent(p):
    unf = normalize_unit(p)
    again = normalize_unit(unf.poly)
    assert again.poly == unf.poly
    assert unf.original() == p


@given(polys, st.integers(min_value=-3, max_value=3), st.sampled_from([1, -1]))
def test_normalize_unit_constant_on_orbit(p, k, s):
    assert normalize_unit(p.shift(k) * s).poly == normalize_unit(p).poly


# ------------------------------------------------------------- determinants

def test_det_identity():
    for n in range(5):
        assert det_laurent(LaurentMatrix.identity(n)) == LaurentPoly.one()


def test_det_b_matrix():
    b = LaurentMatrix([
        [L({0: -1}), L({1: 1}), L({})],
        [L({1: 1}), L({0: -1}), L({})],
        [L({}), L({}), L({1: 1, 0: -1})],
    ])
    det = det_laurent(b)
    # (1 - t^2)(t - 1), unit-normalized (t^2 - 1)(t - 1)
    assert det == L({1: 1, 0: -1}) * L({0: 1, 2: -1})
    assert normalize_unit(det).poly == L({2: 1, 0: -1}) * L({1: 1, 0: -1})


@given(st.integers(min_value=0, max_value=3).flatmap(small_matrix))
def test_det_matches_cofactor(m):
    assert det_laurent(m) == cofactor_det(m)


def test_det_matches_cofactor_larger():
    rng = random.Random(7)
    for _ in range(6):
        n = rng.choice([4, 5])
        m = LaurentMatrix([[LaurentPoly({rng.randint(-2, 3): rng.randint(-3, 3)
                                         for _ in range(rng.randint(0, 3))})
                            for _ in range(n)] for _ in range(n)])
        assert det_laurent(m) == cofactor_det(m)


def test_det_singular_column():
    z = LaurentPoly.zero()
    m = LaurentMatrix([[z, LaurentPoly.one()], [z, L({3: 2})]])
    assert det_laurent(m).is_zero


# --------------------------------------------------------------------- gcds

def test_gcd_examples():
    assert gcd_polys([L({2: 1, 0: -1}), L({3: 1, 0: -1})]) == L({1: 1, 0: -1})
    assert gcd_polys([L({1: 2}), L({3: 4})]) == L({0: 2})
    f = L({5: -3, 2: 6})
    assert gcd_polys([f, LaurentPoly.zero()]) == normalize_unit(f).poly
    assert gcd_polys([LaurentPoly.zero()]).is_zero
    assert gcd_polys([]).is_zero


@given(st.lists(polys, max_size=4))
def test_gcd_divides_all_inputs(fs):
    g = gcd_polys(fs)
    if g.is_zero:
        assert all(f.is_zero for f in fs)
    else:
        for f in fs:
            assert divides(g, f)


@given(nonzero_polys, nonzero_polys)
def test_gcd_times_arbitrary_multiple(f, g):
    # gcd(f*g, f) is divisible by f up to units
    d = gcd_polys([f * g, f])
    assert divides(d, f) and divides(f, d)


# --------------------------------------------------------------- resultants

def test_resultant_examples():
    assert resultant(L({1: 1, 0: -1}), L({1: 1, 0: 1})) == 2
    assert resultant(L({2: 1, 1: -1, 0: 1}), L({2: 1, 0: -1})) == 3
    delta_rho = L({2: 1, 1: -1, 0: 1}) * L({2: 1, 0: -1})
    assert resultant(delta_rho, L({2: 1, 0: -1})) == 0


def test_resultant_rejects_zero():
    with pytest.raises(ZeroArgument):
        resultant(LaurentPoly.zero(), LaurentPoly.one())


@given(nonzero_polys, nonzero_polys)
@settings(max_examples=150)
def test_resultant_matches_sylvester(f, g):
    assert resultant(f, g) == sylvester_resultant(f, g)


@given(nonzero_polys, nonzero_polys, nonzero_polys)
@settings(max_examples=60)
def test_resultant_multiplicative(f, g, h):
    assert resultant(f * g, h) == resultant(f, h) * resultant(g, h)


def test_cyclic_resultant_examples():
    assert cyclic_resultant(L({2: 1, 1: -1, 0: 1}), 2) == 3
    assert cyclic_resultant(LaurentPoly.one(), 7) == 1
    with pytest.raises(ZeroArgument):
        cyclic_resultant(LaurentPoly.zero(), 2)


# -------------------------------------------------------------- base change

def test_base_change_examples():
    assert base_change(L({2: 1, 1: -1, 0: 1}), 2) == L({2: 1, 1: 1, 0: 1})
    assert base_change(L({1: 1, 0: -2}), 3) == L({1: 1, 0: -8})
    assert base_change(LaurentPoly.term(5), 3) == LaurentPoly.term(125)


@given(nonzero_polys)
def test_base_change_identity(f):
    assert base_change(f, 1) == normalize_unit(f).poly


@given(nonzero_polys)
@settings(max_examples=80)
def test_base_change_square_product(f):
    lifted = base_change(f, 2).substitute_power(2)
    prod = product_over_square_roots(f)
    assert units_equal(lifted, prod)


@given(nonzero_polys)
@settings(max_examples=60)
def test_base_change_cube_product(f):
    lifted = base_change(f, 3).substitute_power(3)
    prod = product_over_cube_roots(f)
    assert units_equal(lifted, prod)


# ------------------------------------------------------ division, misc glue

def test_exact_divide():
    f = L({2: 1, 0: -1})
    g = L({1: 1, 0: 1})
    assert exact_divide(f, g) == L({1: 1, 0: -1})
    # units divide everything in the Laurent ring
    assert exact_divide(f, L({1: 1})) == L({1: 1, -1: -1})
    assert exact_divide(f, L({1: 1, 0: 2})) is None
    assert exact_divide(L({2: 1, 0: -1}), L({1: 2, 0: -2})) is None
    assert exact_divide(LaurentPoly.zero(), g).is_zero


@given(polys, nonzero_polys)
def test_divide_after_multiply(f, g):
    assert exact_divide(f * g, g) == f


def test_maximal_minors_gcd_rectangular():
    one = LaurentPoly.one()
    t = LaurentPoly.t()
    m = LaurentMatrix([[t - 1], [t * t - 1], [LaurentPoly.zero()]])
    assert maximal_minors_gcd(m, 1) == t - 1


def test_parse_poly():
    assert parse_poly("t^2 - t + 1") == L({2: 1, 1: -1, 0: 1})
    assert parse_poly("-3*t^-2+5") == L({-2: -3, 0: 5})
    assert parse_poly("t") == L({1: 1})
    assert parse_poly("7") == L({0: 7})
    with pytest.raises(ValueError):
        parse_poly("t^")


def test_serialization_round_trip():
    f = L({-2: 3, 0: -1, 5: 7})
    assert LaurentPoly.from_pairs(f.to_pairs()) == f
    assert f.to_pairs() == [[-2, "3"], [0, "-1"], [5, "7"]]


def test_pretty():
    assert L({2: 1, 1: -1, 0: 1}).pretty() == "t^2 - t + 1"
    assert L({-1: -2}).pretty() == "-2*t^-1"
    assert LaurentPoly.zero().pretty() == "0"
    assert L({2: 1, 1: 1, 0: 1}).pretty(var="s") == "s^2 + s + 1"
