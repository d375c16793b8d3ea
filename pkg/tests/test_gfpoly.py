import itertools
from functools import reduce

import pytest
from hypothesis import given, settings, strategies as st

from trinogen.arith import count_monic_irreducible
from trinogen.gfpoly import (
    count_factors_deg,
    count_factors_deg_excluding,
    ext_factor,
    extpoly,
    gcd,
    gf_factor,
    gfpoly,
    is_irreducible,
    is_separable,
    reduce_mod_p,
)


def product(factors, p):
    return reduce(lambda acc, gk: acc * gk[0] ** gk[1], factors, gfpoly(p, [1]))


def coeffs_of(factors):
    return [(list(g.coeffs), k) for g, k in factors]


def test_reduce_mod_p_examples():
    assert reduce_mod_p([24, 0, 0, 0, 3, 1], 2) == gfpoly(2, [0, 0, 0, 0, 1, 1])
    assert reduce_mod_p([26, 0, 1], 3) == gfpoly(3, [2, 0, 1])
    assert reduce_mod_p([9, 3], 3).is_zero()


def test_factor_worked_example():
    assert coeffs_of(gf_factor(gfpoly(2, [0, 0, 0, 0, 1, 1]))) == [([0, 1], 4), ([1, 1], 1)]


def test_factor_x4_plus_1_over_f3():
    # x^2 - x - 1 = x^2 + 2x + 2 and x^2 + x - 1 = x^2 + x + 2
    assert coeffs_of(gf_factor(gfpoly(3, [1, 0, 0, 0, 1]))) == [([2, 1, 1], 1), ([2, 2, 1], 1)]


def test_x2_plus_1_irreducible_over_f3():
    assert coeffs_of(gf_factor(gfpoly(3, [1, 0, 1]))) == [([1, 0, 1], 1)]
    assert is_irreducible(gfpoly(3, [1, 0, 1]))


def test_factor_rejects_zero():
    with pytest.raises(ValueError):
        gf_factor(gfpoly(5, [0]))


def test_factor_is_deterministic():
    f = gfpoly(5, [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1])
    assert gf_factor(f) == gf_factor(gfpoly(5, list(f.coeffs)))


@pytest.mark.parametrize("coeffs,p,expected", [([2, 0, 1], 3, True), ([0, 0, 0, 0, 1, 1], 2, False), ([-1, 0, 1], 2, False)])
def test_is_separable(coeffs, p, expected):
    assert is_separable(gfpoly(p, coeffs)) is expected


@pytest.mark.parametrize("p,d,s,t,expected", [(3, 1, 2, 26, 2), (3, 2, 2, 1, 1), (3, 2, 4, 1, 2)])
def test_count_factors_deg(p, d, s, t, expected):
    assert count_factors_deg(p, d, s, t) == expected


@pytest.mark.parametrize(
    "args,expected", [((3, 1, 2, 26, 1, 1), 1), ((3, 1, 2, 26, 2, 26), 0), ((2, 1, 1, 1, 1, 0), 1)]
)
def test_count_factors_deg_excluding(args, expected):
    assert count_factors_deg_excluding(*args) == expected


def test_ext_factor_examples():
    # y + 1 over F_2[x]/(x)
    assert [(f.degree, k) for f, k in ext_factor(extpoly(gfpoly(2, [0, 1]), [1, 1]))] == [(1, 1)]
    # y^2 + 1 over the trivial extension of F_2
    out = ext_factor(extpoly(gfpoly(2, [0, 1]), [1, 0, 1]))
    assert [k for _, k in out] == [2] and out[0][0].degree == 1
    # y^2 + x y over F_3[x]/(x^2 + 1)
    g = gfpoly(3, [1, 0, 1])
    out = ext_factor(extpoly(g, [0, (0, 1), 1]))
    assert sorted(tuple(f.coeffs) for f, _ in out) == sorted([((), (1,)), ((0, 1), (1,))])
    assert all(k == 1 for _, k in out)


def test_ext_factor_rejects_reducible_modulus():
    with pytest.raises(ValueError):
        extpoly(gfpoly(3, [2, 0, 1]), [1, 1])


def test_ext_factor_splits_over_extension():
    # x^2 + 1 is irreducible over F_3 but y^2 + 1 splits over F_9
    out = ext_factor(extpoly(gfpoly(3, [1, 0, 1]), [1, 0, 1]))
    assert [(f.degree, k) for f, k in out] == [(1, 1), (1, 1)]


def test_ext_factor_over_degree_one_modulus_agrees_with_prime_field():
    for coeffs in itertools.product(range(3), repeat=4):
        f = list(coeffs) + [1]
        base = [(list(g.coeffs), k) for g, k in gf_factor(gfpoly(3, f))]
        ext = ext_factor(extpoly(gfpoly(3, [0, 1]), f))
        assert [([c[0] if c else 0 for c in g.coeffs], k) for g, k in ext] == base


def test_ext_factor_requires_extension():
    with pytest.raises(TypeError):
        ext_factor(gfpoly(3, [1, 1]))


polys = st.tuples(st.sampled_from([2, 3, 5]), st.lists(st.integers(0, 4), min_size=1, max_size=13))


@settings(max_examples=500)
@given(polys)
def test_factor_round_trip(pc):
    p, coeffs = pc
    f = gfpoly(p, coeffs)
    if f.is_zero():
        return
    facs = gf_factor(f)
    assert product(facs, p).scale(f.coeffs[-1]) == f
    for g, k in facs:
        assert k >= 1 and g.coeffs[-1] == 1 and is_irreducible(g)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 30), st.integers(-50, 50))
def test_separable_binomial_degree_sum(p, s, t):
    f = gfpoly(p, [t] + [0] * (s - 1) + [1])
    if not is_separable(f):
        return
    assert sum(d * count_factors_deg(p, d, s, t) for d in range(1, s + 1)) == s


@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.integers(1, 20), st.integers(-20, 20), st.integers(1, 20), st.integers(-20, 20))
def test_excluding_count_bounds(p, d, s, t, m, c):
    full = count_factors_deg(p, d, s, t)
    excl = count_factors_deg_excluding(p, d, s, t, m, c)
    assert excl <= full <= count_monic_irreducible(p, d)
    f = gfpoly(p, [t] + [0] * (s - 1) + [1])
    h = gfpoly(p, [c] + [0] * (m - 1) + [1])
    if gcd(f, h).degree == 0:
        assert excl == full


def test_factor_sparse_high_degree_is_fast():
    f = gfpoly(3, [1] + [0] * 4373 + [1])
    facs = gf_factor(f)
    assert sum(g.degree * k for g, k in facs) == 4374
