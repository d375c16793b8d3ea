import random

import pytest
from hypothesis import given, settings, strategies as st

from trinogen.arith import primes_below
from trinogen.gfpoly import gf_factor, is_separable
from trinogen.intpoly import IntPoly, Trinomial, irreducibility_screen, resultant_disc_oracle
from trinogen.ore import FactorizationShape, analyze_prime, dedekind_index_test


def irreducible_family(a_mod, b_res, count=12, seed=0):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        T = Trinomial(6, rng.randint(1, 5), a_mod * rng.randint(-50, 50), b_res + a_mod * rng.randint(-50, 50))
        if T.b and irreducibility_screen(T.to_poly()).status != "reducible":
            out.append(T)
    return out


def test_worked_example_report():
    rep = analyze_prime(Trinomial(5, 4, 3, 24).to_poly(), 2)
    assert rep.index_lower_bound == 3
    assert rep.regular
    assert rep.shape == FactorizationShape(((4, 1), (1, 1)))
    assert [fa.index for fa in rep.factors] == [3, 0]


@pytest.mark.parametrize("T", irreducible_family(9, -1))
def test_sextic_three_family_shape(T):
    rep = analyze_prime(T.to_poly(), 3)
    assert rep.regular
    assert rep.shape.entries == ((1, 1), (1, 1), (2, 1), (2, 1))


@pytest.mark.parametrize("T", irreducible_family(8, -1, seed=1))
def test_sextic_two_family_shape(T):
    rep = analyze_prime(T.to_poly(), 2)
    assert rep.regular
    assert rep.shape.entries == ((1, 1), (1, 1), (1, 2), (1, 2))


def test_shape_validation():
    with pytest.raises(ValueError):
        FactorizationShape(((0, 1),))
    assert FactorizationShape(((2, 1), (1, 1))).entries == ((1, 1), (2, 1))
    assert FactorizationShape(((2, 1), (1, 3))).total_degree == 5


@pytest.mark.parametrize(
    "coeffs,p,expected", [((24, 0, 0, 0, 3, 1), 2, True), ((1, 0, 1), 3, False), ((3, 0, 1), 2, True)]
)
def test_dedekind_examples(coeffs, p, expected):
    # x^2 + 3 at 2 is computed, not assumed: Z[sqrt(-3)] has index 2 in Z[(1 + sqrt(-3)) / 2]
    assert dedekind_index_test(IntPoly(coeffs), p) is expected


def test_report_is_deterministic():
    F = Trinomial(18, 1, 342, 26).to_poly()
    assert analyze_prime(F, 3).to_json() == analyze_prime(F, 3).to_json()


def test_report_json_fields():
    import json

    d = json.loads(analyze_prime(Trinomial(5, 4, 3, 24).to_poly(), 2).to_json())
    assert d["schema"] == 1 and d["shape"] == [[1, 1], [4, 1]] and d["index_lower_bound"] == 3
    side = d["factors"][0]["polygon"]["sides"][0]
    assert side["slope"] == "-3/4" and side["start"] == [0, 3] and side["end"] == [4, 0]


def test_non_regular_report_has_no_shape():
    # x^36 + 35x^18 + 54 at 3: the x-side has residual 2(y + 1)^3
    rep = analyze_prime(Trinomial(36, 18, 35, 54).to_poly(), 3)
    assert not rep.regular and rep.shape is None
    assert rep.index_lower_bound > 0
    assert rep.partial_shape.total_degree < 36


def random_monic(rng, deg):
    return IntPoly(tuple(rng.randint(-30, 30) for _ in range(deg)) + (1,))


def test_ore_dedekind_consistency():
    rng = random.Random(11)
    checked = 0
    while checked < 100:
        F = random_monic(rng, rng.randint(2, 8))
        if irreducibility_screen(F).status != "irreducible":
            continue
        disc = resultant_disc_oracle(F)
        primes = [p for p in primes_below(F.degree) if disc % (p * p) == 0]
        if not primes:
            continue
        for p in primes:
            rep = analyze_prime(F, p)
            assert (rep.index_lower_bound >= 1) == dedekind_index_test(F, p), (F, p)
        checked += 1


@settings(max_examples=60)
@given(st.lists(st.integers(-40, 40), min_size=2, max_size=8), st.sampled_from([2, 3, 5, 7]))
def test_squarefree_reduction_gives_dedekind_split(coeffs, p):
    F = IntPoly(tuple(coeffs) + (1,))
    Fbar = F.mod_p(p)
    if not is_separable(Fbar) or irreducibility_screen(F).status == "reducible":
        return
    rep = analyze_prime(F, p)
    assert rep.regular and rep.index_lower_bound == 0
    assert sorted(rep.shape.entries) == sorted((1, g.degree) for g, _ in gf_factor(Fbar))
    assert not dedekind_index_test(F, p)


@settings(max_examples=60)
@given(st.integers(2, 12), st.data(), st.sampled_from([2, 3, 5]))
def test_regular_shape_is_complete(n, data, p):
    m = data.draw(st.integers(1, n - 1))
    a = data.draw(st.integers(-300, 300))
    b = data.draw(st.integers(-300, 300).filter(bool))
    F = Trinomial(n, m, a, b).to_poly()
    if F.mod_p(p).degree < 1 or irreducibility_screen(F).status == "reducible":
        return
    rep = analyze_prime(F, p)
    assert (rep.shape is not None) == rep.regular
    if rep.regular:
        assert rep.shape.total_degree == n
    assert rep.index_lower_bound == sum(fa.index for fa in rep.factors)
