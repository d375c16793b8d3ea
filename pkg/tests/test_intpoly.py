import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from trinogen.gfpoly import gfpoly
from trinogen.intpoly import (
    IntPoly,
    LiftingError,
    Trinomial,
    discriminant_mod,
    irreducibility_screen,
    iter_liftings,
    phi_adic_development,
    resultant_disc_oracle,
    select_lifting,
    trinomial_discriminant,
    truncated_development,
)

X = IntPoly((0, 1))


def sympy_disc(F: IntPoly) -> int:
    x = sympy.symbols("x")
    return int(sympy.discriminant(sum(c * x**i for i, c in enumerate(F.coeffs)), x))


def check_lifting(g, S, p, phi, U, T):
    assert S == phi * U + T * p
    assert phi.is_monic() and phi.mod_p(p) == g
    assert not (U.mod_p(p) % g).is_zero()
    assert not (T.mod_p(p) % g).is_zero()


def test_trinomial_validation():
    with pytest.raises(ValueError):
        Trinomial(5, 5, 1, 1)
    with pytest.raises(ValueError):
        Trinomial(5, 2, 1, 0)
    T = Trinomial(12, 8, 1, 1)
    assert (T.d0, T.n1, T.m1) == (4, 3, 2)


@pytest.mark.parametrize("T,expected", [(Trinomial(2, 1, 1, 1), -3), (Trinomial(5, 4, 3, 24), 13824 * 137208)])
def test_discriminant_examples(T, expected):
    assert trinomial_discriminant(T) == expected
    assert resultant_disc_oracle(T.to_poly()) == expected


def test_discriminant_valuation_worked_example():
    from trinogen.arith import vp

    assert vp(trinomial_discriminant(Trinomial(5, 4, 3, 24)), 2) == 12


def test_discriminant_gcd_branch():
    T = Trinomial(4, 2, 2, 1)
    assert T.d0 == 2
    assert trinomial_discriminant(T) == resultant_disc_oracle(T.to_poly()) == sympy_disc(T.to_poly())


def test_discriminant_binomial_uses_oracle():
    T = Trinomial(6, 3, 0, -63)
    assert T.is_binomial
    assert trinomial_discriminant(T) == sympy_disc(T.to_poly())


@pytest.mark.parametrize("coeffs,expected", [((1, 1, 1), -3), ((-1, 0, 0, 1), -27)])
def test_resultant_oracle_known_values(coeffs, expected):
    assert resultant_disc_oracle(IntPoly(coeffs)) == expected


def test_resultant_oracle_rejects_non_monic():
    with pytest.raises(ValueError):
        resultant_disc_oracle(IntPoly((1, 0, 2)))


def test_discriminant_matches_oracles_random():
    rng = random.Random(2024)
    for _ in range(200):
        n = rng.randint(2, 10)
        T = Trinomial(n, rng.randint(1, n - 1), rng.randint(-50, 50), rng.choice([b for b in range(-50, 51) if b]))
        assert trinomial_discriminant(T) == resultant_disc_oracle(T.to_poly())


def test_discriminant_matches_sympy_sample():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(2, 9)
        T = Trinomial(n, rng.randint(1, n - 1), rng.randint(-30, 30), rng.randint(1, 30))
        assert trinomial_discriminant(T) == sympy_disc(T.to_poly())


@given(st.integers(2, 30), st.data())
def test_discriminant_mod_agrees(n, data):
    m = data.draw(st.integers(1, n - 1))
    a = data.draw(st.integers(-10**6, 10**6))
    b = data.draw(st.integers(1, 10**6))
    mod = data.draw(st.sampled_from([4, 9, 25, 49, 121]))
    T = Trinomial(n, m, a, b)
    assert discriminant_mod(T, mod) == trinomial_discriminant(T) % mod


def test_development_examples():
    F = Trinomial(5, 4, 3, 24).to_poly()
    assert [t.coeffs for t in phi_adic_development(F, X).terms] == [(24,), (), (), (), (3,), (1,)]
    dev = phi_adic_development(F, X**2)
    assert [t.coeffs for t in dev.terms] == [(24,), (), (3, 1)]
    phi = X**3 + X + 1
    assert [t.coeffs for t in phi_adic_development(phi, phi).terms] == [(), (1,)]


def test_development_rejects_non_monic():
    with pytest.raises(ValueError):
        phi_adic_development(X**3, IntPoly((1, 2)))


int_polys = st.lists(st.integers(-10**4, 10**4), min_size=1, max_size=20).map(lambda c: IntPoly(tuple(c) + (1,)))
monic_phis = st.lists(st.integers(-20, 20), min_size=1, max_size=4).map(lambda c: IntPoly(tuple(c) + (1,)))


@given(int_polys, monic_phis)
def test_development_reconstructs(F, phi):
    dev = phi_adic_development(F, phi)
    assert dev.reconstruct() == F
    assert dev.is_adic()
    assert len(dev.terms) == F.degree // phi.degree + 1


@settings(max_examples=60)
@given(st.lists(st.integers(-10**5, 10**5), min_size=40, max_size=140), monic_phis, st.sampled_from([2, 3, 5]), st.integers(1, 8))
def test_truncated_development_matches_exact(coeffs, phi, p, k):
    F = IntPoly(tuple(coeffs) + (1,))
    M = p**k
    exact = phi_adic_development(F, phi).terms
    count = min(len(exact), 30)
    fast = truncated_development(F, phi, count, M)
    for t, u in zip(exact[:count], fast):
        assert IntPoly(c % M for c in t.coeffs) == u


def test_select_lifting_examples():
    g, S = gfpoly(3, [2, 1]), IntPoly((26, 0, 1))
    phi, U, T = select_lifting(g, S, 3)
    check_lifting(g, S, 3, phi, U, T)
    assert (phi.coeffs, U.coeffs, T.coeffs) == ((2, 1), (-2, 1), (10,))
    g, S = gfpoly(2, [1, 1]), Trinomial(5, 4, 3, 24).to_poly()
    check_lifting(g, S, 2, *select_lifting(g, S, 2))


def test_select_lifting_degenerate_case_moves_phi():
    # S = x, g = x: phi = x gives T = 0, so the search shifts to phi = x + p
    g, S = gfpoly(5, [0, 1]), X
    phi, U, T = select_lifting(g, S, 5)
    check_lifting(g, S, 5, phi, U, T)
    assert phi == IntPoly((5, 1))


def test_select_lifting_rejects_non_divisor():
    with pytest.raises(ValueError):
        select_lifting(gfpoly(3, [1, 1]), IntPoly((1, 0, 1)), 3)


def test_select_lifting_rejects_reducible():
    with pytest.raises(ValueError):
        select_lifting(gfpoly(3, [2, 0, 1]), IntPoly((2, 0, 1)), 3)


def test_select_lifting_fails_loudly():
    # S = g exactly with deg g = 2 over F_2: every candidate is checked, failure is explicit
    g = gfpoly(2, [1, 1, 1])
    try:
        out = select_lifting(g, IntPoly((1, 1, 1)), 2)
    except LiftingError:
        return
    check_lifting(g, IntPoly((1, 1, 1)), 2, *out)


@settings(max_examples=80)
@given(st.sampled_from([2, 3, 5]), st.lists(st.integers(-30, 30), min_size=2, max_size=8))
def test_liftings_satisfy_contract(p, coeffs):
    from trinogen.gfpoly import gf_factor

    S = IntPoly(tuple(coeffs) + (1,))
    for g, k in gf_factor(S.mod_p(p)):
        if k != 1:
            continue
        for phi, U, T in iter_liftings(g, S, p):
            check_lifting(g, S, p, phi, U, T)


@pytest.mark.parametrize(
    "coeffs,status",
    [((24, 0, 0, 0, 3, 1), "irreducible"), ((8, 9, 0, 0, 0, 0, 1), "reducible"), ((4, 0, 0, 0, 1), "reducible")],
)
def test_screen_examples(coeffs, status):
    res = irreducibility_screen(IntPoly(coeffs))
    assert res.status == status
    if status == "reducible":
        assert res.factor is not None
        assert IntPoly(coeffs).divmod_monic(res.factor)[1].is_zero()


def test_screen_eisenstein_witness():
    assert "3" in irreducibility_screen(IntPoly((24, 0, 0, 0, 3, 1))).witness


def test_screen_x6_8x_7_is_reducible():
    res = irreducibility_screen(Trinomial(6, 1, 8, 7).to_poly())
    assert res.status == "reducible"


@settings(max_examples=150)
@given(st.integers(2, 12), st.data())
def test_screen_never_misses_integer_roots(n, data):
    m = data.draw(st.integers(1, n - 1))
    r = data.draw(st.integers(-6, 6))
    a = data.draw(st.integers(-40, 40))
    b = -(r**n + a * r**m)
    if b == 0:
        return
    res = irreducibility_screen(Trinomial(n, m, a, b).to_poly())
    assert res.status == "reducible"


@settings(max_examples=100)
@given(st.integers(2, 8), st.data())
def test_screen_agrees_with_sympy(n, data):
    m = data.draw(st.integers(1, n - 1))
    a = data.draw(st.integers(-60, 60))
    b = data.draw(st.integers(-60, 60).filter(bool))
    F = Trinomial(n, m, a, b).to_poly()
    res = irreducibility_screen(F)
    x = sympy.symbols("x")
    irreducible = sympy.Poly(sum(c * x**i for i, c in enumerate(F.coeffs)), x).is_irreducible
    if res.status == "irreducible":
        assert irreducible
    if res.status == "reducible":
        assert not irreducible
