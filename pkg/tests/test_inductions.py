import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import X, Y, poly_to_vr
from modp_llc.fields import GF
from modp_llc.finite_reps import VrElement, gl2_act, phi_generator
from modp_llc.inductions import (
    IwahoriElement,
    SmoothCharSymbol,
    SphericalElement,
    T10,
    T12,
    T_spherical,
    Tm10,
    Weight,
    act_g,
    element_from_json,
    element_to_json,
    iwahori_indicator,
    normalize_iwahori,
    normalize_spherical,
    random_element,
    random_group_element,
    random_iwahori_matrix,
    random_kz_matrix,
    spherical_indicator,
    twist_eta,
)
from modp_llc.padic import Mat2, beta, char_value, factor_IZ, factor_KZ, identity, reduce_mod_p, scalar, w
from modp_llc.tree import EdgeKey, VertexKey, reverse, tree

PRIMES = [2, 3, 5, 7]


def iw(p, seed, r=0, kind="d", radius=2, count=4):
    return random_element(p, "iwahori", radius, count, seed, char_kind=kind, r=r)


def test_normalize_spherical_examples():
    for p in [2, 3, 5]:
        F = GF(p)
        for r in range(p):
            x = normalize_spherical(w(p), VrElement.monomial(F, r, 0))
            assert x == spherical_indicator(p, VrElement.monomial(F, r, r))
            P = VrElement.monomial(F, r, 1 if r else 0)
            assert normalize_spherical(scalar(p, p), P) == spherical_indicator(p, P)
        r = 2 * p - 2
        for lam in range(p):
            g = beta(p) @ Mat2(p, 1, lam, 0, 1) @ w(p)
            got = normalize_spherical(g, phi_generator(F))
            want = normalize_spherical(beta(p), poly_to_vr(X**r - (lam * X + Y) ** (p - 1) * X ** (p - 1), r, p))
            assert got == want
            assert list(got.support) == [VertexKey(-1, ())]


def test_normalize_iwahori_examples():
    p = 5
    assert normalize_iwahori(identity(p)) == iwahori_indicator(p)
    u = Mat2(p, 3, 1, p, 2)
    for r in range(p - 1):
        assert normalize_iwahori(u, 1, "d", r) == iwahori_indicator(p, r=r, coeff=pow(2, r, p))
    assert normalize_iwahori(beta(p).scaled(p)) == normalize_iwahori(beta(p))


@pytest.mark.parametrize("p", PRIMES)
def test_normalization_well_defined(p):
    rng = random.Random(p)
    F = GF(p)
    for _ in range(200):
        g = random_group_element(p, rng)
        u = random_iwahori_matrix(p, rng)
        _, unit = factor_IZ(u)
        kind = rng.choice("da")
        r = rng.randrange(p - 1)
        assert normalize_iwahori(g @ u, 1, kind, r) == normalize_iwahori(g, char_value(unit, kind, r), kind, r)
        k = random_kz_matrix(p, rng)
        _, kunit = factor_KZ(k)
        P = VrElement(p - 1, tuple(F.random(rng) for _ in range(p)))
        assert normalize_spherical(g @ k, P) == normalize_spherical(g, gl2_act(reduce_mod_p(kunit), P))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_arithmetic(p):
    F = GF(p)
    for s in range(20):
        x, y = iw(p, s), iw(p, s + 100)
        zero = IwahoriElement(p, "d", 0)
        assert x + zero == x
        assert (x + (-1) * x).is_zero()
        assert (x + y).scale(F(2)) == x.scale(F(2)) + y.scale(F(2))
        assert x - y == x + (-y)
    with pytest.raises(ValueError):
        iw(p, 0, r=0) + IwahoriElement(p, "a", 0)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_group_action(p):
    rng = random.Random(p)
    for s in range(100):
        x = iw(p, s, r=rng.randrange(p - 1))
        g, h = random_group_element(p, rng), random_group_element(p, rng)
        assert act_g(identity(p), x) == x
        assert act_g(g, act_g(h, x)) == act_g(g @ h, x)
    for _ in range(20):
        k = random_iwahori_matrix(p, rng)
        _, unit = factor_IZ(k)
        for r in range(p - 1):
            assert act_g(k, iwahori_indicator(p, r=r)) == iwahori_indicator(p, r=r).scale(char_value(unit, "d", r))


def test_T_spherical_examples():
    for p in [2, 3, 5, 7]:
        F = GF(p)
        T = tree(p)
        one = spherical_indicator(p, VrElement(0, (F.one,)))
        y = T_spherical(one)
        assert set(y.support) == set(T.neighbors(T.base))
        for r in range(1, p):
            x = spherical_indicator(p, VrElement.monomial(F, r, 0))
            # P(0, Y) = 0 for P = X^r, so only the p downward terms survive
            want = SphericalElement(p, Weight("V", r))
            for lam in range(p):
                want = want + normalize_spherical(Mat2(p, p, lam, 0, 1), VrElement.monomial(F, r, 0))
            assert T_spherical(x) == want


@pytest.mark.parametrize("p", [2, 3, 5])
def test_T_spherical_equivariance(p):
    rng = random.Random(p)
    for s in range(40):
        r = rng.randrange(p)
        x = random_element(p, "spherical", 2, 3, s, r=r)
        for g in (random_kz_matrix(p, rng), random_group_element(p, rng)):
            assert T_spherical(act_g(g, x)) == act_g(g, T_spherical(x))


def test_hecke_generator_images():
    for p in PRIMES:
        T = tree(p)
        e0 = iwahori_indicator(p)
        assert T10(e0) == iwahori_indicator(p, reverse(T.base_edge))
        want = IwahoriElement(p, "d", 0)
        for lam in range(p):
            want = want + normalize_iwahori(Mat2(p, 1, 0, p * lam, p))
        assert T12(e0) == want
        assert set(T12(e0).support) == set(T.continuations(T.base_edge))
        want = IwahoriElement(p, "d", 0)
        for lam in range(p):
            want = want + normalize_iwahori(Mat2(p, p, lam, 0, 1))
        assert Tm10(e0) == want


def test_T10_requires_trivial_character():
    with pytest.raises(ValueError):
        T10(iwahori_indicator(5, r=1))
    T10(iwahori_indicator(5, r=4))


@pytest.mark.parametrize("p", PRIMES)
def test_noncommutative_relations(p):
    for s in range(60):
        x = iw(p, s, radius=3)
        assert T10(T10(x)) == x
        assert T12(T10(T12(x))) == -T12(x)
        assert Tm10(x) == T10(T12(T10(x)))
        e = -T12(T10(x))
        assert -T12(T10(e)) == e
        assert (Tm10(e) + T10(e)).is_zero()
        assert Tm10(x - e).is_zero()


@pytest.mark.parametrize("p", [3, 5, 7])
def test_commutative_relations(p):
    for r in range(1, p - 1):
        for s in range(30):
            x = iw(p, s, r=r)
            assert Tm10(T12(x)).is_zero()
            assert T12(Tm10(x)).is_zero()
            y = iw(p, s, r=r, kind="a")
            assert Tm10(T12(y)).is_zero() and T12(Tm10(y)).is_zero()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_operators_equivariant(p):
    rng = random.Random(p)
    for s in range(30):
        h = random_group_element(p, rng)
        x = iw(p, s, r=rng.randrange(p - 1))
        for op in (T12, Tm10):
            assert op(act_g(h, x)) == act_g(h, op(x))
        x0 = iw(p, s)
        assert T10(act_g(h, x0)) == act_g(h, T10(x0))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_figure_remark(p):
    T = tree(p)
    for e in T.edge_ball(2):
        y = T12(T10(iwahori_indicator(p, e)))
        others = {EdgeKey(e.origin, u) for u in T.neighbors(e.origin) if u != e.terminal}
        assert set(y.support) == others == set(T.continuations(reverse(e)))


def test_twist_eta():
    p = 5
    F = GF(p)
    eta = SmoothCharSymbol(F(2), 3)
    for s in range(20):
        x, y = iw(p, s, r=1), iw(p, s + 1, r=1)
        assert twist_eta(x, SmoothCharSymbol.trivial(F)) == x
        assert twist_eta(twist_eta(x, eta), eta.inverse()) == x
        assert twist_eta(x + y, eta) == twist_eta(x, eta) + twist_eta(y, eta)
        assert twist_eta(x.scale(F(3)), eta) == twist_eta(x, eta).scale(F(3))
        z = random_element(p, "spherical", 2, 3, s, r=2)
        assert twist_eta(twist_eta(z, eta), eta.inverse()) == z


def test_smooth_char_values():
    F = GF(5)
    eta = SmoothCharSymbol(F(2), 1)
    assert eta(5) == 2
    assert eta(3) == 3
    assert eta(Mat2(5, 1, 0, 0, 5).det() * 3) == 1
    assert (eta * eta.inverse()).is_trivial()


def test_random_element():
    p = 3
    assert random_element(p, "iwahori", 2, 4, 9) == random_element(p, "iwahori", 2, 4, 9)
    assert random_element(p, "iwahori", 2, 0, 9).is_zero()
    x = random_element(p, "iwahori", 1, 5, 3)
    assert set(x.support) <= set(tree(p).edge_ball(1))
    y = random_element(p, "spherical", 2, 5, 3, weight=Weight("Q", 4))
    assert set(y.support) <= set(tree(p).ball(2))


@given(st.sampled_from([2, 3, 5]), st.integers(0, 10**6), st.sampled_from(["iwahori", "spherical", "quotient"]))
def test_element_json_round_trip(p, seed, kind):
    if kind == "quotient":
        x = random_element(p, "spherical", 2, 4, seed, weight=Weight("Q", 2 * p - 2))
    else:
        x = random_element(p, kind, 2, 4, seed, r=seed % (p - 1) if kind == "iwahori" else seed % p)
    assert element_from_json(element_to_json(x)) == x


def test_element_json_rejects_garbage():
    with pytest.raises(ValueError):
        element_from_json({"kind": "iwahori", "p": 3})
    bad = element_to_json(iwahori_indicator(3))
    bad["support"][0]["key"]["terminal"] = {"n": 3, "digits": []}
    with pytest.raises(ValueError):
        element_from_json(bad)
