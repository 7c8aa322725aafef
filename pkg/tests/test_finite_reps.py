import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import X, Y, poly_to_vr, rank_gf
from modp_llc.fields import GF
from modp_llc.finite_reps import (
    IndBChar,
    VrElement,
    decompose_2p2,
    embed_vp1,
    gl2_act,
    orbit_span_dimension,
    phi_generator,
    psi,
    psi_inverse,
    quot_act,
    quotient_space,
    right_translate,
    sum_powers,
    v0_generator,
    vstar_reduce,
)
from modp_llc.padic import Gl2FpMat, gl2_fp

PRIMES = [2, 3, 5, 7]


def vec(field, r, rng):
    return VrElement(r, tuple(field.random(rng) for _ in range(r + 1)))


def substitute(P, g, p):
    # independent oracle: expand P(aX + cY, bX + dY) with sympy
    expr = sum(int(c.v) * (g.a * X + g.c * Y) ** (P.r - i) * (g.b * X + g.d * Y) ** i for i, c in enumerate(P.coeffs))
    return poly_to_vr(expr, P.r, p)


def test_gl2_act_examples():
    for p in PRIMES:
        F = GF(p)
        for r in range(2 * p):
            assert gl2_act(Gl2FpMat(p, 0, 1, 1, 0), VrElement.monomial(F, r, 0)) == VrElement.monomial(F, r, r)
        r = 2 * p - 2
        for lam in range(p):
            got = gl2_act(Gl2FpMat(p, lam, 1, 1, 0), phi_generator(F))
            want = poly_to_vr(X ** (2 * p - 2) - (lam * X + Y) ** (p - 1) * X ** (p - 1), r, p)
            assert got == want


@pytest.mark.parametrize("p", [2, 3, 5])
def test_gl2_act_matches_sympy_and_is_an_action(p):
    rng = random.Random(p)
    F = GF(p)
    group = gl2_fp(p)
    for _ in range(40):
        r = rng.randrange(0, 2 * p)
        P = vec(F, r, rng)
        g, h = rng.choice(group), rng.choice(group)
        assert gl2_act(g, P) == substitute(P, g, p)
        assert gl2_act(g, gl2_act(h, P)) == gl2_act(g @ h, P)
        assert gl2_act(Gl2FpMat(p, 1, 0, 0, 1), P) == P


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_vstar_reduce(p):
    F = GF(p)
    r = 2 * p - 2
    qs = quotient_space(p, r)
    assert qs.dim == p + 1
    if r >= p + 1:
        theta = poly_to_vr((X**p * Y - X * Y**p) * X ** (r - p - 1), r, p)
        assert vstar_reduce(theta, p).is_zero()
    assert not vstar_reduce(VrElement.monomial(F, r, 0), p).is_zero()
    rng = random.Random(p)
    group = gl2_fp(p)
    for _ in range(30):
        P, Q = vec(F, r, rng), vec(F, r, rng)
        g = rng.choice(group)
        assert vstar_reduce(P + Q, p) == vstar_reduce(P, p) + vstar_reduce(Q, p)
        assert vstar_reduce(gl2_act(g, P), p) == quot_act(g, vstar_reduce(P, p))


def test_vstar_reduce_degree_guard():
    with pytest.raises(ValueError):
        vstar_reduce(VrElement.monomial(GF(5), 3, 0), 5)


def test_vstar_kernel_dimension():
    # kernel of reduction on V_{r} equals V_r^* of dimension r - p
    p, r = 5, 11
    F = GF(p)
    rows = [[c.v for c in vstar_reduce(VrElement.monomial(F, r, j), p).coeffs] for j in range(r + 1)]
    assert rank_gf(rows, p) == p + 1


def test_psi_examples():
    for p in [2, 3, 5]:
        F = GF(p)
        r = 2 * p - 2
        f = psi(phi_generator(F), p)
        assert f.at_row(0, 1) == 1
        x = psi(VrElement.monomial(F, r, 0), p)
        assert x.at_row(1, 0) == 1 and x.at_row(0, 1) == 0
        if r >= p + 1:
            theta = poly_to_vr((X**p * Y - X * Y**p) * Y ** (r - p - 1), r, p)
            assert psi(theta, p).is_zero()


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_psi_inverse(p):
    F = GF(p)
    r = 2 * p - 2
    one = IndBChar(p, r, (F.one,) * (p + 1))
    assert psi_inverse(one) == vstar_reduce(v0_generator(F), p)
    assert psi_inverse(IndBChar(p, r, (F.zero,) * (p + 1))).is_zero()
    rng = random.Random(p)
    for _ in range(20):
        P = vec(F, r, rng)
        assert psi_inverse(psi(P, p)) == vstar_reduce(P, p)


def test_ind_char_transformation_law():
    p = 5
    F = GF(p)
    f = psi(VrElement.monomial(F, 8, 3), p)
    for g in gl2_fp(p)[:60]:
        for t in range(1, p):
            b = Gl2FpMat(p, 1, 0, 0, t)
            assert f(b @ g) == f(g) * pow(t, 8 % (p - 1), p)


@pytest.mark.parametrize("p", [2, 3])
def test_psi_equivariant_exhaustive(p):
    F = GF(p)
    r = 2 * p - 2
    for g in gl2_fp(p):
        for j in range(r + 1):
            P = VrElement.monomial(F, r, j)
            assert psi(gl2_act(g, P), p) == right_translate(g, psi(P, p))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_decompose_examples(p):
    F = GF(p)
    r = 2 * p - 2
    zero = VrElement.zero(F, p - 1)
    assert decompose_2p2(vstar_reduce(v0_generator(F), p), p) == (F.one, zero)
    assert decompose_2p2(vstar_reduce(VrElement.monomial(F, r, 0), p), p) == (F.zero, VrElement.monomial(F, p - 1, 0))
    a, y = decompose_2p2(vstar_reduce(phi_generator(F), p), p)
    assert a == 1 and y == VrElement.monomial(F, p - 1, 0, -1)
    assert embed_vp1(y, p) == vstar_reduce(VrElement.monomial(F, r, 0, -1), p)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_decomposition_properties(p):
    F = GF(p)
    r = 2 * p - 2
    e0 = vstar_reduce(v0_generator(F), p)
    rng = random.Random(p)
    group = gl2_fp(p)
    for g in group:
        assert quot_act(g, e0) == e0
    for _ in range(30):
        x = vstar_reduce(vec(F, r, rng), p)
        x2 = vstar_reduce(vec(F, r, rng), p)
        a, y = decompose_2p2(x, p)
        assert e0.scale(a) + embed_vp1(y, p) == x
        a2, y2 = decompose_2p2(x2, p)
        assert decompose_2p2(x + x2, p) == (a + a2, y + y2)
        # projections are idempotent and complementary
        assert decompose_2p2(embed_vp1(y, p), p) == (F.zero, y)
        assert decompose_2p2(e0.scale(a), p) == (a, VrElement.zero(F, p - 1))
        g = rng.choice(group)
        assert embed_vp1(gl2_act(g, y), p) == quot_act(g, embed_vp1(y, p))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_orbit_span_dimension(p):
    F = GF(p)
    assert orbit_span_dimension(VrElement.monomial(F, 2 * p - 2, 0), p) == p


def test_extension_coefficients():
    E = GF(3, 2)
    P = VrElement(4, (E([0, 1]), E(0), E(2), E(0), E([1, 1])))
    a, y = decompose_2p2(vstar_reduce(P, 3), 3)
    assert vstar_reduce(v0_generator(GF(3)), 3).over(E).scale(a) + embed_vp1(y, 3) == vstar_reduce(P, 3)


def test_sum_powers_examples():
    assert sum_powers(1, 3) == 0
    assert sum_powers(2, 3) == 2
    assert sum_powers(8, 5) == 4
    with pytest.raises(ValueError):
        sum_powers(0, 3)


@given(st.sampled_from([3, 5, 7, 11]), st.integers(1, 60))
def test_sum_powers_matches_fermat(p, j):
    direct = sum(i**j for i in range(p)) % p
    assert sum_powers(j, p) == direct == (p - 1 if j % (p - 1) == 0 else 0)


@given(st.integers(0, 8), st.lists(st.integers(0, 4), min_size=9, max_size=9))
def test_vr_json_round_trip(r, cs):
    F = GF(5)
    P = VrElement(r, tuple(F(c) for c in cs[: r + 1]))
    assert VrElement.from_json(P.to_json(), F) == P
