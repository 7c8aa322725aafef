import pytest

from modp_llc.fields import GF
from modp_llc.inductions import T10, T12, SmoothCharSymbol, Tm10, iwahori_indicator
from modp_llc.llc import (
    CharacterSymbol,
    Irreducible,
    SplitSum,
    class_mod,
    consistency_numeric,
    correspondence,
    delta,
    delta_coefficients_ok,
    galois_side,
    gl2_side_iwahori,
    gl2_side_spherical,
    omega_power,
    symmetry_check,
    trivial_eta,
)


def test_class_mod_and_delta():
    assert class_mod(2, 7) == 2
    assert class_mod(-1, 7) == 5
    assert class_mod(3 - 3 - 2, 3) == 0
    assert delta(0, 0) == 1 and delta(0, 1) == 0 and delta(4, 4) == 1


def test_galois_side_examples():
    for p in [3, 5]:
        F = GF(p)
        for r in range(p):
            g = galois_side(p, r, F.zero)
            assert g == Irreducible(p, r + 1, trivial_eta(F))
    F = GF(5)
    g = galois_side(5, 1, F(2))
    assert g == SplitSum((CharacterSymbol(F(2), 2), CharacterSymbol(F(3), 0)))
    assert g == SplitSum((CharacterSymbol(F(3), 0), CharacterSymbol(F(2), 2)))
    with pytest.raises(ValueError):
        galois_side(5, 5, F(1))


def test_irreducible_constraints():
    with pytest.raises(ValueError):
        Irreducible(3, 4, trivial_eta(GF(3)))
    a = Irreducible(5, 2, trivial_eta(GF(5)), identify_frobenius=True)
    b = Irreducible(5, 10, trivial_eta(GF(5)), identify_frobenius=True)
    assert a == b
    assert Irreducible(5, 2, trivial_eta(GF(5))) != Irreducible(5, 10, trivial_eta(GF(5)))
    assert Irreducible(5, 3, trivial_eta(GF(5))).det_exponent == 3


def test_twisting_folds_into_components():
    F = GF(7)
    eta = SmoothCharSymbol(F(3), 2)
    eta2 = SmoothCharSymbol(F(5), 1)
    for r in range(7):
        for lam in F.elements():
            base = galois_side(7, r, lam, eta)
            both = galois_side(7, r, lam, eta * eta2)
            if lam:
                shifted = SplitSum(tuple(c * CharacterSymbol.from_smooth(eta2) for c in base.components))
                assert both == shifted
            else:
                assert both.twist == eta * eta2 and both.c == base.c


def test_gl2_side_spherical_examples():
    F5, F7 = GF(5), GF(7)
    assert len(gl2_side_spherical(5, 2, F5.zero)) == 1
    pair = gl2_side_spherical(7, 5, F7.one)
    assert pair[1].r == 5
    first, twin = gl2_side_spherical(5, 1, F5(2))
    assert (twin.r, twin.lam, twin.eta) == (1, F5(3), omega_power(F5, 2))


def test_gl2_side_iwahori_relations():
    p = 5
    F = GF(p)
    lam = F(2)
    (r0,) = gl2_side_iwahori(p, 0, F.zero)
    assert r0.relations == ((1, 0, 0, 0), (0, 1, 1, 0))
    top = gl2_side_iwahori(p, p - 1, lam)[0]
    assert top.relations == ((1, 1, 0, 0), (0, 0, 1, -lam))
    mid = gl2_side_iwahori(p, 2, lam)[0]
    assert mid.relations == ((1, 0, 0, 0), (0, 0, 1, -lam))
    for pp in [3, 5, 7]:
        assert all(delta_coefficients_ok(pp, r) for r in range(pp))


def test_twin_delta_terms_activate():
    # the twin index [p-3-r] can itself be 0 or p-1; its T10 terms must follow it
    for p in [3, 5, 7]:
        F = GF(p)
        for r in range(p):
            twin = gl2_side_iwahori(p, r, F.one)[1]
            first, second = twin.relations
            assert first[1] == delta(twin.r, p - 1) and second[1] == delta(twin.r, 0)


def test_apply_relation():
    p = 3
    F = GF(p)
    pres = gl2_side_iwahori(p, 0, F.one)[0]
    x = iwahori_indicator(p)
    assert pres.apply_relation(0, x) == Tm10(x)
    assert pres.apply_relation(1, x) == T12(x) + T10(x) - x


@pytest.mark.parametrize("p", [3, 5, 7])
def test_symmetry_exhaustive(p):
    F = GF(p)
    for r in range(p):
        for lam in F.nonzero():
            assert symmetry_check(p, r, lam)
            assert symmetry_check(p, r, lam, SmoothCharSymbol(F(2), 1))


def test_symmetry_extension_field():
    E = GF(3, 2)
    for r in range(3):
        for lam in E.nonzero():
            assert symmetry_check(3, r, lam)


def test_symmetry_needs_nonzero():
    with pytest.raises(ValueError):
        symmetry_check(3, 0, GF(3).zero)


@pytest.mark.parametrize("p,r,lam", [(3, 0, 1), (3, 2, 0), (5, 2, 2), (5, 0, 3), (5, 4, 1)])
def test_consistency_numeric(p, r, lam):
    report = consistency_numeric(p, r, GF(p)(lam), trials=20, seed=1)
    assert report.ok and report.checks


def test_consistency_numeric_extension_lambda():
    E = GF(3, 2)
    assert consistency_numeric(3, 0, E([1, 1]), trials=10, seed=2).ok
    assert consistency_numeric(5, 2, GF(5, 2)([0, 1]), trials=10, seed=2).ok


def test_correspondence_json():
    doc = correspondence(5, 1, GF(5)(2))
    assert doc["galois"]["type"] == "split"
    assert len(doc["gl2_spherical"]) == 2 and len(doc["gl2_iwahori"]) == 2
    doc0 = correspondence(3, 0, GF(3).zero)
    assert doc0["galois"] == {"type": "irreducible", "c": 1, "det_exponent": 1, "twist": {"t": [1], "a": 0}}
    assert doc0["gl2_iwahori"][0]["relations"] == [[[1], [0], [0], [0]], [[0], [1], [1], [0]]]
