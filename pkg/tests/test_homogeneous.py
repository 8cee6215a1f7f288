import random
from fractions import Fraction

import pytest

from exotica.errors import BadMultiplicity, ChainMismatch, NotInSupport, ZeroNotInSupport
from exotica.exppoly import Divisor, ExpPoly, ExpPoly2, in_vd
from exotica.groups import GdElement, GdpElement, SurfacePoint, include_gd_in_gdp, include_subdivisor
from exotica.homogeneous import (CATALOG, HeisenbergElement, InducingMorphism, Plane,
                                 TranslationElement, compose_inducing, compose_pairs,
                                 identity_morphism, include_morphism, make_kodaira_gd,
                                 make_kodaira_gdp, make_torus_exp, make_torus_zeta,
                                 make_torus_zeta_prime, make_vitter_affine, random_gaussrat,
                                 verify_inducing)
from exotica.scalar import E, I, ONE, GaussRat

D0 = Divisor({0: 1})
D2 = Divisor({0: 2})
D21 = Divisor({0: 2, 1: 1})


def all_pass(m, samples=5, seed=0):
    report = verify_inducing(m, samples=samples, rng=random.Random(seed))
    assert report.passed, str(report)
    return report


def test_torus_zeta_examples():
    m = make_torus_zeta(D0, 1)
    assert m.h(TranslationElement(2, 3)) == GdElement(D0, 2, 5)
    assert m.delta == (ExpPoly2.s(), ExpPoly2.parse("t + s"))
    trivial = make_torus_zeta(D2, 0)
    assert trivial.h(TranslationElement(2, 3)) == GdElement(D2, 2, 3)
    assert trivial.delta == (ExpPoly2.s(), ExpPoly2.t())
    with pytest.raises(ZeroNotInSupport):
        make_torus_zeta(Divisor({1: 1}), 1)
    all_pass(m)


def test_torus_exp_examples():
    m = make_torus_exp(D21)
    assert m.h(TranslationElement(0, 0)).is_identity()
    assert m.h(TranslationElement(1, 2)) * m.h(TranslationElement(3, 4)) == m.h(TranslationElement(4, 6))
    assert m.h(TranslationElement(1, 2)).mu == E(2)
    assert m.base_point() == SurfacePoint(0, 1)
    all_pass(m)


def test_torus_zeta_prime_examples():
    m = make_torus_zeta_prime(D2, 0, 5)
    assert m.delta[1] == ExpPoly2.parse("t + 5*s^2")
    m1 = make_torus_zeta_prime(Divisor({1: 1}), 1, 0)
    g = m1.h(TranslationElement(2, 3))
    assert g == GdpElement(Divisor({1: 1}), 2, E(2), ExpPoly.parse("3*exp(z)"))
    with pytest.raises(NotInSupport):
        make_torus_zeta_prime(D2, 1, 1)
    all_pass(m)
    all_pass(m1)
    all_pass(make_torus_zeta_prime(Divisor({0: 1, I: 3}), I, Fraction(1, 2)))


def test_vitter_examples():
    m = make_vitter_affine(0)
    g = HeisenbergElement(2, 3, 5)
    assert m.h(g) == GdElement(D2, 5, ExpPoly.parse("2*(z - 5) + 3"))
    all_pass(m)
    k1 = make_vitter_affine(1)
    report = all_pass(k1)
    assert report["differential"].passed


def test_vitter_homomorphism_against_matrix_product():
    rng = random.Random(1)
    m = make_vitter_affine(GaussRat(3, 1))
    for _ in range(20):
        a = HeisenbergElement(*(random_gaussrat(rng) for _ in range(3)))
        b = HeisenbergElement(*(random_gaussrat(rng) for _ in range(3)))
        A, B = a.matrix(), b.matrix()
        prod = [[sum((A[i][k] * B[k][j] for k in range(3)), GaussRat(0)) for j in range(3)]
                for i in range(3)]
        assert (a * b).matrix() == prod
        assert m.h(a * b) == m.h(a) * m.h(b)


def test_kodaira_gd_examples():
    with pytest.raises(BadMultiplicity):
        make_kodaira_gd(1, 1)
    rng = random.Random(2)
    inc = make_kodaira_gd(3, 0)
    g = GdElement(D2, 2, "1 + z")
    assert inc.h(g) == include_subdivisor(g, Divisor({0: 3}))
    k = GaussRat(4)
    m2 = make_kodaira_gd(2, k)
    assert m2.h(g) == GdElement(D2, 2, ExpPoly.parse("1 + z") + ExpPoly.parse("8*z - 8"))
    m4 = make_kodaira_gd(4, 3)
    P = Plane("gd", D2)
    for _ in range(20):
        assert in_vd(m4.h(P.random_element(rng)).f, Divisor({0: 4}))
    all_pass(m4)


def test_kodaira_gdp_examples():
    with pytest.raises(BadMultiplicity):
        make_kodaira_gdp(1, 0, 1)
    m = make_kodaira_gdp(2, 1, 0)
    g = GdElement(D2, 3, ExpPoly.parse("2*(z - 3) + 5"))  # image of the Heisenberg element (2, 5, 3)
    assert m.h(g) == GdpElement(Divisor({1: 2}), 3, E(3), ExpPoly.parse("(2*z - 6 + 5)*exp(z)"))
    stab = m.h(GdElement(D2, 0, ExpPoly.parse("7*z")))
    assert stab == GdpElement(Divisor({1: 2}), 0, ONE, ExpPoly.parse("7*z*exp(z)"))
    assert stab.f.evaluate(0).is_zero()
    all_pass(m)


def test_kodaira_gdp_at_zero_is_kodaira_gd():
    rng = random.Random(3)
    P = Plane("gd", D2)
    for n in (2, 3, 5):
        k = random_gaussrat(rng)
        gdp = make_kodaira_gdp(n, 0, k)
        gd = make_kodaira_gd(n, k * n)
        assert gdp.delta == gd.delta
        for _ in range(5):
            g = P.random_element(rng)
            assert gdp.h(g) == include_gd_in_gdp(gd.h(g))


@pytest.mark.parametrize("n", range(2, 9))
def test_leading_term_cancels(n):
    s, t = ExpPoly2.s(), ExpPoly2.t()
    added = s ** n - (s - t) ** n
    assert all(i < n for _, _, i, _, _ in added.monomials())
    # the coefficient of z^(n-1) is n*t, so the degree is exactly n - 1
    top = [(i, j, c) for _, _, i, j, c in added.monomials() if i == n - 1]
    assert top == [(n - 1, 1, GaussRat(n))]


def test_corrupted_morphism_fails_equivariance():
    good = make_torus_zeta(D2, 3)
    bad = InducingMorphism(good.source, good.target, "corrupt", good.params, good.h,
                           make_torus_zeta(D2, 2).delta)
    report = verify_inducing(bad, rng=random.Random(0))
    assert not report["equivariance"].passed
    assert "delta(g.x)" in report["equivariance"].witness
    assert report["homomorphism"].passed


def test_identity_and_composition():
    P = Plane("gd", D21)
    all_pass(identity_morphism(P))
    m = make_vitter_affine(1)
    same = compose_inducing(identity_morphism(m.source), m)
    assert same.delta == m.delta
    chain = compose_inducing(make_vitter_affine(0), make_kodaira_gd(3, 2))
    all_pass(chain)
    with pytest.raises(ChainMismatch):
        compose_inducing(make_torus_zeta(D0, 1), make_kodaira_gd(3, 1))


def test_composition_is_associative():
    rng = random.Random(4)
    a, b = make_vitter_affine(1), make_kodaira_gd(3, 2)
    c = include_morphism(Divisor({0: 3}), Divisor({0: 3, I: 1}))
    left = compose_inducing(compose_inducing(a, b), c)
    right = compose_inducing(a, compose_inducing(b, c))
    assert left.delta == right.delta
    for _ in range(5):
        g = a.source.random_element(rng)
        assert left.h(g) == right.h(g)


def test_zeta_deformations_add():
    n = 3
    D = Divisor({0: n})
    for k, k2 in ((1, 2), (Fraction(1, 2), -5), (GaussRat(1, 2), 3)):
        composed = compose_pairs(make_torus_zeta(D, k).delta, make_torus_zeta(D, k2).delta)
        assert composed == make_torus_zeta(D, GaussRat.coerce(k) + k2).delta


def test_catalog_passes_random_draws():
    rng = random.Random(5)
    for _ in range(5):
        k = random_gaussrat(rng)
        for m in (make_torus_zeta(Divisor({0: 2, 1: 1}), k), make_torus_exp(D2),
                  make_torus_zeta_prime(Divisor({0: 1, I: 2}), I, k), make_vitter_affine(k),
                  make_kodaira_gd(rng.randint(2, 5), k), make_kodaira_gdp(rng.randint(2, 4), I, k)):
            all_pass(m, samples=3, seed=rng.random())
    assert set(CATALOG) == {"torus_zeta", "torus_exp", "torus_zeta_prime", "vitter",
                            "kodaira_gd", "kodaira_gdp"}


def test_report_header_documents_coordinates():
    report = verify_inducing(make_vitter_affine(0))
    assert any("Heisenberg" in n for n in report.notes)
    assert report.text_lines()[0].startswith("# inducing morphism vitter(0)")
