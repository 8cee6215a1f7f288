import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exotica.errors import DivisorMismatch, NotAUnit, NotInSubalgebra, NotInVD
from exotica.exppoly import Divisor, ExpPoly, ExpPoly2
from exotica.groups import (ORIGIN, GdElement, GdpElement, LieVec, SurfacePoint, act_symbolic,
                            bracket, gd_adjoint, gdp_adjoint, include_gd_in_gdp,
                            include_subdivisor, jacobian, moves_some_probe, rescale_iso,
                            rescale_point)
from exotica.homogeneous import Plane, random_gaussrat, random_vd
from exotica.scalar import E, I, ONE, ZERO, GaussRat
from helpers import random_divisor

D = Divisor({0: 2, 1: 1})


def random_lievec(D, rng, gdp=True):
    return LieVec(D, random_gaussrat(rng), random_gaussrat(rng) if gdp else 0, random_vd(D, rng))


@pytest.mark.parametrize("kind", ["gd", "gdp"])
def test_group_axioms(kind):
    rng = random.Random(kind)
    for _ in range(20):
        P = Plane(kind, random_divisor(rng))
        e = P.identity()
        for _ in range(5):
            a, b, c = (P.random_element(rng) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * e == a == e * a
            assert a * a.inverse() == e == a.inverse() * a


@pytest.mark.parametrize("kind", ["gd", "gdp"])
def test_action_is_a_left_action(kind):
    rng = random.Random(1)
    P = Plane(kind, D)
    for _ in range(30):
        g, h = P.random_element(rng), P.random_element(rng)
        p = SurfacePoint(random_gaussrat(rng), random_gaussrat(rng))
        assert (g * h)(p) == g(h(p))
        assert P.identity()(p) == p


def test_faithful_on_probes():
    rng = random.Random(2)
    for kind in ("gd", "gdp"):
        P = Plane(kind, D)
        for _ in range(30):
            g = P.random_element(rng)
            assert (moves_some_probe(g) is None) == g.is_identity()


def test_element_validation():
    with pytest.raises(NotInVD):
        GdElement(D, 0, "z^2")
    with pytest.raises(NotAUnit):
        GdpElement(D, 0, 1 + E(1), 0)
    with pytest.raises(NotAUnit):
        GdpElement(D, 0, 0, 0)
    with pytest.raises(DivisorMismatch):
        GdElement(D, 0, 0) * GdElement(Divisor({0: 1}), 0, 0)


def test_group_law_examples():
    g = GdElement(D, 1, "z")
    h = GdElement(D, 2, "exp(z)")
    assert g * h == GdElement(D, 3, ExpPoly.parse("z + E(-1)*exp(z)"))
    p = GdpElement(D, 1, 2, "1")
    q = GdpElement(D, 0, E(1), "z")
    assert p * q == GdpElement(D, 1, E(1) * 2, ExpPoly.parse("1 + 2*z - 2"))
    assert str(g) == "(1; z)"
    assert str(q) == "(0; E(1); z)"


def test_gd_embeds_in_gdp():
    rng = random.Random(3)
    P = Plane("gd", D)
    for _ in range(20):
        a, b = P.random_element(rng), P.random_element(rng)
        assert include_gd_in_gdp(a * b) == include_gd_in_gdp(a) * include_gd_in_gdp(b)
        p = SurfacePoint(random_gaussrat(rng), random_gaussrat(rng))
        assert include_gd_in_gdp(a)(p) == a(p)


def test_subdivisor_inclusion_is_a_homomorphism():
    rng = random.Random(4)
    Dplus = D + Divisor({I: 2})
    for kind in ("gd", "gdp"):
        P = Plane(kind, D)
        for _ in range(10):
            a, b = P.random_element(rng), P.random_element(rng)
            assert include_subdivisor(a * b, Dplus) == include_subdivisor(a, Dplus) * include_subdivisor(b, Dplus)


def test_rescaling_is_an_equivariant_isomorphism():
    rng = random.Random(5)
    P = Plane("gd", D)
    for _ in range(20):
        mu = random_gaussrat(rng) or GaussRat(2)
        a, b = P.random_element(rng), P.random_element(rng)
        assert rescale_iso(a * b, mu) == rescale_iso(a, mu) * rescale_iso(b, mu)
        assert rescale_iso(a, mu).divisor == D.rescale(mu)
        p = SurfacePoint(random_gaussrat(rng), random_gaussrat(rng))
        assert rescale_point(a(p), mu) == rescale_iso(a, mu)(rescale_point(p, mu))


def test_jacobian_preserves_invariant_tensors():
    rng = random.Random(6)
    for kind in ("gd", "gdp"):
        P = Plane(kind, D)
        for _ in range(30):
            g = P.random_element(rng)
            J = jacobian(g, SurfacePoint(random_gaussrat(rng), 0))
            assert J[0] == [ONE, ZERO]
            det = J[0][0] * J[1][1] - J[0][1] * J[1][0]
            assert det == (g.mu if kind == "gdp" else ONE)


def test_act_symbolic_examples():
    pair = (ExpPoly2.s(), ExpPoly2.t())
    g = GdElement(Divisor({0: 1}), 1, 5)
    assert act_symbolic(g, pair) == (ExpPoly2.parse("s + 1"), ExpPoly2.parse("t + 5"))
    h = GdpElement(Divisor({0: 2}), 0, 1, "z")
    assert act_symbolic(h, (ExpPoly2.s(), ExpPoly2.parse("exp(t)")))[1] == ExpPoly2.parse("exp(t) + s")


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_act_symbolic_agrees_with_point_action(seed):
    rng = random.Random(seed)
    P = Plane("gdp", D)
    g = P.random_element(rng)
    W = ExpPoly2.parse("t^2 + s*exp(t) + exp(s)")
    s0, t0 = random_gaussrat(rng), random_gaussrat(rng)
    Z2, W2 = act_symbolic(g, (ExpPoly2.s(), W))
    image = g(SurfacePoint(s0, W.evaluate(s0, t0)))
    assert SurfacePoint(Z2.evaluate(s0, t0).as_gaussrat(), W2.evaluate(s0, t0)) == image


# Lie algebra ------------------------------------------------------------------

def test_bracket_is_alternating_and_jacobi():
    rng = random.Random(7)
    for _ in range(50):
        X, Y, Z = (random_lievec(D, rng) for _ in range(3))
        assert bracket(X, X).is_zero()
        assert bracket(X, Y) == -bracket(Y, X)
        jac = bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y))
        assert jac.is_zero()


def test_bracket_conventions():
    dz = LieVec(D, 1, 0, 0)
    wdw = LieVec(D, 0, 1, 0)
    f = LieVec(D, 0, 0, "z + exp(z)")
    assert bracket(dz, f) == LieVec(D, 0, 0, "1 + exp(z)")
    assert bracket(wdw, f) == LieVec(D, 0, 0, "-z - exp(z)")
    assert bracket(dz, wdw).is_zero()


def test_adjoint_preserves_bracket_and_composes():
    rng = random.Random(8)
    for kind in ("gd", "gdp"):
        P = Plane(kind, D)
        adj = gd_adjoint if kind == "gd" else gdp_adjoint
        for _ in range(40):
            g, h = P.random_element(rng), P.random_element(rng)
            X, Y = (random_lievec(D, rng, gdp=kind == "gdp") for _ in range(2))
            assert adj(g, bracket(X, Y)) == bracket(adj(g, X), adj(g, Y))
            assert adj(g * h, X) == adj(g, adj(h, X))


def test_adjoint_matches_differentiated_conjugation():
    # Ad(g)(f d/dw) comes from conjugating the one-parameter group (0, eps*f)
    rng = random.Random(9)
    P = Plane("gdp", D)
    for _ in range(20):
        g = P.random_element(rng)
        f = random_vd(D, rng)
        conj = g * GdpElement(D, 0, 1, f) * g.inverse()
        assert conj.t == 0 and conj.mu == ONE
        assert gdp_adjoint(g, LieVec(D, 0, 0, f)).f == conj.f


def test_gd_adjoint_rejects_w_direction():
    g = GdElement(D, 1, "z")
    with pytest.raises(NotInSubalgebra):
        gd_adjoint(g, LieVec(D, 0, 1, 0))


def test_origin():
    assert ORIGIN == SurfacePoint(0, 0)
