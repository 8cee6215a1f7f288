"""Morphisms of homogeneous planes and the catalog of inducing morphisms.

Every plane is written in coordinates ``(s, t)`` whose first entry is the
direction preserved by ``dz``.  For the Heisenberg plane, whose group acts by
``(z1, z2) -> (z1 + g1*z2 + g2, z2 + g3)``, this means ``(s, t) = (z2, z1)``;
with this order the action reads ``(s, t) -> (s + g3, t + g1*s + g2)`` and
equivariance of every catalog entry holds on the nose.

A developing map ``delta`` is stored as a pair of ``ExpPoly2`` so that
``delta(g.x) == h(g).delta(x)`` is checked as an identity of functions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import BadMultiplicity, ChainMismatch, NotInSupport, ZeroNotInSupport
from .exppoly import Divisor, ExpPoly, ExpPoly2, ep2_substitute, ep2_substitute_deck, shift_arg, vd_basis
from .groups import (GdElement, GdpElement, SurfacePoint, act_symbolic, first_component_offset,
                     include_subdivisor)
from .linalg import rank
from .report import VerificationReport
from .scalar import ExpScalar, GaussRat

__all__ = [
    "TranslationElement", "HeisenbergElement", "Plane", "InducingMorphism",
    "make_torus_zeta", "make_torus_exp", "make_torus_zeta_prime", "make_vitter_affine",
    "make_kodaira_gd", "make_kodaira_gdp", "identity_morphism", "verify_inducing",
    "compose_inducing", "random_gaussrat", "random_vd", "COORDINATE_NOTE",
]

COORDINATE_NOTE = ("coordinates: every plane as (s,t) with s the dz-direction; "
                   "Heisenberg plane (s,t) = (z2,z1)")


@dataclass(frozen=True)
class TranslationElement:
    lam: GaussRat
    mu: GaussRat

    def __post_init__(self):
        object.__setattr__(self, "lam", GaussRat.coerce(self.lam))
        object.__setattr__(self, "mu", GaussRat.coerce(self.mu))

    def __mul__(self, other):
        return TranslationElement(self.lam + other.lam, self.mu + other.mu)

    def inverse(self):
        return TranslationElement(-self.lam, -self.mu)

    def __str__(self):
        return f"({self.lam}, {self.mu})"


@dataclass(frozen=True)
class HeisenbergElement:
    """The unipotent matrix ``[[1, g1, g2], [0, 1, g3], [0, 0, 1]]``."""

    g1: GaussRat
    g2: GaussRat
    g3: GaussRat

    def __post_init__(self):
        for name in ("g1", "g2", "g3"):
            object.__setattr__(self, name, GaussRat.coerce(getattr(self, name)))

    def __mul__(self, other):
        return HeisenbergElement(self.g1 + other.g1, self.g2 + other.g2 + self.g1 * other.g3,
                                 self.g3 + other.g3)

    def inverse(self):
        return HeisenbergElement(-self.g1, self.g1 * self.g3 - self.g2, -self.g3)

    def __pow__(self, n):
        base = self if n >= 0 else self.inverse()
        out = HeisenbergElement(0, 0, 0)
        for _ in range(abs(n)):
            out = out * base
        return out

    def matrix(self):
        one, zero = GaussRat(1), GaussRat(0)
        return [[one, self.g1, self.g2], [zero, one, self.g3], [zero, zero, one]]

    def __str__(self):
        return f"[{self.g1}, {self.g2}, {self.g3}]"


@dataclass(frozen=True)
class Plane:
    """A homogeneous plane: ``translation``, ``heisenberg``, ``gd`` or ``gdp``."""

    kind: str
    divisor: Divisor | None = None

    def __post_init__(self):
        if self.kind not in ("translation", "heisenberg", "gd", "gdp"):
            raise ValueError(f"unknown plane kind {self.kind!r}")
        if (self.kind in ("gd", "gdp")) != (self.divisor is not None):
            raise ValueError("gd/gdp planes need a divisor, the others must not have one")

    def __str__(self):
        if self.divisor is None:
            return f"{self.kind}-plane"
        return f"{self.kind}-plane({self.divisor})"

    # group structure ------------------------------------------------------
    def identity(self):
        if self.kind == "translation":
            return TranslationElement(0, 0)
        if self.kind == "heisenberg":
            return HeisenbergElement(0, 0, 0)
        if self.kind == "gd":
            return GdElement.identity(self.divisor)
        return GdpElement.identity(self.divisor)

    def random_element(self, rng):
        r = lambda: random_gaussrat(rng)
        if self.kind == "translation":
            return TranslationElement(r(), r())
        if self.kind == "heisenberg":
            return HeisenbergElement(r(), r(), r())
        f = random_vd(self.divisor, rng)
        if self.kind == "gd":
            return GdElement(self.divisor, r(), f)
        return GdpElement(self.divisor, r(), random_unit(rng), f)

    def random_stabilizer(self, rng):
        """Random element fixing the origin."""
        if self.kind == "translation":
            return TranslationElement(0, 0)
        if self.kind == "heisenberg":
            return HeisenbergElement(random_gaussrat(rng), 0, 0)
        f = random_vd(self.divisor, rng)
        lam0 = self.divisor.support[0]
        f = f - ExpPoly.monomial(0, lam0, f.evaluate(0))
        if self.kind == "gd":
            return GdElement(self.divisor, 0, f)
        return GdpElement(self.divisor, 0, random_unit(rng), f)

    # actions --------------------------------------------------------------
    def act_point(self, g, p):
        if self.kind == "translation":
            return SurfacePoint(p.z + g.lam, p.w + g.mu)
        if self.kind == "heisenberg":
            return SurfacePoint(p.z + g.g3, p.w + g.g1 * p.z + g.g2)
        return g(p)

    def act_symbolic(self, g, pair):
        """``g . (Z, W)`` for a pair of functions of ``(s, t)``."""
        Z, W = pair
        if self.kind == "translation":
            return Z + ExpPoly2.const(g.lam), W + ExpPoly2.const(g.mu)
        if self.kind == "heisenberg":
            return Z + ExpPoly2.const(g.g3), W + Z.scale(g.g1) + ExpPoly2.const(g.g2)
        return act_symbolic(g, pair)

    def precompose(self, g, F):
        """``F(g . (s, t))`` for a single function ``F``."""
        if self.kind == "translation":
            return ep2_substitute(F, g.lam, ExpPoly2.t() + ExpPoly2.const(g.mu))
        if self.kind == "heisenberg":
            return ep2_substitute_deck(F, g.g1, g.g2, g.g3)
        T = ExpPoly2.from_s(shift_arg(g.f, -g.t))
        if self.kind == "gd":
            T = ExpPoly2.t() + T
        else:
            T = ExpPoly2.t().scale(g.mu) + T
        return ep2_substitute(F, g.t, T)


def random_gaussrat(rng, bound=3, max_den=3):
    re = Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))
    im = Fraction(rng.randint(-bound, bound), rng.randint(1, max_den)) if rng.random() < 0.5 else 0
    return GaussRat(re, im)


def random_unit(rng):
    q = random_gaussrat(rng)
    while not q:
        q = random_gaussrat(rng)
    if rng.random() < 0.5:
        return ExpScalar.exp(random_gaussrat(rng), q)
    return ExpScalar.const(q)


def random_vd(D, rng, zero_prob=0.3):
    """Random element of V_D with Gaussian rational coordinates."""
    f = ExpPoly()
    for b in vd_basis(D):
        if rng.random() >= zero_prob:
            f = f + b.scale(random_gaussrat(rng))
    return f


@dataclass(frozen=True)
class InducingMorphism:
    source: Plane
    target: Plane
    kind: str
    params: tuple
    h: Callable = field(compare=False)
    delta: tuple = field(compare=False)

    def __str__(self):
        args = ", ".join(str(v) for _, v in self.params)
        return f"{self.kind}({args})"

    def param(self, name):
        return dict(self.params)[name]

    def base_point(self):
        Z, W = self.delta
        return SurfacePoint(Z.evaluate(0, 0).as_gaussrat(), W.evaluate(0, 0))


def _zeta_poly(n, lam, k):
    """``k*(z**n - (z - lam)**n)``; degree at most ``n - 1``."""
    zn = ExpPoly.monomial(n)
    return (zn - shift_arg(zn, lam)).scale(k)


def _delta_w(exponent, k, n):
    """``exp(exponent*s) * (t + k*s**n)``."""
    W = ExpPoly2.t() + ExpPoly2.monomial(n, 0, coef=k)
    return W.mul_exp(exponent, 0)


def make_torus_zeta(D, k):
    k = GaussRat.coerce(k)
    n0 = D.multiplicity(0)
    if n0 < 1:
        raise ZeroNotInSupport(f"0 is not in the support of {D}")

    def h(g):
        return GdElement(D, g.lam, ExpPoly.const(g.mu) + _zeta_poly(n0, g.lam, k))

    return InducingMorphism(Plane("translation"), Plane("gd", D), "torus_zeta",
                            (("D", D), ("k", k)), h, (ExpPoly2.s(), _delta_w(0, k, n0)))


def make_torus_exp(D):
    def h(g):
        return GdpElement(D, g.lam, ExpScalar.exp(g.mu), ExpPoly())

    delta = (ExpPoly2.s(), ExpPoly2.monomial(beta=1))
    return InducingMorphism(Plane("translation"), Plane("gdp", D), "torus_exp",
                            (("D", D),), h, delta)


def make_torus_zeta_prime(D, a, k):
    a, k = GaussRat.coerce(a), GaussRat.coerce(k)
    na = D.multiplicity(a)
    if na < 1:
        raise NotInSupport(f"{a} is not in the support of {D}")

    def h(g):
        f = (ExpPoly.const(g.mu) + _zeta_poly(na, g.lam, k)).mul_exp(a)
        return GdpElement(D, g.lam, ExpScalar.exp(a * g.lam), f)

    return InducingMorphism(Plane("translation"), Plane("gdp", D), "torus_zeta_prime",
                            (("D", D), ("a", a), ("k", k)), h,
                            (ExpPoly2.s(), _delta_w(a, k, na)))


D2 = Divisor({0: 2})


def make_vitter_affine(k):
    """Heisenberg plane to G_{2[0]}; ``k = 0`` is the plain isomorphism."""
    k = GaussRat.coerce(k)
    half = k / 2

    def h(g):
        f = ExpPoly.monomial(1, 0, g.g1 + k * g.g3) \
            + ExpPoly.const(-(g.g1 + k * g.g3) * g.g3 + g.g2 + half * g.g3 * g.g3)
        return GdElement(D2, g.g3, f)

    return InducingMorphism(Plane("heisenberg"), Plane("gd", D2), "vitter",
                            (("k", k),), h, (ExpPoly2.s(), _delta_w(0, half, 2)))


def make_kodaira_gd(n, k):
    """G_{2[0]} to G_{n[0]} adding ``(k/n)*(z**n - (z - t)**n)``."""
    if not isinstance(n, int) or n < 2:
        raise BadMultiplicity(f"n = {n} must be an integer >= 2")
    k = GaussRat.coerce(k)
    Dn = Divisor({0: n})
    c = k / n

    def h(g):
        return GdElement(Dn, g.t, g.f + _zeta_poly(n, g.t, c))

    return InducingMorphism(Plane("gd", D2), Plane("gd", Dn), "kodaira_gd",
                            (("n", n), ("k", k)), h, (ExpPoly2.s(), _delta_w(0, c, n)))


def make_kodaira_gdp(n, lam, k):
    """G_{2[0]} to G'_{n[lam]}: ``(t, f) -> (t, E(lam*t), exp(lam z)(f + k(z^n - (z-t)^n)))``."""
    if not isinstance(n, int) or n < 2:
        raise BadMultiplicity(f"n = {n} must be an integer >= 2")
    lam, k = GaussRat.coerce(lam), GaussRat.coerce(k)
    Dn = Divisor({lam: n})

    def h(g):
        f = (g.f + _zeta_poly(n, g.t, k)).mul_exp(lam)
        return GdpElement(Dn, g.t, ExpScalar.exp(lam * g.t), f)

    return InducingMorphism(Plane("gd", D2), Plane("gdp", Dn), "kodaira_gdp",
                            (("n", n), ("lambda", lam), ("k", k)), h,
                            (ExpPoly2.s(), _delta_w(lam, k, n)))


def identity_morphism(plane):
    return InducingMorphism(plane, plane, "identity", (("plane", plane),), lambda g: g,
                            (ExpPoly2.s(), ExpPoly2.t()))


def _differential(delta):
    Z, W = delta
    M = [[Z.diff_s().evaluate(0, 0), Z.diff_t().evaluate(0, 0)],
         [W.diff_s().evaluate(0, 0), W.diff_t().evaluate(0, 0)]]
    return M


def verify_inducing(m, samples=5, rng=None):
    """Exact checks: homomorphism, stabilizer, equivariance, differential."""
    rng = rng if rng is not None else random.Random(0)
    report = VerificationReport(f"inducing morphism {m}: {m.source} -> {m.target}",
                                notes=[COORDINATE_NOTE])
    src, tgt = m.source, m.target

    witness = ""
    for _ in range(samples):
        g0, g1 = src.random_element(rng), src.random_element(rng)
        lhs, rhs = m.h(g0 * g1), m.h(g0) * m.h(g1)
        if lhs != rhs:
            witness = f"g0={g0} g1={g1}: h(g0 g1)={lhs} but h(g0)h(g1)={rhs}"
            break
    report.add("homomorphism", not witness, witness)

    witness = ""
    try:
        x0 = m.base_point()
    except ValueError as exc:
        report.add("stabilizer", False, str(exc))
    else:
        for _ in range(samples):
            g = src.random_stabilizer(rng)
            y = tgt.act_point(m.h(g), x0)
            if y != x0:
                witness = f"stabilizer element {g} moves base point {x0} to {y}"
                break
        report.add("stabilizer", not witness, witness)

    witness = ""
    for _ in range(samples):
        g = src.random_element(rng)
        lhs = tuple(src.precompose(g, F) for F in m.delta)
        rhs = tgt.act_symbolic(m.h(g), m.delta)
        if lhs != rhs:
            diff = [str(a - b) for a, b in zip(lhs, rhs)]
            witness = f"g={g}: delta(g.x) - h(g).delta(x) = ({diff[0]}, {diff[1]})"
            break
    report.add("equivariance", not witness, witness)

    M = _differential(m.delta)
    try:
        r = rank([[x.as_gaussrat() for x in row] for row in M])
        ok = r == 2
        witness = f"rank {r} differential {[[str(x) for x in row] for row in M]}"
    except ValueError:
        det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
        ok = not det.is_zero()
        witness = f"determinant {det}"
    report.add("differential", ok, witness)
    return report


def compose_pairs(outer, inner):
    """``outer o inner`` where ``inner``'s first component is ``s + c``."""
    Zi, Wi = inner
    c = first_component_offset(Zi)
    return tuple(ep2_substitute(F, c, Wi) for F in outer)


def compose_inducing(m0, m1):
    """First ``m0``, then ``m1``."""
    if m0.target != m1.source:
        raise ChainMismatch(f"{m0} lands in {m0.target} but {m1} starts from {m1.source}")
    h0, h1 = m0.h, m1.h
    return InducingMorphism(m0.source, m1.target, "compose", (("first", m0), ("then", m1)),
                            lambda g: h1(h0(g)), compose_pairs(m1.delta, m0.delta))


def include_morphism(D, Dplus, kind="gd"):
    """Subdivisor inclusion G_D -> G_{D+} as an inducing morphism."""
    return InducingMorphism(Plane(kind, D), Plane(kind, Dplus), "include", (("into", Dplus),),
                            lambda g: include_subdivisor(g, Dplus), (ExpPoly2.s(), ExpPoly2.t()))


CATALOG = {
    "torus_zeta": make_torus_zeta,
    "torus_exp": make_torus_exp,
    "torus_zeta_prime": make_torus_zeta_prime,
    "vitter": make_vitter_affine,
    "kodaira_gd": make_kodaira_gd,
    "kodaira_gdp": make_kodaira_gdp,
}
