"""The groups G_D = C x| V_D and G'_D = C x C^* x| V_D, their actions on C^2,
Lie algebras and adjoint actions.

Conventions::

    (t0, f0)(t1, f1)          = (t0 + t1, f0(z) + f1(z - t0))
    (t0, m0, f0)(t1, m1, f1)  = (t0 + t1, m0*m1, f0(z) + m0*f1(z - t0))
    (t, f)(z, w)              = (z + t, w + f(z + t))
    (t, m, f)(z, w)           = (z + t, m*w + f(z + t))

Lie algebra elements are vector fields ``c_z d/dz + c_w w d/dw + f(z) d/dw``
with the vector-field bracket::

    [d/dz, f d/dw] = f' d/dw     [w d/dw, f d/dw] = -f d/dw
    [d/dz, w d/dw] = 0           [f d/dw, g d/dw] = 0

which is the bracket preserved by the pushforward ``Ad(g) = g_*``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DivisorMismatch, NotAUnit, NotInSubalgebra, NotInVD, UnsupportedFirstComponent
from .exppoly import Divisor, ExpPoly, ExpPoly2, diff, in_vd, include_check, scale_arg, shift_arg
from .scalar import ONE, ZERO, ExpScalar, GaussRat

__all__ = [
    "GdElement", "GdpElement", "SurfacePoint", "LieVec",
    "gd_mul", "gd_inv", "gd_act", "gdp_mul", "gdp_inv", "gdp_act",
    "bracket", "gd_adjoint", "gdp_adjoint", "include_subdivisor", "include_gd_in_gdp",
    "rescale_iso", "rescale_point", "jacobian", "act_symbolic", "moves_some_probe",
    "PROBE_POINTS",
]


def _as_exppoly(f):
    if isinstance(f, ExpPoly):
        return f
    if isinstance(f, str):
        return ExpPoly.parse(f)
    return ExpPoly.const(f)


def _same_divisor(a, b):
    if a != b:
        raise DivisorMismatch(f"elements live over different divisors {a} and {b}")


@dataclass(frozen=True)
class GdElement:
    divisor: Divisor
    t: GaussRat
    f: ExpPoly

    def __post_init__(self):
        object.__setattr__(self, "t", GaussRat.coerce(self.t))
        object.__setattr__(self, "f", _as_exppoly(self.f))
        if not in_vd(self.f, self.divisor):
            raise NotInVD(f"{self.f} is not in V_D for D = {self.divisor}")

    @classmethod
    def identity(cls, D):
        return cls(D, GaussRat(0), ExpPoly())

    def __mul__(self, other):
        return gd_mul(self, other)

    def inverse(self):
        return gd_inv(self)

    def __pow__(self, n):
        base = self if n >= 0 else self.inverse()
        out = GdElement.identity(self.divisor)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __call__(self, p):
        return gd_act(self, p)

    def is_identity(self):
        return not self.t and self.f.is_zero()

    def __str__(self):
        return f"({self.t}; {self.f})"


@dataclass(frozen=True)
class GdpElement:
    divisor: Divisor
    t: GaussRat
    mu: ExpScalar
    f: ExpPoly

    def __post_init__(self):
        object.__setattr__(self, "t", GaussRat.coerce(self.t))
        object.__setattr__(self, "mu", ExpScalar.coerce(self.mu))
        object.__setattr__(self, "f", _as_exppoly(self.f))
        if not self.mu.is_unit():
            raise NotAUnit(f"mu = {self.mu} must be a single nonzero exponential term")
        if not in_vd(self.f, self.divisor):
            raise NotInVD(f"{self.f} is not in V_D for D = {self.divisor}")

    @classmethod
    def identity(cls, D):
        return cls(D, GaussRat(0), ONE, ExpPoly())

    def __mul__(self, other):
        return gdp_mul(self, other)

    def inverse(self):
        return gdp_inv(self)

    def __pow__(self, n):
        base = self if n >= 0 else self.inverse()
        out = GdpElement.identity(self.divisor)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __call__(self, p):
        return gdp_act(self, p)

    def is_identity(self):
        return not self.t and self.mu.is_one() and self.f.is_zero()

    def __str__(self):
        return f"({self.t}; {self.mu}; {self.f})"


@dataclass(frozen=True)
class SurfacePoint:
    z: GaussRat
    w: ExpScalar

    def __post_init__(self):
        object.__setattr__(self, "z", GaussRat.coerce(self.z))
        object.__setattr__(self, "w", ExpScalar.coerce(self.w))

    def __str__(self):
        return f"({self.z}, {self.w})"


ORIGIN = SurfacePoint(0, 0)


def gd_mul(g0, g1):
    _same_divisor(g0.divisor, g1.divisor)
    return GdElement(g0.divisor, g0.t + g1.t, g0.f + shift_arg(g1.f, g0.t))


def gd_inv(g):
    return GdElement(g.divisor, -g.t, -shift_arg(g.f, -g.t))


def gd_act(g, p):
    z = p.z + g.t
    return SurfacePoint(z, p.w + g.f.evaluate(z))


def gdp_mul(g0, g1):
    _same_divisor(g0.divisor, g1.divisor)
    return GdpElement(g0.divisor, g0.t + g1.t, g0.mu * g1.mu,
                      g0.f + shift_arg(g1.f, g0.t).scale(g0.mu))


def gdp_inv(g):
    inv_mu = g.mu.inverse()
    return GdpElement(g.divisor, -g.t, inv_mu, -shift_arg(g.f, -g.t).scale(inv_mu))


def gdp_act(g, p):
    z = p.z + g.t
    return SurfacePoint(z, g.mu * p.w + g.f.evaluate(z))


def include_subdivisor(g, Dplus):
    include_check(g.divisor, Dplus)
    if isinstance(g, GdpElement):
        return GdpElement(Dplus, g.t, g.mu, g.f)
    return GdElement(Dplus, g.t, g.f)


def include_gd_in_gdp(g):
    return GdpElement(g.divisor, g.t, ONE, g.f)


def rescale_iso(g, mu):
    """``(t, f) -> (t/mu, f(mu z))`` from G_D to G_{D'} with D' = mu*D."""
    mu = GaussRat.coerce(mu)
    D2 = g.divisor.rescale(mu)
    return GdElement(D2, g.t / mu, scale_arg(g.f, mu))


def rescale_point(p, mu):
    """The equivariant point map ``(z, w) -> (z/mu, w)``."""
    return SurfacePoint(p.z / GaussRat.coerce(mu), p.w)


def jacobian(g, p=ORIGIN):
    """Derivative of ``x -> g.x`` at ``p`` as rows ``[[dz'/dz, dz'/dw], [dw'/dz, dw'/dw]]``."""
    mu = g.mu if isinstance(g, GdpElement) else ONE
    return [[ONE, ZERO], [diff(g.f).evaluate(p.z + g.t), mu]]


def det2(M):
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


PROBE_POINTS = tuple(SurfacePoint(z, w) for z in (0, 1, GaussRat(0, 1), -2, GaussRat(1, 1), 3)
                     for w in (0, 1))


def moves_some_probe(g, probes=PROBE_POINTS):
    """Faithfulness witness: a probe point that ``g`` does not fix, or None."""
    for p in probes:
        if g(p) != p:
            return p
    return None


# symbolic action on developing maps ----------------------------------------

def first_component_offset(Z):
    """``c`` such that ``Z = s + c``, else raise UnsupportedFirstComponent."""
    rest = Z - ExpPoly2.s()
    if rest.is_zero():
        return GaussRat(0)
    parts = rest._parts
    if len(parts) == 1 and set(parts) == {(GaussRat(0), GaussRat(0))}:
        poly = next(iter(parts.values()))
        if set(poly) == {(0, 0)} and poly[(0, 0)].is_gaussrat():
            return poly[(0, 0)].as_gaussrat()
    raise UnsupportedFirstComponent(f"first developing component {Z} is not s + constant")


def act_symbolic(g, pair):
    """Apply a G_D or G'_D element to a pair ``(Z(s,t), W(s,t))`` of functions."""
    Z, W = pair
    c = first_component_offset(Z)
    shift = c + g.t
    f_comp = ExpPoly2.from_s(shift_arg(g.f, -shift))
    W_scaled = W.scale(g.mu) if isinstance(g, GdpElement) else W
    return Z + ExpPoly2.const(g.t), W_scaled + f_comp


# Lie algebras ------------------------------------------------------------

@dataclass(frozen=True)
class LieVec:
    """``c_z d/dz + c_w w d/dw + f(z) d/dw``."""

    divisor: Divisor
    c_z: GaussRat
    c_w: GaussRat
    f: ExpPoly

    def __post_init__(self):
        object.__setattr__(self, "c_z", GaussRat.coerce(self.c_z))
        object.__setattr__(self, "c_w", GaussRat.coerce(self.c_w))
        object.__setattr__(self, "f", _as_exppoly(self.f))
        if not in_vd(self.f, self.divisor):
            raise NotInVD(f"{self.f} is not in V_D for D = {self.divisor}")

    def __add__(self, other):
        _same_divisor(self.divisor, other.divisor)
        return LieVec(self.divisor, self.c_z + other.c_z, self.c_w + other.c_w, self.f + other.f)

    def __neg__(self):
        return LieVec(self.divisor, -self.c_z, -self.c_w, -self.f)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = GaussRat.coerce(c)
        return LieVec(self.divisor, self.c_z * c, self.c_w * c, self.f.scale(c))

    def is_zero(self):
        return not self.c_z and not self.c_w and self.f.is_zero()

    def __str__(self):
        parts = []
        if self.c_z:
            parts.append(f"({self.c_z})*dz")
        if self.c_w:
            parts.append(f"({self.c_w})*w*dw")
        if self.f:
            parts.append(f"({self.f})*dw")
        return " + ".join(parts) or "0"


def bracket(X, Y):
    _same_divisor(X.divisor, Y.divisor)
    f = (diff(Y.f).scale(X.c_z) - diff(X.f).scale(Y.c_z)
         - Y.f.scale(X.c_w) + X.f.scale(Y.c_w))
    return LieVec(X.divisor, 0, 0, f)


def gdp_adjoint(g, X):
    _same_divisor(g.divisor, X.divisor)
    mu = g.mu if isinstance(g, GdpElement) else ONE
    f = (diff(g.f).scale(X.c_z) - g.f.scale(X.c_w)
         + shift_arg(X.f, g.t).scale(mu))
    return LieVec(X.divisor, X.c_z, X.c_w, f)


def gd_adjoint(g, X):
    if X.c_w:
        raise NotInSubalgebra("w d/dw is not in the Lie algebra of G_D")
    return gdp_adjoint(g, X)
