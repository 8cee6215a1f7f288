"""Developing systems on complex tori and primary Kodaira surfaces.

Deck transformations act on the universal cover with coordinates ``(s, t)``
by ``(s, t) -> (s + g3, t + g1*s + g2)``; a torus lattice vector
``(lam, mu)`` is the deck element ``g1 = 0, g2 = mu, g3 = lam``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import (BadMultiplicity, DivisorMismatch, InvalidKodairaGroup, InvalidLattice,
                     NotInCatalogGauge, UnsupportedFirstComponent)
from .exppoly import Divisor, ep2_substitute_deck, in_vd
from .groups import GdElement, GdpElement, act_symbolic, first_component_offset
from .homogeneous import (HeisenbergElement, Plane, TranslationElement, compose_inducing,
                          include_morphism, make_kodaira_gd, make_kodaira_gdp, make_torus_exp,
                          make_torus_zeta, make_torus_zeta_prime, make_vitter_affine)
from .linalg import rank
from .report import VerificationReport
from .scalar import GaussRat

__all__ = [
    "TorusLattice", "KodairaGroup", "DeckElement", "DevelopingSystem", "NormalForm",
    "deck_act", "holonomy_act_symbolic", "verify_developing_system", "build_torus_gd",
    "build_torus_gdp_exp", "build_torus_gdp", "build_kodaira_gd", "build_kodaira_gdp",
    "conjugate_system", "normal_form",
]

DeckElement = HeisenbergElement


def _components(x):
    return [x.re, x.im]


@dataclass(frozen=True)
class TorusLattice:
    generators: tuple

    def __post_init__(self):
        gens = tuple((GaussRat.coerce(l), GaussRat.coerce(m)) for l, m in self.generators)
        if len(gens) != 4:
            raise InvalidLattice(f"a lattice in C^2 needs 4 generators, got {len(gens)}")
        rows = [_components(l) + _components(m) for l, m in gens]
        if rank(rows) != 4:
            raise InvalidLattice("generators are not linearly independent over the rationals")
        object.__setattr__(self, "generators", gens)

    def deck_generators(self):
        return tuple((f"e{k + 1}", DeckElement(0, m, l)) for k, (l, m) in enumerate(self.generators))

    def __str__(self):
        return "torus " + " ".join(f"({l},{m})" for l, m in self.generators)


@dataclass(frozen=True)
class KodairaGroup:
    """Generators ``a, b, c, d`` with ``c, d`` central and ``[a, b] = c**r``."""

    a1: GaussRat
    a3: GaussRat
    b1: GaussRat
    b3: GaussRat
    c2: GaussRat
    d2: GaussRat
    r: int

    def __post_init__(self):
        for name in ("a1", "a3", "b1", "b3", "c2", "d2"):
            object.__setattr__(self, name, GaussRat.coerce(getattr(self, name)))
        if not isinstance(self.r, int) or self.r < 1:
            raise InvalidKodairaGroup(f"r = {self.r} must be a positive integer")
        if self.a1 * self.b3 - self.b1 * self.a3 != self.c2 * self.r:
            raise InvalidKodairaGroup("constants violate a1*b3 - b1*a3 = r*c2")
        if not self.c2:
            raise InvalidKodairaGroup("c2 must be nonzero")
        for x, y, names in ((self.a3, self.b3, "a3, b3"), (self.c2, self.d2, "c2, d2")):
            if rank([_components(x), _components(y)]) != 2:
                raise InvalidKodairaGroup(f"{names} must be linearly independent over the reals")

    def deck_generators(self):
        return (("a", DeckElement(self.a1, 0, self.a3)), ("b", DeckElement(self.b1, 0, self.b3)),
                ("c", DeckElement(0, self.c2, 0)), ("d", DeckElement(0, self.d2, 0)))

    def matrices(self):
        return {name: g.matrix() for name, g in self.deck_generators()}

    def __str__(self):
        return (f"kodaira a1={self.a1} a3={self.a3} b1={self.b1} b3={self.b3} "
                f"c2={self.c2} d2={self.d2} r={self.r}")


@dataclass(frozen=True)
class DevelopingSystem:
    surface: object
    model: Plane
    generators: tuple
    holonomy: tuple
    developing: tuple
    construction: tuple = ()

    def hol(self, name):
        for (n, _), g in zip(self.generators, self.holonomy):
            if n == name:
                return g
        raise KeyError(name)

    def __str__(self):
        Z, W = self.developing
        tag = self.construction[0] if self.construction else "system"
        return f"{tag} on {self.surface} with developing map ({Z}, {W})"


class NormalForm(NamedTuple):
    tag: str
    params: tuple

    def __str__(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.tag}({inner})"


def deck_act(g, pair):
    """Precompose both components with the deck transformation ``g``."""
    return tuple(ep2_substitute_deck(F, g.g1, g.g2, g.g3) for F in pair)


def holonomy_act_symbolic(g, pair):
    return act_symbolic(g, pair)


def _is_torus(surface):
    return isinstance(surface, TorusLattice)


def verify_developing_system(ds):
    report = VerificationReport(str(ds))
    hol = dict(zip((n for n, _ in ds.generators), ds.holonomy))
    images = list(ds.holonomy)

    witness = ""
    if _is_torus(ds.surface):
        names = list(hol)
        for i, x in enumerate(names):
            for y in names[i + 1:]:
                if hol[x] * hol[y] != hol[y] * hol[x]:
                    witness = f"h({x}) and h({y}) do not commute"
                    break
            if witness:
                break
    else:
        for central in ("c", "d"):
            for other, g in hol.items():
                if hol[central] * g != g * hol[central]:
                    witness = f"h({central}) does not commute with h({other})"
                    break
            if witness:
                break
        if not witness:
            a, b, c = hol["a"], hol["b"], hol["c"]
            comm = a * b * a.inverse() * b.inverse()
            target = c ** ds.surface.r
            if comm != target:
                witness = f"[h(a), h(b)] = {comm} but h(c)^r = {target}"
    report.add("relations", not witness, witness)

    D = ds.model.divisor
    bad = [f"h({n}) = {g}" for (n, _), g in zip(ds.generators, images)
           if g.divisor != D or not in_vd(g.f, D)
           or (isinstance(g, GdpElement) and not g.mu.is_unit())]
    report.add("membership", not bad, "; ".join(bad))

    witness = ""
    for (name, gamma), g in zip(ds.generators, images):
        lhs = deck_act(gamma, ds.developing)
        try:
            rhs = holonomy_act_symbolic(g, ds.developing)
        except UnsupportedFirstComponent as exc:
            witness = str(exc)
            break
        if lhs != rhs:
            diff = [str(x - y) for x, y in zip(lhs, rhs)]
            witness = f"generator {name}: difference ({diff[0]}, {diff[1]})"
            break
    report.add("equivariance", not witness, witness)

    Z, W = ds.developing
    det = Z.diff_s() * W.diff_t() - Z.diff_t() * W.diff_s()
    value = det.evaluate(0, 0)
    report.add("local-diffeo", not value.is_zero(), f"jacobian determinant at (0,0) is {value}")
    return report


def _system_from_torus(m, lattice, construction):
    gens = lattice.deck_generators()
    hol = tuple(m.h(TranslationElement(g.g3, g.g2)) for _, g in gens)
    return DevelopingSystem(lattice, m.target, gens, hol, m.delta, construction)


def _system_from_kodaira(m, group, construction):
    gens = group.deck_generators()
    hol = tuple(m.h(g) for _, g in gens)
    return DevelopingSystem(group, m.target, gens, hol, m.delta, construction)


def build_torus_gd(D, lattice, k):
    m = make_torus_zeta(D, k)
    return _system_from_torus(m, lattice, ("torus_gd", (("k", m.param("k")),)))


def build_torus_gdp_exp(D, lattice):
    return _system_from_torus(make_torus_exp(D), lattice, ("torus_exp", ()))


def build_torus_gdp(D, lattice, a, k):
    m = make_torus_zeta_prime(D, a, k)
    return _system_from_torus(m, lattice, ("torus_gdp", (("a", m.param("a")), ("k", m.param("k")))))


def build_kodaira_gd(D, group, k):
    """Holonomy through Heisenberg -> G_{2[0]} -> G_{n0[0]} -> G_D; developing map
    ``(s, t + k*s**n0)``."""
    n0 = D.multiplicity(0)
    if n0 < 2:
        raise BadMultiplicity(f"0 has multiplicity {n0} < 2 in {D}")
    k = GaussRat.coerce(k)
    m = compose_inducing(make_vitter_affine(0), make_kodaira_gd(n0, k * n0))
    m = compose_inducing(m, include_morphism(Divisor({0: n0}), D))
    return _system_from_kodaira(m, group, ("kodaira_gd", (("k", k),)))


def build_kodaira_gdp(D, group, lam, k):
    lam, k = GaussRat.coerce(lam), GaussRat.coerce(k)
    n = D.multiplicity(lam)
    if n < 2:
        raise BadMultiplicity(f"{lam} has multiplicity {n} < 2 in {D}")
    m = compose_inducing(make_vitter_affine(0), make_kodaira_gdp(n, lam, k))
    m = compose_inducing(m, include_morphism(Divisor({lam: n}), D, "gdp"))
    return _system_from_kodaira(m, group, ("kodaira_gdp", (("lambda", lam), ("k", k))))


def conjugate_system(ds, g):
    """``(h, delta) -> (g h g^-1, g . delta)``."""
    expected = GdpElement if ds.model.kind == "gdp" else GdElement
    if not isinstance(g, expected):
        raise TypeError(f"conjugator must be a {expected.__name__}")
    if g.divisor != ds.model.divisor:
        raise DivisorMismatch(f"conjugator lives over {g.divisor}, system over {ds.model.divisor}")
    ginv = g.inverse()
    hol = tuple(g * x * ginv for x in ds.holonomy)
    delta = act_symbolic(g, ds.developing)
    return DevelopingSystem(ds.surface, ds.model, ds.generators, hol, delta, ds.construction)


def normal_form(ds):
    """Catalog tag and parameters, reading off the developing map modulo V_D.

    A first component ``s + c`` is brought back to ``s`` by conjugating with a
    translation, which leaves the second component unchanged; for G'_D the
    unit in front of ``t`` (or ``exp(t)``) is divided out the same way.
    """
    Z, W = ds.developing
    D = ds.model.divisor
    try:
        first_component_offset(Z)
    except UnsupportedFirstComponent:
        raise NotInCatalogGauge(f"first component {Z} is not s + constant") from None
    gdp = ds.model.kind == "gdp"
    torus = _is_torus(ds.surface)
    free, rest = W.split_beta()

    if rest:
        if not (torus and gdp):
            raise NotInCatalogGauge("exponential in t only occurs for G'_D on tori")
        lead = rest.get(GaussRat(1))
        mono = list(lead.monomials()) if len(rest) == 1 and lead is not None else []
        if len(mono) != 1 or mono[0][:4] != (0, 1, 0, 0) or not mono[0][4].is_unit():
            raise NotInCatalogGauge(f"t-dependence of {W} is not exp(t)")
        if free.t_degree() > 0 or not in_vd(free.t_coefficient(0), D):
            raise NotInCatalogGauge(f"{W} is not exp(t) plus an element of V_D")
        return NormalForm("torus_exp", ())

    if W.t_degree() != 1:
        raise NotInCatalogGauge(f"{W} is not affine in t")
    A, B = W.t_coefficient(1), W.t_coefficient(0)
    mono = list(A.monomials())
    unit_ok = mono and (mono[0][2].is_unit() if gdp else mono[0][2].is_one())
    if len(mono) != 1 or mono[0][1] != 0 or not unit_ok:
        raise NotInCatalogGauge(f"coefficient of t in {W} is not a multiple of exp(a*s)")
    a = mono[0][0]
    if not gdp and a:
        raise NotInCatalogGauge("G_D developing maps have unit t-coefficient")
    B = B.scale(mono[0][2].inverse())
    n = D.multiplicity(a)
    if n < (1 if torus else 2):
        raise NotInCatalogGauge(f"{a} has multiplicity {n} in {D}")

    k = GaussRat(0)
    for lam, power, c in B.monomials():
        if power < D.multiplicity(lam):
            continue  # V_D component, removable by conjugation
        if lam == a and power == n and c.is_gaussrat():
            k = c.as_gaussrat()
            continue
        raise NotInCatalogGauge(f"term s^{power} exp({lam}*s) of {B} is outside V_D + s^{n}exp({a}*s)")

    if not gdp:
        return NormalForm("torus_gd" if torus else "kodaira_gd", (("k", k),))
    if torus:
        return NormalForm("torus_gdp", (("a", a), ("k", k)))
    return NormalForm("kodaira_gdp", (("lambda", a), ("k", k)))
