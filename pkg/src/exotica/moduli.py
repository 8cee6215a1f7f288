"""Moduli of structures on tori: the quotients V_D / (d/dz - a) V_D and the
combinatorial shape of the families they parameterize."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import NotInSupport, ParseError
from .exppoly import ExpPoly, diff, in_vd, vd_basis
from .grammar import parse_gaussrat
from .linalg import rank, solve, transpose
from .scalar import GaussRat

__all__ = [
    "Point", "Line", "ModuliDescription", "operator_matrix", "quotient_dim",
    "moduli_gdp_torus", "moduli_gd_torus", "coset_representative",
]


@dataclass(frozen=True)
class Point:
    tag: str = "torus_exp"

    def __str__(self):
        return "point"


@dataclass(frozen=True)
class Line:
    base: GaussRat

    def __str__(self):
        return f"line@{self.base}"


@dataclass(frozen=True)
class ModuliDescription:
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if sum(isinstance(c, Point) for c in comps) > 1:
            raise ValueError("at most one isolated point")
        bases = [c.base for c in comps if isinstance(c, Line)]
        if len(set(bases)) != len(bases):
            raise ValueError("line base points must be distinct")
        points = [c for c in comps if isinstance(c, Point)]
        lines = sorted((c for c in comps if isinstance(c, Line)), key=lambda c: c.base.sort_key())
        object.__setattr__(self, "components", tuple(points + lines))

    @property
    def has_point(self):
        return any(isinstance(c, Point) for c in self.components)

    @property
    def line_bases(self):
        return tuple(c.base for c in self.components if isinstance(c, Line))

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text == "empty":
            return cls(())
        comps = []
        for piece in re.split(r"\s+\+\s+", text):
            if piece == "point":
                comps.append(Point())
            elif piece.startswith("line@"):
                comps.append(Line(parse_gaussrat(piece[5:])))
            else:
                raise ParseError(f"unknown moduli component {piece!r}")
        return cls(tuple(comps))

    def __str__(self):
        return " + ".join(str(c) for c in self.components) or "empty"


def _coordinates(f, basis):
    """Coordinates of ``f`` in a monomial basis (coefficients read off directly)."""
    out = []
    for b in basis:
        (lam, k, _), = b.monomials()
        out.append(f.coefficient(k, lam).as_gaussrat())
    return out


def operator_matrix(D, a):
    """Matrix of ``d/dz - a`` on V_D, one column per basis vector."""
    a = GaussRat.coerce(a)
    basis = vd_basis(D)
    cols = []
    for b in basis:
        image = diff(b) - b.scale(a)
        assert in_vd(image, D), "V_D is not preserved"
        cols.append(_coordinates(image, basis))
    return transpose(cols)


def quotient_dim(D, a):
    return D.degree - rank(operator_matrix(D, a))


def moduli_gdp_torus(D):
    """An exceptional point plus one line for each point of the support."""
    lines = []
    for a in D.support:
        assert quotient_dim(D, a) == 1
        lines.append(Line(a))
    return ModuliDescription((Point(),) + tuple(lines))


def moduli_gd_torus(D):
    """A single line (the k-parameter) when 0 is in the support, else empty."""
    if 0 in D:
        assert quotient_dim(D, 0) == 1
        return ModuliDescription((Line(GaussRat(0)),))
    return ModuliDescription(())


def coset_representative(D, a):
    """``z**(n_a - 1) exp(a z)``, checked to lie outside the image of ``d/dz - a``."""
    a = GaussRat.coerce(a)
    n = D.multiplicity(a)
    if n == 0:
        raise NotInSupport(f"{a} is not in the support of {D}")
    rep = ExpPoly.monomial(n - 1, a)
    assert solve(operator_matrix(D, a), _coordinates(rep, vd_basis(D))) is None
    return rep
