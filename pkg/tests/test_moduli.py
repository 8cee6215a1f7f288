import itertools
import random

import pytest
import sympy

from exotica.errors import NotInSupport
from exotica.exppoly import Divisor, ExpPoly, diff, vd_basis
from exotica.moduli import (Line, ModuliDescription, Point, coset_representative,
                            moduli_gd_torus, moduli_gdp_torus, operator_matrix, quotient_dim)
from exotica.scalar import I, GaussRat
from helpers import POINTS, random_divisor
from test_exppoly import to_sympy_fn

z = sympy.symbols("z")


def oracle_quotient_dim(D, a):
    """Independent count with sympy: f -> (f(0), f'(0), ..., f^(N-1)(0)) is
    injective on the N-dimensional solution space V_D, so the image of
    d/dz - a has the rank of the matrix of initial data of the images."""
    n = D.degree
    a_s = sympy.Rational(a.re.numerator, a.re.denominator) + sympy.I * sympy.Rational(
        a.im.numerator, a.im.denominator)
    rows = []
    for b in vd_basis(D):
        img = sympy.diff(to_sympy_fn(b), z) - a_s * to_sympy_fn(b)
        rows.append([sympy.expand(sympy.diff(img, z, j).subs(z, 0)) for j in range(n)])
    return n - sympy.Matrix(rows).rank(simplify=True)


def test_quotient_dim_examples():
    assert quotient_dim(Divisor({0: 2, 1: 1}), 0) == 1
    assert quotient_dim(Divisor({0: 2}), 5) == 0
    assert quotient_dim(Divisor({0: 1}), 0) == 1


def test_quotient_dim_is_support_indicator():
    probes = POINTS
    for n in range(1, 7):
        for combo in itertools.combinations_with_replacement(range(3), n):
            D = Divisor({p: combo.count(j) for j, p in enumerate(POINTS[:3]) if combo.count(j)})
            for a in probes:
                assert quotient_dim(D, a) == (1 if a in D else 0)


def test_quotient_dim_matches_oracle():
    rng = random.Random(1)
    for _ in range(8):
        D = random_divisor(rng, 4, POINTS[:3])
        for a in POINTS[:3]:
            assert quotient_dim(D, a) == oracle_quotient_dim(D, a)


def test_operator_matrix_columns():
    M = operator_matrix(Divisor({0: 2, 1: 1}), 0)
    assert M == [[0, 1, 0], [0, 0, 0], [0, 0, 1]]


def test_moduli_descriptions():
    assert moduli_gdp_torus(Divisor({0: 1})) == ModuliDescription((Point(), Line(GaussRat(0))))
    assert str(moduli_gdp_torus(Divisor({0: 2, 1: 3}))) == "point + line@0 + line@1"
    assert moduli_gdp_torus(Divisor({0: 2})) == moduli_gdp_torus(Divisor({0: 5}))
    assert str(moduli_gd_torus(Divisor({1: 1}))) == "empty"
    assert str(moduli_gd_torus(Divisor({0: 1}))) == "line@0"
    assert moduli_gd_torus(Divisor({0: 4, 2 * I: 1})) == moduli_gd_torus(Divisor({0: 1}))


def test_descriptions_round_trip():
    rng = random.Random(2)
    for _ in range(20):
        D = random_divisor(rng)
        for desc in (moduli_gdp_torus(D), moduli_gd_torus(D)):
            assert ModuliDescription.parse(str(desc)) == desc


def test_description_invariants():
    with pytest.raises(ValueError):
        ModuliDescription((Point(), Point()))
    with pytest.raises(ValueError):
        ModuliDescription((Line(GaussRat(0)), Line(GaussRat(0))))


def test_coset_representatives():
    assert coset_representative(Divisor({0: 1}), 0) == ExpPoly.const(1)
    assert coset_representative(Divisor({0: 2}), 0) == ExpPoly.monomial(1)
    assert coset_representative(Divisor({1: 3}), 1) == ExpPoly.monomial(2, 1)
    with pytest.raises(NotInSupport):
        coset_representative(Divisor({0: 2}), 1)


def test_coset_representative_not_in_image():
    rng = random.Random(3)
    for _ in range(20):
        D = random_divisor(rng)
        for a in D.support:
            rep = coset_representative(D, a)
            images = [diff(b) - b.scale(a) for b in vd_basis(D)]
            # rep is a basis vector; no image has a nonzero coordinate there
            lam, k, _ = next(rep.monomials())
            assert all(img.coefficient(k, lam).is_zero() for img in images)
