"""Hypothesis strategies for the exact value types."""

from fractions import Fraction

from hypothesis import strategies as st

from exotica.exppoly import Divisor, ExpPoly
from exotica.scalar import ExpScalar, GaussRat

fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
gaussrats = st.builds(GaussRat, fractions, fractions | st.just(Fraction(0)))
nonzero_gaussrats = gaussrats.filter(bool)
small_points = st.sampled_from([GaussRat(0), GaussRat(1), GaussRat(0, 1), GaussRat(-1, 2),
                                GaussRat(Fraction(1, 2), -1)])

exp_scalars = st.dictionaries(small_points, gaussrats, max_size=3).map(ExpScalar)
units = st.builds(ExpScalar.exp, small_points, nonzero_gaussrats)

divisors = st.dictionaries(small_points, st.integers(1, 3), min_size=1, max_size=3).map(Divisor)


@st.composite
def exppolys(draw, max_terms=4):
    f = ExpPoly()
    for _ in range(draw(st.integers(0, max_terms))):
        k = draw(st.integers(0, 3))
        lam = draw(small_points)
        f = f + ExpPoly.monomial(k, lam, draw(exp_scalars))
    return f


@st.composite
def vd_elements(draw, D):
    from exotica.exppoly import vd_basis
    f = ExpPoly()
    for b in vd_basis(D):
        f = f + b.scale(draw(gaussrats))
    return f
