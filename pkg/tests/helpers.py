"""Random generators shared by the test modules."""

import random
from fractions import Fraction

from exotica.exppoly import Divisor
from exotica.homogeneous import random_gaussrat
from exotica.scalar import GaussRat
from exotica.surfaces import KodairaGroup, TorusLattice

POINTS = (GaussRat(0), GaussRat(1), GaussRat(0, 1), GaussRat(-2), GaussRat(Fraction(1, 2), 1))


def random_divisor(rng, max_degree=5, points=POINTS):
    degree = rng.randint(1, max_degree)
    mult = {}
    for _ in range(degree):
        lam = rng.choice(points)
        mult[lam] = mult.get(lam, 0) + 1
    return Divisor(mult)


def random_divisor_with(rng, lam, min_mult=1, max_degree=5):
    """Random divisor in which ``lam`` has multiplicity at least ``min_mult``."""
    D = random_divisor(rng, max(1, max_degree - min_mult))
    return D + Divisor({lam: min_mult})


def random_lattice(rng):
    while True:
        pairs = [(random_gaussrat(rng), random_gaussrat(rng)) for _ in range(4)]
        try:
            return TorusLattice(pairs)
        except ValueError:
            continue


def random_nonzero(rng):
    q = random_gaussrat(rng)
    while not q:
        q = random_gaussrat(rng)
    return q


def random_kodaira(rng):
    """Random valid constants; b1 is solved from the relation."""
    while True:
        r = rng.randint(1, 3)
        a1, a3, b3 = random_gaussrat(rng), random_nonzero(rng), random_gaussrat(rng)
        c2, d2 = random_nonzero(rng), random_gaussrat(rng)
        b1 = (a1 * b3 - c2 * r) / a3
        try:
            return KodairaGroup(a1, a3, b1, b3, c2, d2, r)
        except ValueError:
            continue


def rng_for(name):
    return random.Random(name)
