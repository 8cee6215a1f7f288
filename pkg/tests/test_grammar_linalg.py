import random

import pytest
import sympy

from exotica.errors import ParseError
from exotica.exppoly import Divisor, ExpPoly
from exotica.grammar import parse_divisor, parse_exppoly, parse_scalar, split_top_level
from exotica.homogeneous import random_gaussrat
from exotica.linalg import rank, solve
from exotica.scalar import E, GaussRat
from test_scalar import to_sympy


def test_expression_grammar():
    assert parse_exppoly("(z + 1)^2") == ExpPoly.parse("z^2 + 2*z + 1")
    assert parse_exppoly("exp(2*z) * exp(-z)") == ExpPoly.parse("exp(z)")
    assert parse_exppoly("z/2") == ExpPoly.monomial(1, 0, GaussRat(1, 0) / 2)
    assert parse_scalar("E(1)^2 * E(-1)") == E(1)


@pytest.mark.parametrize("text, column", [
    ("1 + * z", 5),
    ("z $ 1", 3),
    ("z / z", 3),
])
def test_expression_errors_have_columns(text, column):
    with pytest.raises(ParseError) as info:
        parse_exppoly(text)
    assert info.value.column == column


def test_divisor_grammar():
    assert parse_divisor("2[0] + [1+1*i]") == Divisor({0: 2, GaussRat(1, 1): 1})
    assert parse_divisor("[0]+[0]") == Divisor({0: 2})
    with pytest.raises(ParseError):
        parse_divisor("2[0] [1]")
    with pytest.raises(ParseError):
        parse_divisor("0[1]")


def test_split_top_level():
    assert split_top_level("a(1,2), b", ",") == [("a(1,2)", 0), (" b", 7)]


def test_rank_matches_sympy():
    rng = random.Random(5)
    for _ in range(40):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[random_gaussrat(rng) if rng.random() < 0.7 else GaussRat(0) for _ in range(n)]
                for _ in range(m)]
        if rng.random() < 0.5 and m > 1:
            rows[-1] = [a + b for a, b in zip(rows[0], rows[1 % m])]
        oracle = sympy.Matrix([[to_sympy(x) for x in row] for row in rows]).rank(simplify=True)
        assert rank(rows) == oracle


def test_solve():
    A = [[GaussRat(1), GaussRat(2)], [GaussRat(2), GaussRat(4)]]
    assert solve(A, [GaussRat(1), GaussRat(3)]) is None
    x = solve(A, [GaussRat(1), GaussRat(2)])
    assert [sum((a * b for a, b in zip(row, x)), GaussRat(0)) for row in A] == [1, 2]
