import random
from fractions import Fraction

import pytest

from grassgeo.errors import ParseError
from grassgeo.fields import QQ
from grassgeo.parse import (
    Add,
    Const,
    Mul,
    Neg,
    Pow,
    Sub,
    Var,
    expr_to_poly,
    format_poly,
    parse_poly,
    poly_from_string,
)
from grassgeo.poly import PolyRing


def test_parse_basic_shapes():
    assert parse_poly("x0*x3 - x1*x2") == Sub(Mul(Var("x0"), Var("x3")), Mul(Var("x1"), Var("x2")))
    t = parse_poly("x0^3 + 3/2*x1^2*x2")
    assert t == Add(
        Pow(Var("x0"), 3),
        Mul(Mul(Const(Fraction(3, 2)), Pow(Var("x1"), 2)), Var("x2")),
    )


def test_parse_errors_with_position():
    with pytest.raises(ParseError) as e:
        parse_poly("x0^-1")
    assert e.value.pos == 3
    with pytest.raises(ParseError):
        parse_poly("(x0 + x1")
    with pytest.raises(ParseError):
        parse_poly("foo + 1")
    with pytest.raises(ParseError):
        parse_poly("x0 + ")


def test_whitespace_insensitive():
    assert parse_poly(" x0 *x1+ 2 ") == parse_poly("x0*x1+2")


def test_pluecker_variable_names():
    assert parse_poly("p0_1*p2_3") == Mul(Var("p0_1"), Var("p2_3"))


def _random_expr(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.5:
            return Var(rng.choice(["x0", "x1", "x2", "p0_1", "p12"]))
        num = rng.randrange(0, 30)
        den = rng.randrange(1, 9)
        return Const(Fraction(num, den))
    kind = rng.choice(["add", "sub", "mul", "neg", "pow"])
    if kind == "add":
        return Add(_random_expr(rng, depth - 1), _random_expr(rng, depth - 1))
    if kind == "sub":
        return Sub(_random_expr(rng, depth - 1), _random_expr(rng, depth - 1))
    if kind == "mul":
        return Mul(_random_expr(rng, depth - 1), _random_expr(rng, depth - 1))
    if kind == "neg":
        return Neg(_random_expr(rng, depth - 1))
    return Pow(_random_expr(rng, depth - 1), rng.randrange(0, 5))


def test_round_trip_500_random_trees():
    rng = random.Random(99)
    for _ in range(500):
        tree = _random_expr(rng, 4)
        text = format_poly(tree)
        assert parse_poly(text) == tree, text


def test_expr_to_poly():
    ring = PolyRing(QQ, ("x0", "x1", "x2", "x3"))
    f = poly_from_string("x0*x3 - x1*x2", ring)
    x0, x1, x2, x3 = ring.gens()
    assert f == x0 * x3 - x1 * x2
    g = poly_from_string("3/2*x0^2 - x1", ring)
    assert g.coeff((2, 0, 0, 0)) == Fraction(3, 2)


def test_expr_to_poly_unknown_variable():
    ring = PolyRing(QQ, ("x0", "x1"))
    with pytest.raises(ParseError):
        poly_from_string("x7 + 1", ring)
