"""Sparse polynomial helper."""

from fractions import Fraction

import pytest

from spinorlab.poly import Poly


def test_arithmetic_and_evaluation():
    x, y = Poly.var("x"), Poly.var("y")
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert p.evaluate({"x": Fraction(3), "y": Fraction(2)}) == 5
    assert (p - p).is_zero()
    assert Poly.const(0).is_zero()


def test_scalar_multiplication():
    x = Poly.var("x")
    assert 2 * x == x + x
    assert (x * Fraction(1, 2)).evaluate({"x": 4}) == 2


def test_linear_split_and_division():
    a, b, c = Poly.var("a"), Poly.var("b"), Poly.var("c")
    p = a * b + c * Fraction(3)
    assert p.coefficient_of_var("a") == b
    assert p.without_var("a") == 3 * c
    assert (a * b + a * c).divide_by_var("a") == b + c
    with pytest.raises(ValueError):
        (a * a).coefficient_of_var("a")
    with pytest.raises(ValueError):
        (a + b).divide_by_var("a")
