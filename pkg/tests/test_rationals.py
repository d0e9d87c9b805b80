import random
from fractions import Fraction

import pytest

from fedosov.rationals import (
    ParseError, PoleError, Polynomial, RationalFunction, parse_ratfun,
)
from conftest import random_rational_function


def rf(text, variables=("x", "y")):
    return parse_ratfun(text, variables)


def test_zero_constant_is_zero():
    assert parse_ratfun("0").is_zero()
    assert RationalFunction.constant(0).is_zero()


def test_syntactic_cancellation_is_zero():
    assert rf("(x*y - y*x)/x").is_zero()


def test_sum_of_chart_terms_is_nonzero():
    value = rf("-2/(3*x^3)") + rf("2/(9*x^3)")
    assert not value.is_zero()
    assert value == rf("-4/(9*x^3)")


def test_partial_quotient_rule_example():
    assert rf("1/(3*x^2)").partial("x") == rf("-2/(3*x^3)")


def test_partial_independent_variable():
    assert rf("x").partial("y").is_zero()


def test_partial_product():
    assert rf("x*y").partial("x") == rf("y")


def test_partial_unknown_variable_errors():
    with pytest.raises(ValueError):
        parse_ratfun("1/(3*x^2)", ("x",)).partial("z")


def test_eval_direct_substitution():
    assert rf("1/(3*x^2)").evaluate({"x": Fraction(1), "y": Fraction(0)}) == Fraction(1, 3)
    assert rf("-4/(3*x)").evaluate({"x": Fraction(2), "y": Fraction(0)}) == Fraction(-2, 3)


def test_eval_pole():
    with pytest.raises(PoleError):
        rf("1/x").evaluate({"x": Fraction(0), "y": Fraction(0)})


def test_eval_requires_all_variables():
    with pytest.raises(ValueError):
        rf("x + y").evaluate({"x": Fraction(1)})


def test_equality_by_cross_multiplication():
    # same value, different representations
    a = RationalFunction(Polynomial(("x",), {(1,): Fraction(2)}),
                         Polynomial(("x",), {(2,): Fraction(2)}))
    b = rf("1/x", ("x",))
    assert a == b


def test_quotient_rule_is_exact():
    rng = random.Random(11)
    for _ in range(50):
        f = random_rational_function(rng)
        g = random_rational_function(rng)
        if g.is_zero():
            continue
        q = f / g
        lhs = q.partial("x")
        rhs = (f.partial("x") * g - f * g.partial("x")) / (g * g)
        assert lhs == rhs


def test_mixed_partials_commute():
    rng = random.Random(5)
    for _ in range(100):
        f = random_rational_function(rng)
        assert f.partial("x").partial("y") == f.partial("y").partial("x")


def test_field_axioms_on_random_triples():
    rng = random.Random(2024)
    for _ in range(1000):
        a = random_rational_function(rng)
        b = random_rational_function(rng)
        c = random_rational_function(rng)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        if not a.is_zero():
            assert (b / a) * a == b
            assert a * (1 / a) == 1


def test_power_and_negative_power():
    f = rf("x", ("x",))
    assert f ** 3 == rf("x^3", ("x",))
    assert f ** -2 == rf("1/(x^2)", ("x",))


def test_parser_rejects_unknown_variable():
    with pytest.raises(ParseError):
        parse_ratfun("q + 1", ("x", "y"))


def test_parser_reports_position():
    with pytest.raises(ParseError) as err:
        parse_ratfun("1 + $", ("x",))
    assert "column 5" in str(err.value)


def test_parser_rejects_zero_exponent():
    with pytest.raises(ParseError):
        parse_ratfun("x^0", ("x",))


def test_parser_rejects_trailing_garbage():
    with pytest.raises(ParseError):
        parse_ratfun("x 1", ("x",))


def test_parser_division_by_zero_literal():
    with pytest.raises(ParseError):
        parse_ratfun("1/0")


def test_precedence():
    assert parse_ratfun("2 + 3 * 4").constant_value() == 14
    assert parse_ratfun("-2^2").constant_value() == -4
    assert parse_ratfun("12/3/2").constant_value() == 2
    assert parse_ratfun("2*x^2", ("x",)) == rf("2*(x^2)", ("x",))


def test_str_round_trip():
    rng = random.Random(17)
    for _ in range(100):
        f = random_rational_function(rng)
        again = parse_ratfun(str(f), ("x", "y"))
        assert f == again


def test_polynomial_divmod_exactness():
    x = Polynomial.variable("x")
    y = Polynomial.variable("y")
    p = (x + y) * (x - y)
    q = p.try_exact_div(x + y)
    assert q is not None and q == (x - y)
    assert (x * x + Polynomial.constant(1, ("x",))).try_exact_div(x) is None


def test_denominator_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        RationalFunction(Polynomial.variable("x"), Polynomial.constant(0, ("x",)))
