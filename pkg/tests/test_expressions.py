import math

import numpy as np
import pytest

from steklov import EvaluationError, ExpressionSyntaxError, parse_expression
from steklov.chebyshev import eval_series


def value_at(coeffs, x):
    return float(eval_series(coeffs, x))


class TestParsing:
    def test_constant(self):
        coeffs = parse_expression("1")
        assert value_at(coeffs, 0.37) == pytest.approx(1.0, abs=1e-14)

    def test_quadratic_endpoints(self):
        coeffs = parse_expression("(1+0.2*x)^2")
        assert value_at(coeffs, 0.0) == pytest.approx(1.0, abs=1e-14)
        assert value_at(coeffs, 1.0) == pytest.approx(1.44, abs=1e-14)

    def test_polynomial_coefficient_count(self):
        coeffs = parse_expression("(1+0.2*x)^2")
        assert np.sum(np.abs(coeffs) > 1e-12) <= 3

    def test_functions(self):
        coeffs = parse_expression("exp(-x)*sin(x)/2 + sqrt(x+1)^3 - cos(2*x)")
        x = 0.3
        expected = (
            math.exp(-x) * math.sin(x) / 2.0 + math.sqrt(x + 1.0) ** 3 - math.cos(2.0 * x)
        )
        assert value_at(coeffs, x) == pytest.approx(expected, abs=1e-12)

    def test_unary_minus_binds_below_power(self):
        coeffs = parse_expression("-x^2")
        assert value_at(coeffs, 1.0) == pytest.approx(-1.0, abs=1e-12)

    def test_power_is_right_associative(self):
        coeffs = parse_expression("2^3^2")
        assert value_at(coeffs, 0.5) == pytest.approx(512.0, rel=1e-12)

    def test_division(self):
        coeffs = parse_expression("1/(1+x)")
        assert value_at(coeffs, 1.0) == pytest.approx(0.5, abs=1e-12)

    def test_whitespace_ignored(self):
        coeffs = parse_expression("  1 +  0.5 * x ")
        assert value_at(coeffs, 1.0) == pytest.approx(1.5, abs=1e-13)


class TestSyntaxErrors:
    def test_dangling_operator(self):
        with pytest.raises(ExpressionSyntaxError) as excinfo:
            parse_expression("1+*x")
        assert excinfo.value.position == 2

    def test_unbalanced_paren(self):
        with pytest.raises(ExpressionSyntaxError):
            parse_expression("(1+x")

    def test_unknown_name(self):
        with pytest.raises(ExpressionSyntaxError) as excinfo:
            parse_expression("1+tan(x)")
        assert "sqrt" in excinfo.value.expected

    def test_trailing_garbage(self):
        with pytest.raises(ExpressionSyntaxError) as excinfo:
            parse_expression("1+x )")
        assert excinfo.value.position == 4

    def test_unknown_character(self):
        with pytest.raises(ExpressionSyntaxError) as excinfo:
            parse_expression("1 & x")
        assert excinfo.value.position == 2


class TestEvaluationErrors:
    def test_log_of_negative(self):
        with pytest.raises(EvaluationError):
            parse_expression("log(x-2)")

    def test_sqrt_of_negative(self):
        with pytest.raises(EvaluationError):
            parse_expression("sqrt(x-0.5)")

    def test_division_pole(self):
        with pytest.raises(EvaluationError):
            parse_expression("1/x")

    def test_log_on_shifted_domain_ok(self):
        coeffs = parse_expression("log(x+2)")
        assert value_at(coeffs, 0.0) == pytest.approx(math.log(2.0), abs=1e-12)
