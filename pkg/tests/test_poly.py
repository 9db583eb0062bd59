"""Arithmetic, substitution, divided differences, and the text grammar."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import polynomials
from loopsing.errors import ArityMismatchError, InputError, OddExponentError
from loopsing.poly import (
    Polynomial,
    difference_derivative,
    exact_quotient_by_difference,
    format_polynomial,
    halve_variable,
    parse_polynomial,
)


def P(text, arity=None):
    return parse_polynomial(text, arity)


class TestRingOperations:
    def test_additive_inverse_gives_zero(self):
        assert (P("x1^2") + P("-x1^2")).is_zero()

    def test_disjoint_supports(self):
        assert P("x1^2*x2", 2) + P("x2^3", 2) == P("x1^2*x2 + x2^3")

    def test_sum_assembles_the_worked_completion(self):
        f_kappa = P("x4^7 + x1^6*x4 + x3^3*x4 + x2^9*x3")
        f_add = P("x1^3*x3^2", 4)
        assert f_kappa + f_add == P("x4^7 + x1^6*x4 + x3^3*x4 + x2^9*x3 + x1^3*x3^2")

    def test_difference_of_squares(self):
        assert P("x1 + x2") * P("x1 - x2") == P("x1^2 - x2^2")

    def test_arity_mismatch_rejected(self):
        with pytest.raises(ArityMismatchError):
            P("x1", 1) + P("x1", 2)

    def test_scalar_and_power(self):
        assert P("x1 + 1", 1) ** 2 == P("x1^2 + 2*x1 + 1")
        assert P("x1", 1).scale(Fraction(1, 2)) == P("1/2*x1")

    @given(polynomials(), polynomials(), polynomials())
    @settings(max_examples=60, deadline=None)
    def test_ring_laws(self, a, b, c):
        n = max(a.arity, b.arity, c.arity)
        a, b, c = a.extend(n), b.extend(n), c.extend(n)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


class TestDerivatives:
    def test_termwise_power_rule(self):
        f = P("x4^7 + x1^6*x4 + x3^3*x4 + x2^9*x3")
        assert f.partial_derivative(4) == P("7*x4^6 + x1^6 + x3^3", 4)

    def test_isolated_square_slot(self):
        f_bar = P("x1^3 + x2^2*x1 + x3^8*x1 + x2^2*x3^4 + x4^2*x2")
        assert f_bar.partial_derivative(4) == P("2*x2*x4", 4)

    def test_index_out_of_range(self):
        with pytest.raises(InputError):
            P("x1", 1).partial_derivative(2)

    @given(polynomials(arity=3), st.integers(1, 3), st.integers(1, 3))
    @settings(max_examples=40, deadline=None)
    def test_partials_commute(self, p, i, j):
        assert (
            p.partial_derivative(i).partial_derivative(j)
            == p.partial_derivative(j).partial_derivative(i)
        )


class TestSubstitution:
    def test_identity_assignment(self):
        f = P("x1^2*x2 + x2^3")
        identity = {i: Polynomial.variable(2, i) for i in (1, 2)}
        assert f.substitute(identity) == f

    def test_general_substitution(self):
        f = P("x1^2", 1)
        assert f.substitute({1: P("x1 + x2")}) == P("x1^2 + 2*x1*x2 + x2^2")

    def test_halving_even_powers(self):
        assert halve_variable(P("x2^4*x3^4", 3), 2) == P("x2^2*x3^4", 3)
        assert halve_variable(P("x1^6*x2", 2), 1) == P("x1^3*x2")

    def test_halving_odd_exponent_rejected(self):
        with pytest.raises(OddExponentError):
            halve_variable(P("x1^3", 1), 1)

    def test_sign_substitution(self):
        f = P("x1^3 + x2^4*x1 + x3^8*x1 + x2^4*x3^4 + x4^2")
        assert f.apply_signs((1, -1, 1, -1)) == f
        g = P("x1^2*x2", 2)
        assert g.apply_signs((1, -1)) == P("-x1^2*x2")


class TestDifferenceDerivative:
    def test_square(self):
        # (x^2 - y^2) / (x - y) with the replacement slot printed as x2
        assert difference_derivative(P("x1^2", 1), 1) == P("x1 + x2")

    def test_linear_slot(self):
        assert difference_derivative(P("x1*x2", 2), 1) == P("x2", 4)

    def test_second_slot_uses_replacement(self):
        # numerator y1 x2 - y1 y2, so the quotient is y1 (slot 3 of 4)
        assert difference_derivative(P("x1*x2", 2), 2) == P("x3", 4)

    def test_exact_quotient_rejects_inexact(self):
        with pytest.raises(AssertionError):
            exact_quotient_by_difference(P("x1^2 + x2", 2), 1, 2)

    @given(polynomials(max_arity=3), st.data())
    @settings(max_examples=60, deadline=None)
    def test_reconstruction_identity(self, p, data):
        n = p.arity
        i = data.draw(st.integers(1, n))
        dd = difference_derivative(p, i)
        upper = p.rename({k: n + k for k in range(1, i)}, 2 * n)
        lower = p.rename({k: n + k for k in range(1, i + 1)}, 2 * n)
        x_i = Polynomial.variable(2 * n, i)
        y_i = Polynomial.variable(2 * n, n + i)
        assert (x_i - y_i) * dd + lower == upper

    @given(polynomials(max_arity=3), st.data())
    @settings(max_examples=40, deadline=None)
    def test_diagonal_recovers_partial(self, p, data):
        n = p.arity
        i = data.draw(st.integers(1, n))
        dd = difference_derivative(p, i)
        diagonal = {
            n + k: Polynomial.variable(2 * n, k) for k in range(1, n + 1)
        }
        folded = dd.substitute(diagonal).rename({}, n)
        assert folded == p.partial_derivative(i)


class TestGrammar:
    def test_worked_polynomial_parses(self):
        f = P("x4^7 + x1^6*x4 + x3^3*x4 + x2^9*x3 + x1^3*x3^2")
        assert f.arity == 4
        assert f.coefficient((0, 9, 1, 0)) == 1

    def test_rational_coefficients_and_optional_star(self):
        assert P("3/2x1^2 - x2") == P("3/2*x1^2 - x2")

    def test_zero_polynomial(self):
        assert P("", 3).is_zero()
        assert format_polynomial(Polynomial.zero(2)) == "0"

    def test_canonical_order_is_graded(self):
        f = P("x1 + x2^3", 2)
        assert format_polynomial(f) == "x2^3 + x1"

    def test_bad_input_rejected(self):
        with pytest.raises(InputError):
            P("x1 $ x2")
        with pytest.raises(InputError):
            P("x1 + + x2")
        with pytest.raises(InputError):
            P("x5", 2)

    @given(polynomials())
    @settings(max_examples=80, deadline=None)
    def test_round_trip(self, p):
        assert parse_polynomial(format_polynomial(p), p.arity) == p
