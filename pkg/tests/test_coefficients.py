from __future__ import annotations

import unittest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from qmatrices.coefficients import (
    ONE,
    Q,
    Q_INV,
    ZERO,
    EvaluationError,
    LaurentPoly,
    lp_add,
    lp_derivative_at_one,
    lp_eval,
    lp_mul,
    minus_q_power,
    normalize_rational,
)

_coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
laurent = st.dictionaries(st.integers(min_value=-4, max_value=4), _coeffs, max_size=4).map(LaurentPoly)
points = st.fractions(min_value=-3, max_value=3, max_denominator=5).filter(lambda v: v != 0)


class LaurentPolyTests(unittest.TestCase):
    def test_evaluate_examples(self) -> None:
        self.assertEqual(lp_eval(Q + Q_INV, 2), Fraction(5, 2))
        self.assertEqual(lp_eval(LaurentPoly.monomial(-2), Fraction(1, 2)), 4)
        self.assertEqual(lp_eval(ZERO, 7), 0)

    def test_derivative_at_one(self) -> None:
        self.assertEqual(lp_derivative_at_one(Q - Q_INV), 2)
        self.assertEqual(lp_derivative_at_one(LaurentPoly.constant(9)), 0)

    def test_evaluate_at_zero_is_rejected(self) -> None:
        with self.assertRaises(EvaluationError):
            Q.evaluate(0)

    def test_canonical_text(self) -> None:
        self.assertEqual((LaurentPoly.monomial(2) - LaurentPoly.monomial(-2)).to_text(), "1*q^2 + -1*q^-2")
        self.assertEqual(LaurentPoly({0: Fraction(1, 2), 1: 3}).to_text(), "3*q + 1/2")
        self.assertEqual(ZERO.to_text(), "0")

    def test_zero_coefficients_are_dropped(self) -> None:
        p = LaurentPoly({3: 0, 1: 2})
        self.assertEqual(p.terms, {1: 2})
        self.assertFalse(Q - Q)

    def test_inverse_of_single_term(self) -> None:
        self.assertEqual(LaurentPoly({3: 2}).inverse(), LaurentPoly({-3: Fraction(1, 2)}))
        self.assertEqual(Q**-2, LaurentPoly.monomial(-2))
        with self.assertRaises(EvaluationError):
            (Q + ONE).inverse()

    def test_minus_q_power_sign(self) -> None:
        self.assertEqual(minus_q_power(3), LaurentPoly({3: -1}))
        self.assertEqual(minus_q_power(-1), LaurentPoly({-1: -1}))
        self.assertEqual(minus_q_power(2), LaurentPoly({2: 1}))

    def test_integer_results_are_normalized(self) -> None:
        self.assertIsInstance(normalize_rational(Fraction(4, 2)), int)
        self.assertEqual(LaurentPoly.constant(3), 3)

    def test_constants_hash_like_rationals(self) -> None:
        for value in (0, 1, -7, Fraction(1, 2)):
            with self.subTest(value=value):
                self.assertEqual(LaurentPoly.constant(value), value)
                self.assertEqual(hash(LaurentPoly.constant(value)), hash(value))
        self.assertEqual(hash(ZERO), hash(0))
        self.assertEqual({ONE: "unit"}[1], "unit")
        self.assertEqual(len({1, ONE, Fraction(1)}), 1)
        self.assertNotEqual(Q, 1)

    @settings(max_examples=60, deadline=None)
    @given(laurent, laurent)
    def test_equal_polynomials_hash_equal(self, a: LaurentPoly, b: LaurentPoly) -> None:
        self.assertEqual(hash(a + b), hash(b + a))
        self.assertEqual(hash(a * b), hash(b * a))

    @settings(max_examples=60, deadline=None)
    @given(laurent, laurent, laurent)
    def test_ring_axioms(self, a: LaurentPoly, b: LaurentPoly, c: LaurentPoly) -> None:
        self.assertEqual(lp_add(a, b), lp_add(b, a))
        self.assertEqual(lp_mul(a, b), lp_mul(b, a))
        self.assertEqual((a * b) * c, a * (b * c))
        self.assertEqual(a * (b + c), a * b + a * c)
        self.assertEqual(a * ONE, a)
        self.assertEqual(a - a, ZERO)

    @settings(max_examples=60, deadline=None)
    @given(laurent, laurent, points)
    def test_evaluation_is_a_ring_homomorphism(self, a: LaurentPoly, b: LaurentPoly, v: Fraction) -> None:
        self.assertEqual((a + b).evaluate(v), a.evaluate(v) + b.evaluate(v))
        self.assertEqual((a * b).evaluate(v), a.evaluate(v) * b.evaluate(v))

    @settings(max_examples=60, deadline=None)
    @given(laurent, laurent)
    def test_derivative_product_rule(self, a: LaurentPoly, b: LaurentPoly) -> None:
        expected = a.derivative_at_one() * b.evaluate(1) + a.evaluate(1) * b.derivative_at_one()
        self.assertEqual((a * b).derivative_at_one(), expected)


if __name__ == "__main__":
    unittest.main()
