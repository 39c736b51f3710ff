from __future__ import annotations

import unittest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from qmatrices.algebra import AlgebraElement, AlgebraError, generator, reduce_element, scalar
from qmatrices.coefficients import Q, Q_INV, LaurentPoly
from qmatrices.exprio import Gen, ParseError, Power, Product, eval_expr, evaluate_text, format_value, parse, tokenize
from qmatrices.poisson import CPoly


class ParseTests(unittest.TestCase):
    def test_ast_shape(self) -> None:
        ast = parse("x[1,2]*x[2,1]^2", 2)
        self.assertEqual(ast.n, 2)
        self.assertEqual(ast.mode, "quantum")
        self.assertIsInstance(ast.root, Product)
        first, second = ast.root.factors
        self.assertEqual(first, Gen("x", 1, 2, 0))
        self.assertIsInstance(second, Power)
        self.assertEqual(second.exponent, 2)

    def test_tokens_carry_positions(self) -> None:
        tokens = tokenize("x[1, 2] + 3/4")
        self.assertEqual([t.text for t in tokens], ["x", "[", "1", ",", "2", "]", "+", "3/4", ""])
        self.assertEqual(tokens[4].pos, 5)
        self.assertEqual(tokens[-1].kind, "eof")

    def test_index_out_of_range(self) -> None:
        with self.assertRaises(ParseError) as ctx:
            parse("x[3,1]", 2)
        self.assertEqual(ctx.exception.position, 0)

    def test_error_positions(self) -> None:
        cases = {
            "x[1,1] + z": 9,
            "x[1,1] $": 7,
            "x[1,1": 5,
            "x[1,1] +": 8,
            "(x[1,1]": 7,
            "x[1/2,1]": 2,
        }
        for text, position in cases.items():
            with self.subTest(text=text):
                with self.assertRaises(ParseError) as ctx:
                    parse(text, 2)
                self.assertEqual(ctx.exception.position, position)

    def test_family_must_match_mode(self) -> None:
        with self.assertRaises(ParseError):
            parse("y[1,1]", 2)
        with self.assertRaises(ParseError):
            parse("x[1,1]", 2, "classical")
        with self.assertRaises(ParseError):
            parse("q*y[1,1]", 2, "classical")

    def test_zero_denominator(self) -> None:
        with self.assertRaises(ParseError):
            parse("1/0", 2)

    def test_invalid_size(self) -> None:
        with self.assertRaises(AlgebraError):
            parse("x[1,1]", 0)


class EvaluateTests(unittest.TestCase):
    def test_product_is_brought_to_normal_form(self) -> None:
        self.assertEqual(evaluate_text("x[2,2]*x[1,1]", 2), reduce_element([(2, 2), (1, 1)], 2))

    def test_scalars_and_powers(self) -> None:
        self.assertEqual(evaluate_text("(q + q^-1)*x[1,2]*x[2,1]", 2), AlgebraElement(2, {((1, 2), (2, 1)): Q + Q_INV}))
        self.assertEqual(evaluate_text("-1/2*x[1,1]^2", 2), (generator(1, 1, 2) ** 2).scale(Fraction(-1, 2)))
        self.assertEqual(evaluate_text("(2*q)^-1", 2), scalar(LaurentPoly({-1: Fraction(1, 2)}), 2))
        self.assertEqual(evaluate_text("x[1,1] - x[1,1]", 2), 0)

    def test_negative_exponent_needs_invertible_scalar(self) -> None:
        with self.assertRaises(ParseError):
            evaluate_text("x[1,1]^-1", 2)
        with self.assertRaises(ParseError):
            evaluate_text("(q + 1)^-1", 2)

    def test_classical_mode(self) -> None:
        value = evaluate_text("y[1,1]*y[1,2]^2 - 2", 2, "classical")
        expected = CPoly.generator(1, 1, 2) * CPoly.generator(1, 2, 2) ** 2 - 2
        self.assertEqual(value, expected)

    def test_mode_mismatch(self) -> None:
        with self.assertRaises(ParseError):
            eval_expr(parse("x[1,1]", 2), "classical")

    def test_format_value(self) -> None:
        self.assertEqual(format_value(evaluate_text("x[1,2]*x[1,1]", 2)), "(1*q^-1)*x[1,1]*x[1,2]")
        self.assertEqual(format_value(Q - Q_INV), "1*q + -1*q^-1")


_index = st.integers(min_value=1, max_value=2)
_word = st.lists(st.tuples(_index, _index), max_size=3)
_coeff = st.dictionaries(st.integers(min_value=-2, max_value=2), st.fractions(min_value=-3, max_value=3, max_denominator=3), max_size=2).map(LaurentPoly)


class RoundTripTests(unittest.TestCase):
    @settings(max_examples=40, deadline=None)
    @given(st.dictionaries(_word.map(tuple), _coeff, max_size=3))
    def test_canonical_text_reads_back(self, terms: dict) -> None:
        element = AlgebraElement(2, terms)
        self.assertEqual(evaluate_text(element.to_text(), 2), element)

    def test_classical_text_reads_back(self) -> None:
        value = evaluate_text("3/2*y[2,1]^3 + y[1,1] - 1", 2, "classical")
        self.assertEqual(evaluate_text(value.to_text(), 2, "classical"), value)


if __name__ == "__main__":
    unittest.main()
