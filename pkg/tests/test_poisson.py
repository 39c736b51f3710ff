from __future__ import annotations

import unittest
from itertools import product

from hypothesis import given, settings, strategies as st

from qmatrices.algebra import AlgebraElement, SizeMismatchError, generator
from qmatrices.coefficients import Q, Q_INV
from qmatrices.poisson import (
    CPoly,
    classical_shadow,
    classical_trace_power,
    involution_residual,
    pbracket,
    pbracket_gen,
    pbracket_leibniz,
    semiclassical_generator_residual,
    shadow_homomorphism_residual,
    trace_shadow_residual,
)


def y(i: int, j: int, n: int = 2) -> CPoly:
    return CPoly.generator(i, j, n)


_exponents = st.tuples(*(st.integers(min_value=0, max_value=2) for _ in range(4)))
cpolys = st.dictionaries(_exponents, st.integers(min_value=-3, max_value=3), max_size=3).map(lambda t: CPoly.from_terms(2, t))


class BracketTests(unittest.TestCase):
    def test_generator_brackets(self) -> None:
        self.assertEqual(pbracket_gen(1, 1, 1, 2, 2), y(1, 1) * y(1, 2))
        self.assertTrue(pbracket_gen(1, 2, 2, 1, 2).is_zero())
        self.assertEqual(pbracket_gen(1, 1, 2, 2, 2), y(1, 2) * y(2, 1) * 2)

    def test_bracket_with_square(self) -> None:
        self.assertEqual(pbracket(y(1, 1), y(1, 2) ** 2), y(1, 1) * y(1, 2) ** 2 * 2)

    def test_constants_are_central(self) -> None:
        self.assertTrue(pbracket(CPoly.constant(5, 2), y(2, 1)).is_zero())

    def test_size_mismatch(self) -> None:
        with self.assertRaises(SizeMismatchError):
            pbracket(y(1, 1, 2), y(1, 1, 3))

    @settings(max_examples=40, deadline=None)
    @given(cpolys, cpolys)
    def test_antisymmetry_and_leibniz_expansion(self, f: CPoly, g: CPoly) -> None:
        self.assertEqual(pbracket(f, g), -pbracket(g, f))
        self.assertEqual(pbracket(f, g), pbracket_leibniz(f, g))

    @settings(max_examples=25, deadline=None)
    @given(cpolys, cpolys, cpolys)
    def test_jacobi(self, f: CPoly, g: CPoly, h: CPoly) -> None:
        total = pbracket(f, pbracket(g, h)) + pbracket(g, pbracket(h, f)) + pbracket(h, pbracket(f, g))
        self.assertTrue(total.is_zero())

    def test_canonical_text(self) -> None:
        self.assertEqual((y(1, 1) * y(1, 2)).to_text(), "1*y[1,1]*y[1,2]")
        self.assertEqual(CPoly.constant(0, 2).to_text(), "0")


class TracePowerTests(unittest.TestCase):
    def test_trace_of_square(self) -> None:
        expected = y(1, 1) ** 2 + y(1, 2) * y(2, 1) * 2 + y(2, 2) ** 2
        self.assertEqual(classical_trace_power(2, 2), expected)

    def test_traces_are_in_involution(self) -> None:
        for k, m in ((1, 2), (2, 3), (1, 4)):
            with self.subTest(k=k, m=m):
                self.assertTrue(involution_residual(2, k, m).is_zero())
        self.assertTrue(involution_residual(3, 2, 3).is_zero())


class ClassicalLimitTests(unittest.TestCase):
    def test_shadow_of_element(self) -> None:
        element = AlgebraElement(2, {((1, 2), (2, 1)): Q + Q_INV})
        self.assertEqual(classical_shadow(element), y(1, 2) * y(2, 1) * 2)

    def test_commutator_first_order_term_is_the_bracket(self) -> None:
        for i, j, k, l in product((1, 2), repeat=4):
            with self.subTest(pair=(i, j, k, l)):
                self.assertTrue(semiclassical_generator_residual(i, j, k, l, 2).is_zero())

    def test_shadow_of_traces(self) -> None:
        for k in (1, 2, 3):
            self.assertTrue(trace_shadow_residual(2, k).is_zero())

    def test_shadow_is_multiplicative(self) -> None:
        x11, x22 = generator(1, 1, 2), generator(2, 2, 2)
        self.assertTrue(shadow_homomorphism_residual(x22, x11).is_zero())
        self.assertTrue(shadow_homomorphism_residual(x11 + x22, x22 * x11).is_zero())


if __name__ == "__main__":
    unittest.main()
