from __future__ import annotations

import unittest
from itertools import combinations

from qmatrices.algebra import AlgebraElement, alg_commutator, generator, unit, zero
from qmatrices.coefficients import Q
from qmatrices.minors import IndexSet, MinorError, inversions, l_count, laplace_residual, qdet, qminor, sigma, subsets


class CombinatoricsTests(unittest.TestCase):
    def test_inversions(self) -> None:
        self.assertEqual(inversions((3, 2, 1)), 3)
        self.assertEqual(inversions((1, 2, 3)), 0)
        self.assertEqual(inversions((2, 1, 3)), 1)

    def test_l_count(self) -> None:
        self.assertEqual(l_count(3, {1, 2, 5}), 2)
        self.assertEqual(l_count(1, {1, 2}), 0)

    def test_index_set(self) -> None:
        s = IndexSet.of([3, 1, 2])
        self.assertEqual(s.elements, (1, 2, 3))
        self.assertEqual(s.without(2).to_text(), "{1,3}")
        self.assertEqual(len(subsets(4, 2)), 6)


class MinorTests(unittest.TestCase):
    def test_two_by_two_minor(self) -> None:
        expected = AlgebraElement(2, {((1, 1), (2, 2)): 1, ((1, 2), (2, 1)): -Q})
        self.assertEqual(qminor({1, 2}, {1, 2}), expected)
        self.assertEqual(qdet(2), expected)

    def test_off_diagonal_minor_in_size_three(self) -> None:
        expected = AlgebraElement(3, {((1, 2), (2, 3)): 1, ((1, 3), (2, 2)): -Q})
        self.assertEqual(qminor([1, 2], [2, 3], 3), expected)

    def test_single_entry_minor(self) -> None:
        self.assertEqual(qminor((1,), (2,), 2), generator(1, 2, 2))
        self.assertEqual(qdet(1), generator(1, 1, 1))

    def test_minor_argument_errors(self) -> None:
        with self.assertRaises(MinorError):
            qminor((1, 2), (1,), 2)
        with self.assertRaises(MinorError):
            qminor((), (), 2)

    def test_determinant_is_central(self) -> None:
        det = qdet(2)
        for i in (1, 2):
            for j in (1, 2):
                with self.subTest(i=i, j=j):
                    self.assertTrue(alg_commutator(det, generator(i, j, 2)).is_zero())

    def test_sigma_boundaries(self) -> None:
        self.assertEqual(sigma(0, 2), unit(2))
        self.assertEqual(sigma(3, 2), zero(2))
        self.assertEqual(sigma(1, 2), generator(1, 1, 2) + generator(2, 2, 2))
        self.assertEqual(sigma(2, 2), qdet(2))
        with self.assertRaises(MinorError):
            sigma(-1, 2)


class LaplaceTests(unittest.TestCase):
    def _assert_expansions_vanish(self, n: int, size: int) -> None:
        for rows in combinations(range(1, n + 1), size):
            for cols in combinations(range(1, n + 1), size):
                for i in rows:
                    for r in rows:
                        with self.subTest(rows=rows, cols=cols, i=i, r=r):
                            self.assertTrue(laplace_residual(rows, cols, i, r, n).is_zero())

    def test_expansion_size_two(self) -> None:
        self._assert_expansions_vanish(2, 1)
        self._assert_expansions_vanish(2, 2)

    def test_expansion_size_three_pairs(self) -> None:
        self._assert_expansions_vanish(3, 2)

    def test_row_outside_set_is_rejected(self) -> None:
        with self.assertRaises(MinorError):
            laplace_residual((1, 2), (1, 2), 3, 1, 3)


if __name__ == "__main__":
    unittest.main()
