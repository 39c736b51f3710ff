from __future__ import annotations

import unittest
from unittest import mock

from qmatrices import budget
from qmatrices.budget import BudgetExceeded, TimeBudget, charge, time_budget


class TimeBudgetTests(unittest.TestCase):
    def test_budget_blocks_when_limit_reached(self) -> None:
        with mock.patch("qmatrices.budget.time.monotonic", side_effect=[100.0, 100.5, 101.5]):
            tracker = TimeBudget(limit_ms=1000)

            snapshot = tracker.check_budget()
            self.assertEqual(snapshot.elapsed_ms, 500)

            with self.assertRaises(BudgetExceeded):
                tracker.check_budget()

    def test_zero_limit_disables_budget(self) -> None:
        tracker = TimeBudget(limit_ms=0)
        self.assertFalse(tracker.enabled)
        with mock.patch("qmatrices.budget.time.monotonic", return_value=1e9):
            tracker.check_budget()

    def test_charge_outside_budget_is_noop(self) -> None:
        charge()

    def test_charge_raises_inside_exhausted_budget(self) -> None:
        with time_budget(5) as active:
            with mock.patch.object(active, "elapsed_ms", return_value=5):
                with self.assertRaises(BudgetExceeded):
                    charge()
        charge()

    def test_nested_budgets_restore_outer(self) -> None:
        with time_budget(1000) as outer:
            with time_budget(0):
                self.assertFalse(budget._ACTIVE.get().enabled)
            self.assertIs(budget._ACTIVE.get(), outer)
        self.assertIsNone(budget._ACTIVE.get())


if __name__ == "__main__":
    unittest.main()
