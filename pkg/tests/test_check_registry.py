from __future__ import annotations

import unittest
from unittest import mock

import checks
from checks import registry
from checks.base import BaseCheck, CaseOutcome, CheckContext, Params


class _DummyExternalCheck(BaseCheck):
    NAME = "dummy_external"

    def cases(self, ctx: CheckContext) -> list[Params]:
        return [{"n": ctx.n}]

    def run_case(self, params: Params, ctx: CheckContext) -> CaseOutcome:
        return CaseOutcome(residual_terms=0)


class _OptInCheck(_DummyExternalCheck):
    NAME = "opt_in"
    GATING = False


class _FakeEntryPoint:
    def __init__(self, *, group: str, name: str, value: str, loaded_obj: object):
        self.group = group
        self.name = name
        self.value = value
        self._loaded_obj = loaded_obj

    def load(self) -> object:
        return self._loaded_obj


class _FakeEntryPoints(list):
    def select(self, *, group: str) -> list[_FakeEntryPoint]:
        return [ep for ep in self if ep.group == group]


class CheckRegistryTests(unittest.TestCase):
    def test_load_check_plugins_registers_entry_point_check(self) -> None:
        fake_eps = _FakeEntryPoints(
            [
                _FakeEntryPoint(
                    group=registry.DEFAULT_CHECK_ENTRYPOINT_GROUP,
                    name="dummy",
                    value="acme.checks:DummyCheck",
                    loaded_obj=_DummyExternalCheck,
                )
            ]
        )

        with mock.patch.dict(registry._CHECKS, {}, clear=True):
            with mock.patch("checks.registry.metadata.entry_points", return_value=fake_eps):
                loaded = registry.load_check_plugins()
                check = registry.get_check("dummy_external")

                self.assertEqual(loaded, ["dummy_external"])
                self.assertIsInstance(check, _DummyExternalCheck)

    def test_load_check_plugins_skips_invalid_plugin(self) -> None:
        fake_eps = _FakeEntryPoints(
            [
                _FakeEntryPoint(
                    group=registry.DEFAULT_CHECK_ENTRYPOINT_GROUP,
                    name="invalid",
                    value="acme.checks:invalid",
                    loaded_obj=object(),
                )
            ]
        )

        with mock.patch.dict(registry._CHECKS, {}, clear=True):
            with mock.patch("checks.registry.metadata.entry_points", return_value=fake_eps):
                loaded = registry.load_check_plugins()
                self.assertEqual(loaded, [])
                self.assertIsNone(registry.get_check("dummy_external"))

    def test_plugins_with_unselectable_names_are_skipped(self) -> None:
        bad = _DummyExternalCheck()
        bad.NAME = "Bad-Name"
        reserved = _DummyExternalCheck()
        reserved.NAME = "all"
        fake_eps = _FakeEntryPoints(
            [
                _FakeEntryPoint(group=registry.DEFAULT_CHECK_ENTRYPOINT_GROUP, name="bad", value="acme:bad", loaded_obj=bad),
                _FakeEntryPoint(group=registry.DEFAULT_CHECK_ENTRYPOINT_GROUP, name="all", value="acme:all", loaded_obj=lambda: reserved),
                _FakeEntryPoint(group=registry.DEFAULT_CHECK_ENTRYPOINT_GROUP, name="opt", value="acme:opt", loaded_obj=_OptInCheck),
                _FakeEntryPoint(group="elsewhere", name="other", value="acme:other", loaded_obj=_DummyExternalCheck),
            ]
        )

        with mock.patch.dict(registry._CHECKS, {}, clear=True):
            with mock.patch("checks.registry.metadata.entry_points", return_value=fake_eps):
                with self.assertLogs("checks.registry", level="ERROR") as logs:
                    loaded = registry.load_check_plugins()
            self.assertEqual(loaded, ["opt_in"])
            self.assertEqual(sorted(registry.list_checks()), ["opt_in"])
        self.assertEqual(len(logs.records), 2)

    def test_register_rejects_reserved_name(self) -> None:
        check = _DummyExternalCheck()
        check.NAME = "all"
        with mock.patch.dict(registry._CHECKS, {}, clear=True):
            with self.assertRaises(registry.InvalidCheckError):
                registry.register_check(check)
            self.assertEqual(registry.list_checks(), {})

    def test_replacing_a_check_is_logged(self) -> None:
        class _Replacement(_DummyExternalCheck):
            pass

        with mock.patch.dict(registry._CHECKS, {}, clear=True):
            registry.register_check(_DummyExternalCheck())
            with self.assertLogs("checks.registry", level="WARNING") as logs:
                registry.register_check(_Replacement())
            self.assertIsInstance(registry.get_check("dummy_external"), _Replacement)
        self.assertIn("_Replacement", logs.output[0])

    def test_ensure_checks_registered_bootstraps_once(self) -> None:
        with mock.patch("checks.load_check_plugins") as load_plugins:
            with mock.patch("checks._BOOTSTRAPPED", False):
                checks.ensure_checks_registered("qmatrices.checks")
                checks.ensure_checks_registered("qmatrices.checks")

        self.assertEqual(load_plugins.call_count, 1)

    def test_resolve_all_skips_non_gating_checks(self) -> None:
        with mock.patch.dict(registry._CHECKS, {}, clear=True):
            registry.register_check(_DummyExternalCheck())
            registry.register_check(_OptInCheck())

            self.assertEqual([c.NAME for c in registry.resolve_checks(["all"])], ["dummy_external"])
            self.assertEqual(
                [c.NAME for c in registry.resolve_checks(["opt_in", "all"])],
                ["dummy_external", "opt_in"],
            )

    def test_resolve_unknown_check(self) -> None:
        with mock.patch.dict(registry._CHECKS, {}, clear=True):
            registry.register_check(_DummyExternalCheck())
            with self.assertRaises(registry.UnknownCheckError) as ctx:
                registry.resolve_checks(["nope"])
        self.assertIn("dummy_external", str(ctx.exception))


if __name__ == "__main__":
    unittest.main()
