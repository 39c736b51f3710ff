from __future__ import annotations

import io
import json
import logging
import unittest
from unittest import mock

from qmatrices.logging_utils import CaseTextFormatter, JsonFormatter, setup_logging, truncate


def _record(**extra: object) -> logging.LogRecord:
    record = logging.LogRecord("runner", logging.WARNING, __file__, 1, "Check %s failed", ("newton",), None)
    for key, value in extra.items():
        setattr(record, key, value)
    return record


class JsonFormatterTests(unittest.TestCase):
    def test_extras_are_included(self) -> None:
        record = _record(check="newton", params={"n": 2, "k": 3}, residual_terms=4)
        payload = json.loads(JsonFormatter().format(record))

        self.assertEqual(payload["level"], "WARNING")
        self.assertEqual(payload["logger"], "runner")
        self.assertEqual(payload["message"], "Check newton failed")
        self.assertEqual(payload["params"], {"n": 2, "k": 3})
        self.assertEqual(payload["residual_terms"], 4)
        self.assertNotIn("millis", payload)

    def test_truncate(self) -> None:
        self.assertEqual(truncate("abc", limit=5), "abc")
        self.assertEqual(truncate("abcdefgh", limit=5), "abcde... (3 more chars)")


class CaseTextFormatterTests(unittest.TestCase):
    def test_case_fields_are_appended(self) -> None:
        line = CaseTextFormatter().format(_record(status="fail", residual_terms=2, millis=7))
        self.assertTrue(line.endswith("Check newton failed [status=fail residual_terms=2 millis=7]"))

    def test_plain_records_are_untouched(self) -> None:
        line = CaseTextFormatter().format(_record())
        self.assertTrue(line.endswith("WARNING runner Check newton failed"))


class SetupLoggingTests(unittest.TestCase):
    def test_json_handler_writes_to_given_stream(self) -> None:
        root = logging.getLogger()
        stream = io.StringIO()
        with mock.patch.object(root, "handlers", []), mock.patch.object(root, "level", logging.WARNING):
            setup_logging("debug", json_output=True, stream=stream)
            self.assertEqual(root.level, logging.DEBUG)
            self.assertIsInstance(root.handlers[0].formatter, JsonFormatter)
            root.handlers[0].handle(_record(check="ch"))
        self.assertEqual(json.loads(stream.getvalue())["check"], "ch")


if __name__ == "__main__":
    unittest.main()
