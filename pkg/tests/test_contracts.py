from __future__ import annotations

import json
import tempfile
import unittest
from pathlib import Path

from qmatrices.models import RunConfig, RunReport, VerificationReport
from qmatrices.report_store import render_json, write_report
from qmatrices.validator import REPORT_SCHEMA, SchemaValidationError, schema_problems, validate_report


def _report() -> RunReport:
    config = RunConfig(n=2, checks=["newton", "ch"], seed=5, samples=10)
    return RunReport(
        n=2,
        config=config.report_config(),
        checks=[
            VerificationReport(name="ch", params={"n": 2, "final_step": True}, status="pass", millis=3),
            VerificationReport(name="newton", params={"n": 2, "k": 3}, status="fail", residual_terms=2, millis=1, detail="(1)*x[1,1]"),
            VerificationReport(name="stretch", params={"n": 4, "target": "newton", "k": 4}, status="skipped", detail="time budget reached"),
        ],
    )


class ContractTests(unittest.TestCase):
    def test_schema_file_is_valid_json(self) -> None:
        schema = json.loads(REPORT_SCHEMA.read_text(encoding="utf-8"))
        self.assertEqual(schema["properties"]["version"]["const"], "1.0")

    def test_report_schema_validation_for_model_dump(self) -> None:
        payload = _report().to_payload()
        validate_report(payload)
        self.assertNotIn("detail", payload["checks"][0])
        self.assertEqual(payload["config"]["max_power"], 4)

    def test_schema_rejects_unknown_status(self) -> None:
        payload = _report().to_payload()
        payload["checks"][0]["status"] = "flaky"
        with self.assertRaises(SchemaValidationError) as ctx:
            validate_report(payload)
        self.assertIn("checks/0/status", str(ctx.exception))

    def test_problems_are_listed_by_path(self) -> None:
        payload = _report().to_payload()
        payload["checks"][2]["millis"] = -1
        payload["checks"][0]["status"] = "flaky"
        problems = schema_problems(payload)
        self.assertEqual(len(problems), 2)
        self.assertTrue(problems[0].startswith("checks/0/status:"))
        self.assertTrue(problems[1].startswith("checks/2/millis:"))
        with self.assertRaises(SchemaValidationError) as ctx:
            validate_report(payload)
        self.assertEqual(ctx.exception.problems, problems)
        self.assertEqual(ctx.exception.schema_name, "report.schema.json")

    def test_schema_rejects_extra_fields(self) -> None:
        payload = _report().to_payload()
        payload["host"] = "ci"
        with self.assertRaises(SchemaValidationError):
            validate_report(payload)

    def test_schema_rejects_nested_params(self) -> None:
        payload = _report().to_payload()
        payload["checks"][1]["params"]["k"] = [3]
        with self.assertRaises(SchemaValidationError):
            validate_report(payload)

    def test_write_report_is_atomic_and_round_trips(self) -> None:
        payload = _report().to_payload()
        with tempfile.TemporaryDirectory() as td:
            target = write_report(Path(td) / "out" / "report.json", payload)
            text = target.read_text(encoding="utf-8")
            self.assertEqual(text, render_json(payload))
            self.assertTrue(text.endswith("}\n"))
            self.assertEqual(sorted(p.name for p in target.parent.iterdir()), ["report.json"])
            validate_report(json.loads(text))


if __name__ == "__main__":
    unittest.main()
