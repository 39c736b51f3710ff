from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path
from typing import Any

from jsonschema import Draft202012Validator

CONTRACTS_DIR = Path(__file__).resolve().parent.parent / "contracts"
REPORT_SCHEMA = CONTRACTS_DIR / "report.schema.json"

MAX_LISTED_ERRORS = 10


class SchemaValidationError(ValueError):
    def __init__(self, schema_name: str, problems: list[str]):
        self.schema_name = schema_name
        self.problems = problems
        lines = [f"{schema_name} rejected the report:"]
        lines.extend(f"- {p}" for p in problems[:MAX_LISTED_ERRORS])
        if len(problems) > MAX_LISTED_ERRORS:
            lines.append(f"- ... {len(problems) - MAX_LISTED_ERRORS} more")
        super().__init__("\n".join(lines))


@lru_cache(maxsize=4)
def _validator(path: Path) -> Draft202012Validator:
    schema = json.loads(path.read_text(encoding="utf-8"))
    Draft202012Validator.check_schema(schema)
    return Draft202012Validator(schema)


def schema_problems(instance: dict[str, Any], schema_path: Path = REPORT_SCHEMA) -> list[str]:
    """`path: message` for every violation, ordered by path."""
    errors = sorted(_validator(schema_path).iter_errors(instance), key=lambda e: [str(p) for p in e.absolute_path])
    return [f"{'/'.join(str(p) for p in e.absolute_path) or '<root>'}: {e.message}" for e in errors]


def validate_report(payload: dict[str, Any], schema_path: Path = REPORT_SCHEMA) -> None:
    problems = schema_problems(payload, schema_path)
    if problems:
        raise SchemaValidationError(schema_path.name, problems)
