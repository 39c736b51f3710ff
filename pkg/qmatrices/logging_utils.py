import json
import logging
import sys
from datetime import datetime, timezone
from typing import TextIO

# Structured fields the runner and checks attach via `extra=`.
CASE_FIELDS = ("check", "params", "status", "residual_terms", "millis", "n")


def case_fields(record: logging.LogRecord) -> dict[str, object]:
    return {key: getattr(record, key) for key in CASE_FIELDS if getattr(record, key, None) is not None}


class JsonFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        payload: dict[str, object] = {
            "ts": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            **case_fields(record),
        }
        if record.exc_info:
            payload["exc_info"] = self.formatException(record.exc_info)
        return json.dumps(payload, ensure_ascii=False, default=str)


class CaseTextFormatter(logging.Formatter):
    """Plain text; appends `status=... residual_terms=... millis=...` when a record carries case fields."""

    def __init__(self) -> None:
        super().__init__("%(asctime)s %(levelname)s %(name)s %(message)s")

    def format(self, record: logging.LogRecord) -> str:
        line = super().format(record)
        fields = case_fields(record)
        tail = " ".join(f"{key}={fields[key]}" for key in ("status", "residual_terms", "millis") if key in fields)
        return f"{line} [{tail}]" if tail else line


def setup_logging(level: str = "INFO", *, json_output: bool = False, stream: TextIO | None = None) -> None:
    root = logging.getLogger()
    if root.handlers:
        return

    # stdout carries results only
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(JsonFormatter() if json_output else CaseTextFormatter())
    root.setLevel(getattr(logging, level.upper(), logging.INFO))
    root.addHandler(handler)


def truncate(text: str, limit: int = 240) -> str:
    if len(text) <= limit:
        return text
    return text[:limit] + f"... ({len(text) - limit} more chars)"
