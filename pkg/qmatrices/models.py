from __future__ import annotations

import json
import re
from typing import Any, Literal

from pydantic import BaseModel, Field, field_validator

REPORT_VERSION = "1.0"

CHECK_STATUS = Literal["pass", "fail", "skipped", "error"]
OUTPUT_FORMAT = Literal["text", "json"]

BUILTIN_CHECKS = (
    "relations",
    "pbw",
    "laplace",
    "lemma1",
    "ch",
    "eq4",
    "trace_z",
    "newton",
    "commute",
    "sigma_commute",
    "mixed_commute",
    "t_basis",
    "poisson",
    "semiclassical",
    "shadow",
    "stretch",
)

CHECK_NAME_RE = re.compile(r"[a-z][a-z0-9_]{0,63}")


class RunConfig(BaseModel):
    n: int = Field(default=2, ge=1, le=8)
    max_power: int | None = Field(default=None, ge=1, description="Defaults to n + 2")
    checks: list[str] = Field(default_factory=lambda: ["all"])
    format: OUTPUT_FORMAT = "text"
    seed: int = 0
    budget_ms: int = Field(default=300000, ge=0, description="Per-case wall-clock cap; 0 disables it")
    samples: int = Field(default=200, ge=1, le=100000)
    workers: int = Field(default=1, ge=1, le=64)
    output: str | None = Field(default=None, description="Optional path for the JSON report")

    @field_validator("checks")
    @classmethod
    def _validate_checks(cls, value: list[str]) -> list[str]:
        names: list[str] = []
        for raw in value:
            for part in raw.split(","):
                name = part.strip().lower().replace("-", "_")
                if not name:
                    continue
                if not CHECK_NAME_RE.fullmatch(name):
                    raise ValueError(f"invalid check name: {part!r}")
                if name not in names:
                    names.append(name)
        if not names:
            raise ValueError("at least one check must be selected")
        return names

    @property
    def effective_max_power(self) -> int:
        return self.max_power if self.max_power is not None else self.n + 2

    def report_config(self) -> dict[str, Any]:
        data = self.model_dump(mode="json", exclude={"output", "workers", "format"})
        data["max_power"] = self.effective_max_power
        return data


class VerificationReport(BaseModel):
    name: str
    params: dict[str, Any] = Field(default_factory=dict)
    status: CHECK_STATUS
    residual_terms: int = Field(default=0, ge=0)
    millis: int = Field(default=0, ge=0)
    detail: str | None = None

    def sort_key(self) -> tuple[str, tuple[tuple[str, int, int, str], ...]]:
        # integers order numerically, everything else by its JSON text
        items = []
        for key in sorted(self.params):
            value = self.params[key]
            if isinstance(value, int) and not isinstance(value, bool):
                items.append((key, 0, value, ""))
            else:
                items.append((key, 1, 0, json.dumps(value, sort_keys=True)))
        return (self.name, tuple(items))

    def to_line(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        line = f"[{self.status.upper()}] {self.name}"
        if params:
            line += f" {params}"
        line += f" residual_terms={self.residual_terms} millis={self.millis}"
        if self.detail and self.status != "pass":
            line += f" ({self.detail})"
        return line


class RunReport(BaseModel):
    version: str = REPORT_VERSION
    n: int
    config: dict[str, Any] = Field(default_factory=dict)
    checks: list[VerificationReport] = Field(default_factory=list)

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "skipped": 0, "error": 0}
        for report in self.checks:
            out[report.status] += 1
        return out

    @property
    def failed(self) -> bool:
        counts = self.counts()
        return bool(counts["fail"] or counts["error"])

    def summary_line(self) -> str:
        counts = self.counts()
        verdict = "FAILED" if self.failed else "OK"
        return (
            f"{verdict}: {len(self.checks)} cases, {counts['pass']} passed, {counts['fail']} failed, "
            f"{counts['skipped']} skipped, {counts['error']} errors"
        )

    def to_payload(self) -> dict[str, Any]:
        payload = self.model_dump(mode="json")
        for item in payload["checks"]:
            if item.get("detail") is None:
                item.pop("detail", None)
        return payload
