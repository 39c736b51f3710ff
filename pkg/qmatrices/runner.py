"""Batch verification: expand the selected checks into cases, run them, collect reports."""

from __future__ import annotations

import asyncio
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any

from checks import ensure_checks_registered, get_check, resolve_checks
from checks.base import CheckContext
from checks.registry import UnknownCheckError
from qmatrices.budget import BudgetExceeded, time_budget
from qmatrices.config import Settings
from qmatrices.models import RunConfig, RunReport, VerificationReport

log = logging.getLogger("runner")

Task = tuple[str, dict[str, Any]]


def execute_case(name: str, params: dict[str, Any], ctx: CheckContext, entrypoint_group: str | None = None) -> VerificationReport:
    """Run one case under its check's time budget; never raises for check failures."""
    ensure_checks_registered(entrypoint_group)
    check = get_check(name)
    if check is None:
        raise UnknownCheckError(f"unknown check '{name}'")

    started = time.monotonic()
    residual_terms = 0
    detail: str | None = None
    try:
        with time_budget(check.budget_ms(ctx)):
            outcome = check.run_case(params, ctx)
    except BudgetExceeded as e:
        status = "skipped"
        detail = str(e)
    except Exception as e:
        log.exception("Check %s %s raised", name, params, extra={"check": name, "params": params})
        status = "error"
        detail = f"{type(e).__name__}: {e}"
    else:
        residual_terms = outcome.residual_terms
        status = "pass" if outcome.passed else "fail"
        detail = outcome.detail or None
    millis = int((time.monotonic() - started) * 1000)

    extra = {"check": name, "params": params, "status": status, "residual_terms": residual_terms, "millis": millis, "n": params.get("n")}
    if status == "fail":
        log.warning("Check %s %s failed: %s", name, params, detail or "", extra=extra)
    elif status == "skipped":
        log.warning("Check %s %s skipped: %s", name, params, detail, extra=extra)
    else:
        log.info("Check %s %s %s in %sms", name, params, status, millis, extra=extra)

    return VerificationReport(name=name, params=params, status=status, residual_terms=residual_terms, millis=millis, detail=detail)


def plan_cases(config: RunConfig, ctx: CheckContext) -> list[Task]:
    tasks: list[Task] = []
    for check in resolve_checks(config.checks):
        tasks.extend((check.NAME, params) for params in check.cases(ctx))
    return tasks


async def _run_pool(tasks: list[Task], ctx: CheckContext, workers: int, entrypoint_group: str | None) -> list[VerificationReport]:
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [loop.run_in_executor(pool, execute_case, name, params, ctx, entrypoint_group) for name, params in tasks]
        return list(await asyncio.gather(*futures))


def run_verify(
    config: RunConfig,
    settings: Settings | None = None,
    *,
    entrypoint_group: str | None = None,
) -> tuple[RunReport, int]:
    """Run every selected case; exit code 1 iff a case failed or errored."""
    settings = settings or Settings.load()
    group = entrypoint_group if entrypoint_group is not None else settings.check_entrypoint_group
    ensure_checks_registered(group)

    ctx = CheckContext.from_config(config, stretch_budget_ms=settings.stretch_budget_ms)
    tasks = plan_cases(config, ctx)
    log.info("Running %s cases across %s check(s) with %s worker(s)", len(tasks), len({t[0] for t in tasks}), config.workers, extra={"n": config.n})

    if config.workers > 1 and len(tasks) > 1:
        reports = asyncio.run(_run_pool(tasks, ctx, config.workers, group))
    else:
        reports = [execute_case(name, params, ctx, group) for name, params in tasks]

    report = RunReport(n=config.n, config=config.report_config(), checks=sorted(reports, key=VerificationReport.sort_key))
    log.info(report.summary_line(), extra={"n": config.n})
    return report, 1 if report.failed else 0
