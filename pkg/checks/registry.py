"""Name -> check lookup shared by the runner, `doctor` and plugins.

Built-in families register themselves on import (see `checks.ensure_checks_registered`);
external packages add more through the `qmatrices.checks` entry-point group.
"""

from __future__ import annotations

import logging
from importlib import metadata
from typing import Any

from checks.base import BaseCheck
from qmatrices.models import CHECK_NAME_RE

_CHECKS: dict[str, BaseCheck] = {}
DEFAULT_CHECK_ENTRYPOINT_GROUP = "qmatrices.checks"
RESERVED_NAMES = frozenset({"all"})
log = logging.getLogger("checks.registry")


class UnknownCheckError(ValueError):
    pass


class InvalidCheckError(ValueError):
    pass


def register_check(check: BaseCheck) -> None:
    """Add or replace a check; the name must be selectable from `--checks`."""
    name = check.NAME
    if not CHECK_NAME_RE.fullmatch(name) or name in RESERVED_NAMES:
        raise InvalidCheckError(f"check name {name!r} cannot be selected with --checks")
    previous = _CHECKS.get(name)
    if previous is not None and type(previous) is not type(check):
        log.warning("Check '%s' was replaced: %s -> %s", name, type(previous).__name__, type(check).__name__)
    _CHECKS[name] = check


def get_check(name: str) -> BaseCheck | None:
    return _CHECKS.get(name)


def list_checks() -> dict[str, BaseCheck]:
    return dict(_CHECKS)


def resolve_checks(names: list[str]) -> list[BaseCheck]:
    """Expand `all` to every gating check; the result is sorted by name so reports are stable."""
    selected: dict[str, BaseCheck] = {}
    for name in names:
        if name == "all":
            selected.update((c.NAME, c) for c in _CHECKS.values() if c.GATING)
            continue
        check = _CHECKS.get(name)
        if check is None:
            known = ", ".join(sorted(_CHECKS)) or "<none>"
            raise UnknownCheckError(f"unknown check '{name}' (known: {known}, all)")
        selected[name] = check
    return [selected[name] for name in sorted(selected)]


def _plugin_check(loaded: Any) -> BaseCheck:
    # class, instance or zero-argument factory
    if isinstance(loaded, BaseCheck):
        return loaded
    if isinstance(loaded, type) and issubclass(loaded, BaseCheck):
        return loaded()
    if callable(loaded):
        candidate = loaded()
        if isinstance(candidate, BaseCheck):
            return candidate
    raise TypeError(f"entry point does not provide a BaseCheck: {type(loaded)!r}")


def load_check_plugins(entrypoint_group: str = DEFAULT_CHECK_ENTRYPOINT_GROUP) -> list[str]:
    """Register every check advertised under the group; broken plugins are logged and skipped."""
    loaded: list[str] = []
    for ep in metadata.entry_points().select(group=entrypoint_group):
        try:
            check = _plugin_check(ep.load())
            register_check(check)
        except Exception:
            log.exception("Skipping check plugin '%s' (%s)", ep.name, ep.value)
            continue
        loaded.append(check.NAME)
        log.info("Loaded check plugin '%s' from entry point '%s'", check.NAME, ep.name, extra={"check": check.NAME})
    return loaded
