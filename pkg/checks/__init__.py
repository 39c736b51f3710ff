from __future__ import annotations

import os

from checks.registry import DEFAULT_CHECK_ENTRYPOINT_GROUP, get_check, list_checks, load_check_plugins, resolve_checks


_BOOTSTRAPPED = False

def ensure_checks_registered(entrypoint_group: str | None = None) -> None:
    global _BOOTSTRAPPED
    if _BOOTSTRAPPED:
        return
    # Side-effect imports register checks in the global registry.
    from checks import classical as _classical  # noqa: F401
    from checks import commute as _commute  # noqa: F401
    from checks import laplace as _laplace  # noqa: F401
    from checks import newton as _newton  # noqa: F401
    from checks import relations as _relations  # noqa: F401
    from checks import stretch as _stretch  # noqa: F401
    from checks import zsequence as _zsequence  # noqa: F401
    if entrypoint_group is None:
        entrypoint_group = os.getenv("QMAT_CHECK_ENTRYPOINT_GROUP", DEFAULT_CHECK_ENTRYPOINT_GROUP)
    entrypoint_group = entrypoint_group.strip()
    if entrypoint_group:
        load_check_plugins(entrypoint_group=entrypoint_group)
    _BOOTSTRAPPED = True


__all__ = ["ensure_checks_registered", "get_check", "list_checks", "resolve_checks"]
