from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any


def render_json(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2, sort_keys=False) + "\n"


def atomic_write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with tempfile.NamedTemporaryFile("w", delete=False, dir=str(path.parent), encoding="utf-8") as tf:
        tf.write(text)
        tmp = tf.name
    os.replace(tmp, path)


def write_report(path: Path | str, payload: dict[str, Any]) -> Path:
    target = Path(path).expanduser().resolve()
    atomic_write_text(target, render_json(payload))
    return target
