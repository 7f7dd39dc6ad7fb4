"""The nine task scripts shipped with the package."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

TASKS = tuple(f"tarefa{i}" for i in range(1, 10))


def script_path(name: str) -> Path:
    path = Path(str(resources.files(__name__).joinpath(f"{name}.ggs")))
    if not path.is_file():
        raise FileNotFoundError(f"no corpus script named {name!r}")
    return path


def load_source(name: str) -> str:
    return script_path(name).read_text(encoding="utf-8")


def object_counts() -> dict[str, int]:
    return json.loads(resources.files(__name__).joinpath("object_counts.json").read_text(encoding="utf-8"))
