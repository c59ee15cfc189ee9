# -*- coding: utf-8 -*-
"""
services/io_tools.py

Запись артефактов:
- write_json: JSON with sorted keys; floats keep their shortest round-trip repr
- write_rows: CSV with floats at 17 significant digits
- RunManifest: everything needed to re-run a command
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from config import settings

log = logging.getLogger("services.io_tools")


def _plain(value: Any) -> Any:
    """numpy scalars/arrays, tuples and Paths → JSON-native values."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value  # Enum
    return value


def write_json(path: str | Path, payload: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(_plain(payload), indent=2, sort_keys=True, ensure_ascii=False, allow_nan=True)
    path.write_text(text + "\n", encoding="utf-8")
    log.debug("wrote %s", path)
    return path


def read_json(path: str | Path) -> Any:
    with Path(path).open("r", encoding="utf-8") as f:
        return json.load(f)


def fmt(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    return str(value)


def write_rows(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(list(header))
        for row in rows:
            w.writerow([fmt(v) for v in row])
    log.debug("wrote %s", path)
    return path


@dataclass(slots=True)
class RunManifest:
    command: str
    params: dict[str, Any]
    seeds: dict[str, Any] = field(default_factory=dict)
    calibration: str | None = None
    device: str | None = None
    outputs: list[str] = field(default_factory=list)
    tool_version: str = field(default_factory=lambda: settings.TOOL_VERSION)
    created_at: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))

    @classmethod
    def from_args(cls, args: Any, seeds: dict[str, Any] | None = None) -> "RunManifest":
        """Manifest for a parsed CLI namespace; every flag goes into params."""
        params = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "handler")}
        return cls(
            command=args.command,
            params=params,
            seeds=dict(seeds or {}),
            calibration=getattr(args, "calibration", None),
            device=getattr(args, "device", None),
        )

    def add_output(self, path: str | Path) -> Path:
        self.outputs.append(str(path))
        return Path(path)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "params": _plain(self.params),
            "seeds": _plain(self.seeds),
            "calibration": self.calibration,
            "device": self.device,
            "outputs": sorted(self.outputs),
            "tool_version": self.tool_version,
            "created_at": self.created_at,
        }

    def write(self, out_dir: str | Path) -> Path:
        return write_json(Path(out_dir) / "manifest.json", self.to_dict())
