# -*- coding: utf-8 -*-
from __future__ import annotations

import os
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseModel, Field

# Загружаем .env до чтения переменных
load_dotenv()

_PACKAGE_ROOT = Path(__file__).resolve().parent

# ---------- Вспомогательные функции ----------

def _coalesce_env(*names: str, default: str = "") -> str:
    """Return the first non-empty value among the given environment variables."""
    for n in names:
        v = os.getenv(n, "")
        if isinstance(v, str) and v.strip():
            return v.strip()
    return default


def _env_flag(name: str, default: str = "0") -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes")


def _resolve_dir(p: str, fallback: Path) -> Path:
    """
    Expand ~ and environment variables in a directory setting.
    Empty value → bundled fallback.
    """
    p = (p or "").strip()
    if not p:
        return fallback
    return Path(os.path.expandvars(os.path.expanduser(p)))


def _default_threads() -> int:
    return max(1, os.cpu_count() or 1)


# ---------- Модель конфигурации ----------

class Settings(BaseModel):
    """Toolkit-wide configuration derived from environment variables."""

    # Общие
    APP_ENV: str = os.getenv("APP_ENV", "dev")
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    TOOL_VERSION: str = os.getenv("TOOL_VERSION", "0.3.0")

    # Калибровки и профили устройств
    CALIBRATION_DIR: Path = Field(
        default_factory=lambda: _resolve_dir(
            _coalesce_env("HEXANNEAL_CALIBRATION_DIR", "CALIBRATION_DIR"),
            _PACKAGE_ROOT / "calibration" / "data",
        )
    )
    DEVICE_PROFILE: str = os.getenv("DEVICE_PROFILE", "advantage_system6_2")

    # Пределы симуляторов (кубиты)
    TROTTER_MAX_QUBITS: int = int(os.getenv("TROTTER_MAX_QUBITS", 27))
    ANNEAL_MAX_QUBITS: int = int(os.getenv("ANNEAL_MAX_QUBITS", 14))

    # Численные настройки
    SOLVER_TOLERANCE: float = float(os.getenv("SOLVER_TOLERANCE", 1e-10))
    MAX_SEGMENT_NS: float = float(os.getenv("MAX_SEGMENT_NS", 50.0))
    MAX_SLICES: int = int(os.getenv("MAX_SLICES", 200000))
    EXPECTATION_CHUNK: int = int(os.getenv("EXPECTATION_CHUNK", 2 ** 18))

    # Пулы
    WORKER_THREADS: int = int(os.getenv("WORKER_THREADS", 0)) or _default_threads()

    # Тесты
    RUN_HEAVY_TESTS: bool = _env_flag("RUN_HEAVY_TESTS")

    # ---------- Утилиты ----------
    def calibration_path(self, name: str) -> Path:
        """Resolve a bundled calibration/profile name (without extension) or a path."""
        p = Path(name)
        if p.suffix and p.exists():
            return p
        for suffix in (".csv", ".json"):
            candidate = self.CALIBRATION_DIR / f"{name}{suffix}"
            if candidate.exists():
                return candidate
        bundled = _PACKAGE_ROOT / "calibration" / "data"
        for suffix in (".csv", ".json"):
            candidate = bundled / f"{name}{suffix}"
            if candidate.exists():
                return candidate
        return p

    def threads(self, requested: int | None = None) -> int:
        """Worker pool size: explicit request wins, otherwise the configured default."""
        if requested is not None and requested > 0:
            return int(requested)
        return self.WORKER_THREADS


settings = Settings()
