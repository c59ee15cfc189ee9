# -*- coding: utf-8 -*-
from __future__ import annotations

import json
import logging
from pathlib import Path

from pydantic import BaseModel, ValidationError, model_validator

from calibration.tables import CalibrationError

log = logging.getLogger(__name__)


class DeviceConstraints(BaseModel):
    """Programmable limits of one annealer (times in µs)."""

    device_id: str = "advantage_system6_2"
    pegasus_size: int = 16
    min_anneal_us: float = 0.5
    max_anneal_us: float = 2000.0
    anneal_time_resolution_us: float = 0.01
    max_schedule_points: int = 12
    max_hgain_points: int = 20
    h_gain_min: float = -4.0
    h_gain_max: float = 4.0
    h_range: tuple[float, float] = (-4.0, 4.0)
    j_range: tuple[float, float] = (-1.0, 1.0)
    coupler_precision: float = 0.0005

    @model_validator(mode="after")
    def _check(self) -> "DeviceConstraints":
        if not 0 < self.min_anneal_us < self.max_anneal_us:
            raise ValueError("need 0 < min_anneal_us < max_anneal_us")
        if self.anneal_time_resolution_us <= 0:
            raise ValueError("anneal_time_resolution_us must be positive")
        if not self.h_gain_min < 0 < self.h_gain_max:
            raise ValueError("h-gain bounds must straddle zero")
        if self.j_range[0] >= self.j_range[1] or self.h_range[0] >= self.h_range[1]:
            raise ValueError("h/J ranges must be increasing pairs")
        if self.coupler_precision <= 0:
            raise ValueError("coupler_precision must be positive")
        if self.max_schedule_points < 2 or self.max_hgain_points < 2:
            raise ValueError("schedules need at least two points")
        return self

    @property
    def max_slope(self) -> float:
        """Fastest allowed |ds/dt| in 1/µs: a full 0→1 sweep in min_anneal_us."""
        return 1.0 / self.min_anneal_us


def load_device_profile(source: str | Path) -> DeviceConstraints:
    """Bundled profile name ('advantage_system4_1', 'advantage_system6_2') or a JSON path."""
    from config import settings

    path = Path(source)
    if path.suffix.lower() != ".json":
        path = settings.calibration_path(str(source))
    if not path.exists():
        raise CalibrationError(f"device profile not found: {source}")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            profile = DeviceConstraints.model_validate(json.load(fh))
    except (ValidationError, json.JSONDecodeError) as exc:
        raise CalibrationError(f"invalid device profile {path.name}: {exc}") from exc
    log.debug("device profile %s loaded from %s", profile.device_id, path)
    return profile
