# -*- coding: utf-8 -*-
from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from calibration import CalibrationTable, DeviceConstraints
from models import ScheduleKind, SSelection, SweepMethod
from schedule.builders import (
    AnnealSchedule,
    HGainSchedule,
    build_hgain_schedules,
    build_reverse_schedule,
    validate_hgain,
    validate_schedule,
)
from schedule.derive import DerivedParams, ScheduleError, derive_params

log = logging.getLogger(__name__)

# Fixed-anneal-time sweeps (µs)
FIXED_RAMP_US = 0.5
FIXED_HGAIN_HOLD_US = 1.0
FIXED_HGAIN_RELEASE_US = 0.01


@dataclass(slots=True)
class SweepEntry:
    s: float
    schedule: AnnealSchedule | None
    theta_h: float | None = None
    params: DerivedParams | None = None
    hgain: HGainSchedule | None = None
    pause_us: float = 0.0
    issues: list[str] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.schedule is not None and not self.issues

    def to_dict(self) -> dict[str, Any]:
        return {
            "theta_h": self.theta_h,
            "s": self.s,
            "pause_us": self.pause_us,
            "feasible": self.feasible,
            "issues": list(self.issues),
            "params": self.params.to_dict() if self.params else None,
            "schedule": self.schedule.to_dict() if self.schedule else None,
            "hgain": self.hgain.to_dict() if self.hgain else None,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SweepEntry":
        return cls(
            s=float(data["s"]),
            theta_h=data.get("theta_h"),
            pause_us=float(data.get("pause_us", 0.0)),
            issues=list(data.get("issues", [])),
            params=DerivedParams.from_dict(data["params"]) if data.get("params") else None,
            schedule=AnnealSchedule.from_dict(data["schedule"]) if data.get("schedule") else None,
            hgain=HGainSchedule.from_dict(data["hgain"]) if data.get("hgain") else None,
        )


@dataclass(slots=True)
class SweepPlan:
    method: SweepMethod
    entries: list[SweepEntry]
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.method = SweepMethod(self.method)
        thetas = [e.theta_h for e in self.entries if e.theta_h is not None]
        if any(b <= a for a, b in zip(thetas, thetas[1:])):
            raise ScheduleError("sweep angles must be strictly increasing")

    def feasible_entries(self) -> list[SweepEntry]:
        return [e for e in self.entries if e.feasible]

    def to_dict(self) -> dict[str, Any]:
        return {"method": self.method.value, "meta": dict(self.meta), "entries": [e.to_dict() for e in self.entries]}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SweepPlan":
        return cls(
            method=SweepMethod(data["method"]),
            entries=[SweepEntry.from_dict(e) for e in data["entries"]],
            meta=dict(data.get("meta", {})),
        )

    def write_json(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")
        return path

    def write_csv(self, path: str | Path) -> Path:
        """One row per entry: theta_h,s,s_star,pause_ns,total_us,feasible,issues."""
        path = Path(path)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["theta_h", "s", "s_star", "pause_ns", "total_us", "feasible", "issues"])
            for e in self.entries:
                writer.writerow([
                    "" if e.theta_h is None else format(e.theta_h, ".17g"),
                    format(e.s, ".17g"),
                    "" if e.params is None else format(e.params.s_star, ".17g"),
                    "" if e.params is None else format(e.params.pause_ns, ".17g"),
                    "" if e.schedule is None else format(e.schedule.duration_us, ".17g"),
                    int(e.feasible),
                    ";".join(e.issues),
                ])
        return path


def sweep_angles(n_angles: int) -> list[float]:
    """θ_k = k·(π/2)/n for k = 1..n."""
    return [k * (math.pi / 2) / n_angles for k in range(1, n_angles + 1)]


def sweep_entry(
    theta: float,
    n_steps: int,
    j_qa: float,
    method: SweepMethod,
    cal: CalibrationTable,
    dc: DeviceConstraints,
    s_selection: SSelection | str,
    ramp_down_ns: float,
) -> SweepEntry:
    """One angle of a sweep; depends on nothing but its arguments."""
    params = derive_params(theta, n_steps, j_qa, cal, dc, s_selection=s_selection)
    entry = SweepEntry(s=params.s_star, schedule=None, theta_h=theta, params=params,
                       pause_us=params.pause_us, issues=params.flags.issues())
    if "a_branch_degenerate" in entry.issues:
        entry.issues.remove("a_branch_degenerate")
    if entry.issues:
        return entry
    try:
        if method is SweepMethod.REVERSE:
            entry.schedule = build_reverse_schedule(params, dc)
        else:
            entry.schedule, entry.hgain = build_hgain_schedules(params, dc, ramp_down_ns)
    except ScheduleError as exc:
        entry.issues.append(str(exc))
    return entry


def check_sweep_args(
    n_angles: int,
    method: SweepMethod | str,
    cal: CalibrationTable | None,
    dc: DeviceConstraints | None,
) -> SweepMethod:
    if n_angles < 1:
        raise ScheduleError(f"n_angles must be >= 1, got {n_angles}")
    if cal is None or dc is None:
        raise ScheduleError("plan_sweep needs a calibration table and device constraints")
    return SweepMethod(method)


def collect_sweep(
    entries: list[SweepEntry],
    method: SweepMethod,
    n_steps: int,
    j_qa: float,
    cal: CalibrationTable,
    dc: DeviceConstraints,
    s_selection: SSelection | str,
) -> SweepPlan:
    """Wrap per-angle entries (already in θ order) into a plan."""
    plan = SweepPlan(
        method=method,
        entries=entries,
        meta={
            "kind": "angles",
            "n_steps": n_steps,
            "j_qa": j_qa,
            "n_angles": len(entries),
            "calibration_id": cal.device_id,
            "device_id": dc.device_id,
            "s_selection": SSelection(s_selection).value,
        },
    )
    bad = len(entries) - len(plan.feasible_entries())
    if bad:
        log.warning("sweep N=%s J=%s: %s of %s angles infeasible", n_steps, j_qa, bad, len(entries))
    log.info("sweep planned: %s entries (%s)", len(entries), method.value)
    return plan


def plan_sweep(
    n_steps: int,
    j_qa: float,
    n_angles: int = 100,
    method: SweepMethod | str = SweepMethod.REVERSE,
    cal: CalibrationTable | None = None,
    dc: DeviceConstraints | None = None,
    *,
    s_selection: SSelection | str = SSelection.GRID,
    ramp_down_ns: float = 30.0,
) -> SweepPlan:
    """Linearly spaced θ_h in (0, π/2]; infeasible angles stay in the plan with their issues."""
    method = check_sweep_args(n_angles, method, cal, dc)
    entries = [
        sweep_entry(theta, n_steps, j_qa, method, cal, dc, s_selection, ramp_down_ns)
        for theta in sweep_angles(n_angles)
    ]
    return collect_sweep(entries, method, n_steps, j_qa, cal, dc, s_selection)


def s_grid(s_step: float) -> list[float]:
    n = int(round(1.0 / s_step))
    if n < 1 or abs(n * s_step - 1.0) > 1e-9:
        raise ScheduleError(f"s_step must divide 1 evenly, got {s_step}")
    return [round(k / n, 12) for k in range(n + 1)]


def plan_fixed_time_sweep(
    anneal_time_us: float,
    j_qa: float,
    method: SweepMethod | str,
    dc: DeviceConstraints,
    s_step: float = 0.01,
) -> SweepPlan:
    """
    Fixed total anneal time, s swept over [0, 1].

    reverse: 0.5 µs ramps each way, pause AT−1 µs.
    h-gain: forward 0.5 µs ramp, h-gain held 1 µs then released over 10 ns,
    effective pause AT−1.51 µs.
    """
    method = SweepMethod(method)
    budget = 2 * FIXED_RAMP_US if method is SweepMethod.REVERSE else (
        FIXED_HGAIN_HOLD_US + FIXED_HGAIN_RELEASE_US + FIXED_RAMP_US
    )
    if anneal_time_us <= budget:
        raise ScheduleError(f"anneal time {anneal_time_us} µs leaves no pause after the {budget} µs ramp budget")
    at = float(anneal_time_us)
    t_back = round(at - FIXED_RAMP_US, 10)

    entries: list[SweepEntry] = []
    for s in s_grid(s_step):
        issues: list[str] = []
        hgain = None
        try:
            if method is SweepMethod.REVERSE:
                schedule = AnnealSchedule(points=((0.0, 1.0), (FIXED_RAMP_US, s), (t_back, s), (at, 1.0)),
                                          kind=ScheduleKind.REVERSE)
                validate_schedule(schedule, dc)
            else:
                schedule = AnnealSchedule(points=((0.0, 0.0), (FIXED_RAMP_US, s), (t_back, s), (at, 1.0)),
                                          kind=ScheduleKind.FORWARD)
                release = FIXED_HGAIN_HOLD_US + FIXED_HGAIN_RELEASE_US
                hgain = HGainSchedule(points=((0.0, dc.h_gain_min), (FIXED_HGAIN_HOLD_US, dc.h_gain_min),
                                             (release, 0.0), (at, 0.0)))
                validate_schedule(schedule, dc)
                validate_hgain(hgain, dc, schedule)
        except ScheduleError as exc:
            schedule, hgain = None, None
            issues.append(str(exc))
        entries.append(SweepEntry(s=s, schedule=schedule, hgain=hgain, pause_us=round(at - budget, 10), issues=issues))

    return SweepPlan(
        method=method,
        entries=entries,
        meta={"kind": "fixed_time", "anneal_time_us": at, "j_qa": j_qa, "s_step": s_step, "device_id": dc.device_id},
    )
