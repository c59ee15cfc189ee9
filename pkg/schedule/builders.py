# -*- coding: utf-8 -*-
from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from calibration import DeviceConstraints
from models import ScheduleKind
from schedule.derive import NS_PER_US, DerivedParams, InfeasibleParamsError, ScheduleError

log = logging.getLogger(__name__)

_SLOPE_TOL = 1e-9
_T_DIGITS = 10

Point = tuple[float, float]


def _check_points(points: list[Point], what: str) -> None:
    if len(points) < 2:
        raise ScheduleError(f"{what} needs at least two points")
    if points[0][0] != 0.0:
        raise ScheduleError(f"{what} must start at t=0, got t={points[0][0]}")
    for (t0, _), (t1, _) in zip(points, points[1:]):
        if not t1 > t0:
            raise ScheduleError(f"{what} times must be strictly increasing ({t0} → {t1})")


@dataclass(frozen=True, slots=True)
class AnnealSchedule:
    """Piecewise-linear s(t), t in µs."""

    points: tuple[Point, ...]
    kind: ScheduleKind

    def __post_init__(self) -> None:
        pts = [(float(t), float(s)) for t, s in self.points]
        object.__setattr__(self, "points", tuple(pts))
        _check_points(pts, "anneal schedule")
        if any(not 0.0 <= s <= 1.0 for _, s in pts):
            raise ScheduleError("anneal fraction must stay within [0, 1]")
        kind = ScheduleKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is ScheduleKind.REVERSE and pts[0][1] != 1.0:
            raise ScheduleError("reverse schedules start at s=1")
        if kind is ScheduleKind.FORWARD and pts[0][1] != 0.0:
            raise ScheduleError("forward schedules start at s=0")
        if kind in (ScheduleKind.REVERSE, ScheduleKind.FORWARD) and pts[-1][1] != 1.0:
            raise ScheduleError("readout happens at s=1: schedules must end at s=1")
        if kind is ScheduleKind.PAUSE and len({s for _, s in pts}) != 1:
            raise ScheduleError("pause schedules hold a constant s")

    @classmethod
    def pause_only(cls, s: float, duration_us: float) -> "AnnealSchedule":
        return cls(points=((0.0, s), (duration_us, s)), kind=ScheduleKind.PAUSE)

    @property
    def duration_us(self) -> float:
        return self.points[-1][0]

    @property
    def times(self) -> np.ndarray:
        return np.array([t for t, _ in self.points])

    def s_at(self, t: float | np.ndarray) -> Any:
        return np.interp(t, self.times, [s for _, s in self.points])

    def max_slope(self) -> float:
        return max(abs(s1 - s0) / (t1 - t0) for (t0, s0), (t1, s1) in zip(self.points, self.points[1:]))

    def pause_segments(self) -> list[tuple[float, float, float]]:
        """(t_start, t_end, s) of constant-s segments."""
        return [(t0, t1, s0) for (t0, s0), (t1, s1) in zip(self.points, self.points[1:]) if s0 == s1]

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind.value, "points": [list(p) for p in self.points]}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "AnnealSchedule":
        return cls(points=tuple((float(t), float(s)) for t, s in data["points"]), kind=ScheduleKind(data["kind"]))


@dataclass(frozen=True, slots=True)
class HGainSchedule:
    """Piecewise-linear g(t), the multiplier on all linear terms."""

    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        pts = [(float(t), float(g)) for t, g in self.points]
        object.__setattr__(self, "points", tuple(pts))
        _check_points(pts, "h-gain schedule")
        if pts[-1][1] != 0.0 or pts[-2][1] != 0.0:
            raise ScheduleError("h-gain schedule must finish with a g=0 segment")

    @property
    def duration_us(self) -> float:
        return self.points[-1][0]

    @property
    def times(self) -> np.ndarray:
        return np.array([t for t, _ in self.points])

    def g_at(self, t: float | np.ndarray) -> Any:
        return np.interp(t, self.times, [g for _, g in self.points])

    def to_dict(self) -> dict[str, Any]:
        return {"points": [list(p) for p in self.points]}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "HGainSchedule":
        return cls(points=tuple((float(t), float(g)) for t, g in data["points"]))


# ---------- Validation ----------

def validate_schedule(schedule: AnnealSchedule, dc: DeviceConstraints) -> None:
    """Device rules for a programmed schedule; raises ScheduleError."""
    if schedule.kind is ScheduleKind.PAUSE:
        raise ScheduleError("pause-only schedules are a simulator construct and cannot be programmed")
    if len(schedule.points) > dc.max_schedule_points:
        raise ScheduleError(f"{len(schedule.points)} points exceed the device limit {dc.max_schedule_points}")
    total = schedule.duration_us
    if total < dc.min_anneal_us - _SLOPE_TOL:
        raise ScheduleError(f"total anneal time {total} µs is below the minimum {dc.min_anneal_us} µs")
    if total > dc.max_anneal_us + _SLOPE_TOL:
        raise ScheduleError(f"total anneal time {total} µs exceeds the maximum {dc.max_anneal_us} µs")
    if schedule.max_slope() > dc.max_slope + _SLOPE_TOL:
        raise ScheduleError(f"slope {schedule.max_slope():.6g}/µs exceeds the device limit {dc.max_slope:.6g}/µs")
    res = dc.anneal_time_resolution_us
    for t, _ in schedule.points:
        ticks = t / res
        if abs(ticks - round(ticks)) > 1e-6:
            raise ScheduleError(f"time {t} µs is not a multiple of the {res} µs resolution")


def validate_hgain(hg: HGainSchedule, dc: DeviceConstraints, schedule: AnnealSchedule | None = None) -> None:
    if len(hg.points) > dc.max_hgain_points:
        raise ScheduleError(f"{len(hg.points)} h-gain points exceed the device limit {dc.max_hgain_points}")
    for _, g in hg.points:
        if not dc.h_gain_min <= g <= 0.0:
            raise ScheduleError(f"h-gain {g} outside [{dc.h_gain_min}, 0]")
    if schedule is not None and abs(hg.duration_us - schedule.duration_us) > _SLOPE_TOL:
        raise ScheduleError("h-gain and anneal schedules must end at the same time")


# ---------- Rounding helpers ----------

def _ceil_ticks(duration_us: float, res: float) -> int:
    return int(math.ceil(round(duration_us / res, 9)))


def _round_ticks(duration_us: float, res: float) -> int:
    return int(math.floor(duration_us / res + 0.5))


def _t(ticks: int, res: float) -> float:
    return round(ticks * res, _T_DIGITS)


def _check_programmable(p: DerivedParams) -> None:
    if not p.feasible:
        raise InfeasibleParamsError(
            f"theta_h={p.theta_h:.6g} N={p.n_steps} J={p.j_qa} cannot be programmed: {p.flags.issues()}"
        )


def _pause_ticks(p: DerivedParams, res: float) -> int:
    ticks = _round_ticks(p.pause_us, res)
    if ticks < 1:
        raise InfeasibleParamsError(f"pause {p.pause_ns:.6g} ns is below the {res} µs time resolution")
    return ticks


# ---------- Builders ----------

def build_reverse_schedule(p: DerivedParams, dc: DeviceConstraints) -> AnnealSchedule:
    """(0,1) → max-slope ramp to s* → pause → max-slope ramp back to s=1."""
    _check_programmable(p)
    res = dc.anneal_time_resolution_us
    ramp = _ceil_ticks((1.0 - p.s_star) * dc.min_anneal_us, res)
    pause = _pause_ticks(p, res)

    points: list[Point] = [(0.0, 1.0)]
    tick = 0
    if ramp:
        tick += ramp
        points.append((_t(tick, res), p.s_star))
    tick += pause
    points.append((_t(tick, res), p.s_star))
    if ramp:
        tick += ramp
        points.append((_t(tick, res), 1.0))

    schedule = AnnealSchedule(points=tuple(points), kind=ScheduleKind.REVERSE)
    validate_schedule(schedule, dc)
    return schedule


def build_hgain_schedules(
    p: DerivedParams,
    dc: DeviceConstraints,
    ramp_down_ns: float = 30.0,
) -> tuple[AnnealSchedule, HGainSchedule]:
    """Forward ramp to s* under full negative h-gain, released over the last ramp_down_ns of the ramp."""
    _check_programmable(p)
    res = dc.anneal_time_resolution_us
    ramp = _ceil_ticks(p.s_star * dc.min_anneal_us, res)
    down = _round_ticks(ramp_down_ns / NS_PER_US, res)
    if down >= ramp:
        raise ScheduleError(
            f"h-gain ramp-down {ramp_down_ns} ns must be shorter than the forward ramp {_t(ramp, res) * NS_PER_US:.6g} ns"
        )
    pause = _pause_ticks(p, res)
    back = _ceil_ticks((1.0 - p.s_star) * dc.min_anneal_us, res)

    t1 = ramp
    t2 = t1 + pause
    s_points: list[Point] = [(0.0, 0.0), (_t(t1, res), p.s_star), (_t(t2, res), p.s_star)]
    t_end = t2
    if back:
        t_end = t2 + back
        s_points.append((_t(t_end, res), 1.0))

    g_points: list[Point] = [(0.0, dc.h_gain_min)]
    if down > 0:
        g_points.append((_t(t1 - down, res), dc.h_gain_min))
    g_points += [(_t(t1, res), 0.0), (_t(t_end, res), 0.0)]

    schedule = AnnealSchedule(points=tuple(s_points), kind=ScheduleKind.FORWARD)
    hgain = HGainSchedule(points=tuple(g_points))
    validate_schedule(schedule, dc)
    validate_hgain(hgain, dc, schedule)
    return schedule, hgain


# ---------- Waveform CSV ----------

def write_waveform(path: str | Path, schedule: AnnealSchedule | HGainSchedule) -> Path:
    """Two-column CSV: t_us,s (anneal) or t_us,g (h-gain)."""
    path = Path(path)
    column = "g" if isinstance(schedule, HGainSchedule) else "s"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t_us", column])
        for t, v in schedule.points:
            writer.writerow([format(t, ".17g"), format(v, ".17g")])
    return path
