# -*- coding: utf-8 -*-
"""
Equivalent annealing parameters for a Trotterized kicked-Ising run.

With H_QA = B(s)/2 · J·ΣZZ − A(s)/2 · ΣX held at s* for a time T (ns, energies
in GHz, so the propagator phase is 2π·T·E), matching N Trotter steps of
exp(−iθ/2·X) · exp(+iπ/4·ZZ) requires

    ratio:   A(s*) / (B(s*)·J) = −2θ/π
    B time:  2·T·2π·B(s*)·J   = −N·π      → T_B = −N / (4·B·J)
    A time:  T·2π·A(s*)       =  N·θ      → T_A =  N·θ / (2π·A)

and the pause is the mean of T_A and T_B.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from calibration import CalibrationTable, DeviceConstraints, interp
from models import SSelection

log = logging.getLogger(__name__)

NS_PER_US = 1000.0


class ScheduleError(ValueError):
    """Invalid schedule request or a schedule that breaks device rules."""


class InfeasibleParamsError(ScheduleError):
    """Derived parameters cannot be programmed on the device."""


@dataclass(slots=True)
class FeasibilityFlags:
    pause_below_window: bool = False
    pause_above_window: bool = False
    below_coupler_precision: bool = False
    below_time_resolution: bool = False
    j_out_of_range: bool = False
    a_branch_degenerate: bool = False  # A(s*) = 0, T_from_A undefined

    @property
    def feasible(self) -> bool:
        return not (
            self.pause_below_window
            or self.pause_above_window
            or self.below_coupler_precision
            or self.below_time_resolution
            or self.j_out_of_range
        )

    def issues(self) -> list[str]:
        return [name for name, value in asdict(self).items() if value]


@dataclass(slots=True)
class DerivedParams:
    theta_h: float
    n_steps: int
    j_qa: float
    s_star: float
    a_ghz: float
    b_ghz: float
    t_from_b_ns: float
    t_from_a_ns: float
    pause_ns: float
    ratio_residual: float
    flags: FeasibilityFlags = field(default_factory=FeasibilityFlags)
    calibration_id: str = ""
    s_selection: str = SSelection.GRID.value

    @property
    def feasible(self) -> bool:
        return self.flags.feasible

    @property
    def pause_us(self) -> float:
        return self.pause_ns / NS_PER_US

    @property
    def time_mismatch_ns(self) -> float:
        return abs(self.t_from_a_ns - self.t_from_b_ns)

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["flags"] = self.flags.issues()
        out["feasible"] = self.feasible
        out["pause_us"] = self.pause_us
        out["time_mismatch_ns"] = self.time_mismatch_ns
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "DerivedParams":
        names = set(cls.__dataclass_fields__) - {"flags"}
        kwargs = {k: data[k] for k in names if k in data}
        flags = FeasibilityFlags(**{name: True for name in data.get("flags", [])})
        return cls(flags=flags, **kwargs)


def ratio_residual(a: float | np.ndarray, b: float | np.ndarray, theta_h: float, j_qa: float) -> Any:
    """|A/(B·J) + 2θ/π|; +inf where B = 0."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.abs(a / (b * j_qa) + 2.0 * theta_h / math.pi)
    return np.where(b > 0, r, np.inf)


def _select_grid(cal: CalibrationTable, theta_h: float, j_qa: float) -> float:
    residual = ratio_residual(cal.a_ghz, cal.b_ghz, theta_h, j_qa)
    return float(cal.s[int(np.argmin(residual))])  # first minimum → smaller s on ties


def _select_interpolated(cal: CalibrationTable, theta_h: float, j_qa: float) -> float:
    """Root of A(s) + (2θ/π)·J·B(s) on the piecewise-linear calibration (linear within each interval)."""
    f = cal.a_ghz + (2.0 * theta_h / math.pi) * j_qa * cal.b_ghz
    hits = np.nonzero((f[:-1] > 0) & (f[1:] <= 0))[0]
    if hits.size == 0:
        log.debug("ratio condition has no root on the calibration, falling back to grid")
        return _select_grid(cal, theta_h, j_qa)
    i = int(hits[0])
    if f[i + 1] == 0.0:
        return float(cal.s[i + 1])
    frac = f[i] / (f[i] - f[i + 1])
    return float(cal.s[i] + frac * (cal.s[i + 1] - cal.s[i]))


def derive_params(
    theta_h: float,
    n_steps: int,
    j_qa: float,
    cal: CalibrationTable,
    dc: DeviceConstraints,
    *,
    s_selection: SSelection | str = SSelection.GRID,
) -> DerivedParams:
    """Solve the ratio and time conditions for one (θ_h, N, J) triple."""
    if cal is None:
        raise ScheduleError("calibration table is required")
    if not (0.0 < theta_h <= math.pi / 2 + 1e-12):
        raise ScheduleError(f"theta_h must lie in (0, pi/2], got {theta_h}")
    if int(n_steps) != n_steps or n_steps < 1:
        raise ScheduleError(f"n_steps must be a positive integer, got {n_steps}")
    if not j_qa < 0:
        raise ScheduleError(f"j_qa must be negative (ferromagnetic), got {j_qa}")

    mode = SSelection(s_selection)
    s_star = _select_grid(cal, theta_h, j_qa) if mode is SSelection.GRID else _select_interpolated(cal, theta_h, j_qa)
    a, b = interp(cal, s_star)
    if b <= 0:
        raise ScheduleError(f"B(s*) = 0 at s* = {s_star}; calibration cannot realize the Ising term")

    flags = FeasibilityFlags()
    t_b = -n_steps / (4.0 * b * j_qa)
    if a > 0:
        t_a = n_steps * theta_h / (2.0 * math.pi * a)
    else:
        t_a = t_b
        flags.a_branch_degenerate = True
    pause_ns = (t_a + t_b) / 2.0

    pause_us = pause_ns / NS_PER_US
    flags.pause_below_window = pause_us < dc.min_anneal_us
    flags.pause_above_window = pause_us > dc.max_anneal_us
    flags.below_time_resolution = pause_us < dc.anneal_time_resolution_us
    flags.below_coupler_precision = abs(j_qa) < dc.coupler_precision
    flags.j_out_of_range = not (dc.j_range[0] <= j_qa <= dc.j_range[1])

    params = DerivedParams(
        theta_h=float(theta_h),
        n_steps=int(n_steps),
        j_qa=float(j_qa),
        s_star=s_star,
        a_ghz=a,
        b_ghz=b,
        t_from_b_ns=t_b,
        t_from_a_ns=t_a,
        pause_ns=pause_ns,
        ratio_residual=float(ratio_residual(a, b, theta_h, j_qa)),
        flags=flags,
        calibration_id=cal.device_id,
        s_selection=mode.value,
    )
    if not params.feasible:
        log.debug("theta=%.6f N=%s J=%s infeasible: %s", theta_h, n_steps, j_qa, flags.issues())
    return params
