# -*- coding: utf-8 -*-
from schedule.builders import (
    AnnealSchedule,
    HGainSchedule,
    build_hgain_schedules,
    build_reverse_schedule,
    validate_hgain,
    validate_schedule,
    write_waveform,
)
from schedule.derive import (
    DerivedParams,
    FeasibilityFlags,
    InfeasibleParamsError,
    ScheduleError,
    derive_params,
    ratio_residual,
)
from schedule.sweep import (
    SweepEntry,
    SweepPlan,
    check_sweep_args,
    collect_sweep,
    plan_fixed_time_sweep,
    plan_sweep,
    s_grid,
    sweep_angles,
    sweep_entry,
)

__all__ = [
    "AnnealSchedule",
    "DerivedParams",
    "FeasibilityFlags",
    "HGainSchedule",
    "InfeasibleParamsError",
    "ScheduleError",
    "SweepEntry",
    "SweepPlan",
    "build_hgain_schedules",
    "build_reverse_schedule",
    "check_sweep_args",
    "collect_sweep",
    "derive_params",
    "plan_fixed_time_sweep",
    "plan_sweep",
    "ratio_residual",
    "s_grid",
    "sweep_angles",
    "sweep_entry",
    "validate_hgain",
    "validate_schedule",
    "write_waveform",
]
