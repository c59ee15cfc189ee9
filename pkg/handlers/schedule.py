# -*- coding: utf-8 -*-
from __future__ import annotations

import argparse
import logging
from pathlib import Path
from typing import Any

import texts
from calibration import load_device_profile, resolve_calibration
from models import ScheduleKind, SweepMethod
from schedule import (
    AnnealSchedule,
    DerivedParams,
    HGainSchedule,
    ScheduleError,
    build_hgain_schedules,
    build_reverse_schedule,
    derive_params,
    write_waveform,
)
from services.io_tools import RunManifest, read_json, write_json
from utils.args_parser import FlagParseError

log = logging.getLogger(__name__)


def load_schedule_document(path: str | Path) -> tuple[AnnealSchedule, HGainSchedule | None, DerivedParams | None]:
    """schedule.json → (anneal schedule, h-gain schedule or None, derived params or None)."""
    data = read_json(path)
    if not isinstance(data, dict) or "schedule" not in data:
        raise ScheduleError(texts.MSG_SCHEDULE_FILE.format(path=path))
    hg = data.get("hgain")
    params = data.get("params")
    return (
        AnnealSchedule.from_dict(data["schedule"]),
        HGainSchedule.from_dict(hg) if hg else None,
        DerivedParams.from_dict(params) if params else None,
    )


async def cmd_schedule(args: argparse.Namespace) -> int:
    out = Path(args.out)
    manifest = RunManifest.from_args(args)
    dc = load_device_profile(args.device)
    manifest.device = dc.device_id

    if args.derived:
        params = DerivedParams.from_dict(read_json(args.derived))
        manifest.calibration = params.calibration_id
    elif args.theta is not None and args.steps is not None:
        cal = resolve_calibration(args.calibration)
        manifest.calibration = cal.device_id
        params = derive_params(args.theta, args.steps, args.j, cal, dc, s_selection=args.s_selection)
    else:
        raise FlagParseError(texts.MSG_NEED_DERIVATION)

    hgain: HGainSchedule | None = None
    if args.method == ScheduleKind.PAUSE.value:
        sched = AnnealSchedule.pause_only(params.s_star, params.pause_us)
    elif SweepMethod(args.method) is SweepMethod.REVERSE:
        sched = build_reverse_schedule(params, dc)
    else:
        sched, hgain = build_hgain_schedules(params, dc, args.ramp_down_ns)

    doc: dict[str, Any] = {
        "method": args.method,
        "params": params.to_dict(),
        "schedule": sched.to_dict(),
        "hgain": hgain.to_dict() if hgain is not None else None,
        "duration_us": sched.duration_us,
    }
    write_json(manifest.add_output(out / "schedule.json"), doc)
    write_waveform(manifest.add_output(out / "waveform_s.csv"), sched)
    if hgain is not None:
        write_waveform(manifest.add_output(out / "waveform_g.csv"), hgain)
    manifest.write(out)
    log.info(texts.MSG_OUTPUTS, "schedule", len(manifest.outputs), out)
    return 0
