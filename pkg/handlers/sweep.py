# -*- coding: utf-8 -*-
from __future__ import annotations

import argparse
import logging
from pathlib import Path

import texts
from calibration import load_device_profile, resolve_calibration
from schedule import plan_fixed_time_sweep
from services.experiments import schedule_sweep
from services.io_tools import RunManifest
from utils.args_parser import FlagParseError

log = logging.getLogger(__name__)


async def cmd_sweep(args: argparse.Namespace) -> int:
    out = Path(args.out)
    manifest = RunManifest.from_args(args)
    dc = load_device_profile(args.device)
    manifest.device = dc.device_id

    if args.fixed_time is not None:
        plan = plan_fixed_time_sweep(args.fixed_time, args.j, args.method, dc, s_step=args.s_step)
    else:
        if args.steps is None:
            raise FlagParseError(texts.MSG_NEED_STEPS)
        cal = resolve_calibration(args.calibration)
        manifest.calibration = cal.device_id
        plan = await schedule_sweep(
            args.steps, args.j, args.angles, args.method, cal, dc,
            s_selection=args.s_selection, ramp_down_ns=args.ramp_down_ns, threads=args.threads,
        )

    out.mkdir(parents=True, exist_ok=True)
    plan.write_json(manifest.add_output(out / "sweep.json"))
    plan.write_csv(manifest.add_output(out / "sweep.csv"))
    manifest.write(out)
    log.info("%s of %s sweep entries feasible", len(plan.feasible_entries()), len(plan.entries))
    log.info(texts.MSG_OUTPUTS, "sweep", len(manifest.outputs), out)
    return 0
