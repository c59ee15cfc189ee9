# -*- coding: utf-8 -*-
from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path

import texts
from calibration import load_device_profile, resolve_calibration
from schedule import InfeasibleParamsError, derive_params
from services.io_tools import RunManifest, write_json

log = logging.getLogger(__name__)


async def cmd_derive(args: argparse.Namespace) -> int:
    out = Path(args.out)
    manifest = RunManifest.from_args(args)
    cal = resolve_calibration(args.calibration)
    dc = load_device_profile(args.device)
    manifest.calibration, manifest.device = cal.device_id, dc.device_id

    params = derive_params(args.theta, args.steps, args.j, cal, dc, s_selection=args.s_selection)
    payload = params.to_dict()
    write_json(manifest.add_output(out / "derived.json"), payload)
    manifest.write(out)
    print(json.dumps(payload, sort_keys=True))
    log.info(texts.MSG_OUTPUTS, "derive", len(manifest.outputs), out)

    if args.require_feasible and not params.feasible:
        raise InfeasibleParamsError(
            texts.MSG_INFEASIBLE.format(theta=args.theta, steps=args.steps, j=args.j, issues=", ".join(params.flags.issues()))
        )
    return 0
