# -*- coding: utf-8 -*-
from __future__ import annotations

import argparse
import logging
from pathlib import Path

import texts
from dynamics import IsingModel
from handlers.schedule import load_schedule_document
from models import ScheduleKind
from pegasus import Embedding, TilingResult
from providers import SamplerRequest
from services import sampler_service
from services.io_tools import RunManifest, read_json, write_json
from utils.args_parser import FlagParseError, parse_lattice_spec

log = logging.getLogger(__name__)


async def _sample_request_file(args: argparse.Namespace) -> int:
    """req.json → resp.json; --out is either the response path or its directory."""
    request = SamplerRequest.from_dict(read_json(args.request))
    response = await sampler_service.run(request, threads=args.threads)

    target = Path(args.out)
    if target.suffix.lower() != ".json":
        target = target / "response.json"
    manifest = RunManifest.from_args(args, seeds={"seed": request.seed})
    manifest.calibration = response.metadata.get("calibration", request.calibration)
    manifest.device = request.device
    write_json(manifest.add_output(target), response.to_dict())
    manifest.write(target.parent)
    log.info(texts.MSG_OUTPUTS, "sample", len(manifest.outputs), target.parent)
    return 0


async def cmd_sample(args: argparse.Namespace) -> int:
    if args.request:
        if args.schedule or args.tiling:
            raise FlagParseError(texts.MSG_REQUEST_EXCLUSIVE)
        return await _sample_request_file(args)
    if not args.schedule:
        raise FlagParseError(texts.MSG_NEED_SCHEDULE)

    out = Path(args.out)
    lattice = parse_lattice_spec(args.lattice)
    sched, hgain, params = load_schedule_document(args.schedule)

    j_qa = args.j if args.j is not None else (params.j_qa if params is not None else -0.5)
    field = args.field if args.field is not None else (1.0 if hgain is not None else 0.0)
    model = IsingModel.from_lattice(lattice, j_qa, h=field)

    if args.tiling:
        tiles = TilingResult.from_dict(read_json(args.tiling))
    else:
        tiles = [Embedding(mapping={n: n for n in lattice.nodes})]
    problem = sampler_service.compose_tiles(model, tiles)

    request = SamplerRequest(
        problem=problem,
        schedule=sched,
        hgain=hgain,
        initial_state=(
            {q: 1 for q in problem.model.nodes} if sched.kind is not ScheduleKind.FORWARD else None
        ),
        reinitialize_state=not args.sequential,
        num_reads=args.num_reads,
        gauges=args.gauges,
        seed=args.seed,
        calibration=args.calibration,
        device=args.device if args.validate_device else None,
        transverse_sign=args.transverse_sign,
    )
    response = await sampler_service.run(request, threads=args.threads)

    manifest = RunManifest.from_args(args, seeds={"seed": args.seed})
    manifest.calibration = response.metadata.get("calibration")
    meta = {"theta_h": None, "n_steps": None}
    if params is not None:
        meta = {"theta_h": params.theta_h, "n_steps": params.n_steps}
    for t, ss in enumerate(response.samples):
        ss.metadata.update(meta)
        ss.write_csv(manifest.add_output(out / f"samples_tile{t}.csv"))
    merged = response.merged()
    merged.metadata.update(meta)
    merged.write_csv(manifest.add_output(out / "samples.csv"))
    write_json(manifest.add_output(out / "request.json"), request.to_dict())
    write_json(manifest.add_output(out / "timing.json"), response.timing.to_dict())
    manifest.write(out)
    log.info("%s tiles × %s reads", len(response.samples), args.num_reads)
    log.info(texts.MSG_OUTPUTS, "sample", len(manifest.outputs), out)
    return 0
