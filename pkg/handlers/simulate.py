# -*- coding: utf-8 -*-
from __future__ import annotations

import argparse
import asyncio
import logging
from pathlib import Path

import texts
from calibration import load_device_profile, resolve_calibration
from dynamics import IsingModel
from handlers.schedule import load_schedule_document
from lattice import HeavyHexLattice
from models import SimulationMode
from observables import MagnetizationCurve, magnetization, site_magnetization_table, write_site_table
from schedule import sweep_angles
from services.experiments import magnetization_sweep, quench_deviation, schedule_state
from services.io_tools import RunManifest, write_json, write_rows
from utils.args_parser import FlagParseError, parse_lattice_spec, parse_observable

log = logging.getLogger(__name__)


async def _from_schedule(args: argparse.Namespace, lattice: HeavyHexLattice, manifest: RunManifest, out: Path) -> None:
    sched, hgain, params = load_schedule_document(args.schedule)
    cal = resolve_calibration(args.calibration)
    manifest.calibration = cal.device_id
    j_qa = params.j_qa if params is not None else args.j
    model = IsingModel.from_lattice(lattice, j_qa, h=1.0 if hgain is not None else 0.0)
    psi = await asyncio.to_thread(schedule_state, model, sched, hgain, cal, transverse_sign=args.transverse_sign)

    scope = parse_observable(args.observable)
    write_site_table(site_magnetization_table(psi, lattice), manifest.add_output(out / "sites.csv"))
    write_json(manifest.add_output(out / "summary.json"), {
        "theta_h": params.theta_h if params is not None else None,
        "n_steps": params.n_steps if params is not None else None,
        "schedule_kind": sched.kind.value,
        "duration_us": sched.duration_us,
        "observable": scope.label,
        "value": magnetization(psi, scope).value,
        "lattice_mean": magnetization(psi).value,
        "norm": psi.norm(),
    })


async def _quench(args: argparse.Namespace, lattice: HeavyHexLattice, manifest: RunManifest, out: Path) -> None:
    if not args.thetas or len(args.thetas) != 1:
        raise FlagParseError(texts.MSG_QUENCH_ONE_ANGLE)
    cal = resolve_calibration(args.calibration)
    dc = load_device_profile(args.device)
    manifest.calibration, manifest.device = cal.device_id, dc.device_id
    rows = await quench_deviation(lattice, args.thetas[0], args.quench_steps, cal, dc, j_qa=args.j, threads=args.threads)
    write_rows(
        manifest.add_output(out / "quench.csv"),
        ["n_steps", "pause_ns", "ramp_ns", "pause_to_ramp", "m_pause", "m_ramped", "deviation"],
        [(r.n_steps, r.pause_ns, r.ramp_ns, r.pause_to_ramp, r.m_pause, r.m_ramped, r.deviation) for r in rows],
    )


async def _sweep(args: argparse.Namespace, lattice: HeavyHexLattice, manifest: RunManifest, out: Path) -> None:
    if args.steps is None:
        raise FlagParseError(texts.MSG_NEED_STEPS)
    if args.thetas:
        thetas = args.thetas
    elif args.angles:
        thetas = sweep_angles(args.angles)
    else:
        raise FlagParseError(texts.MSG_NEED_ANGLES)
    mode = SimulationMode(args.mode)
    cal = dc = None
    if mode is SimulationMode.ANNEAL:
        cal = resolve_calibration(args.calibration)
        dc = load_device_profile(args.device)
        manifest.calibration, manifest.device = cal.device_id, dc.device_id

    points = await magnetization_sweep(
        lattice, thetas, args.steps, mode,
        j_qa=args.j, cal=cal, dc=dc, transverse_sign=args.transverse_sign, s_selection=args.s_selection,
        with_ramps=args.with_ramps, step_order=args.step_order, dtype=args.dtype, threads=args.threads,
    )
    scope = parse_observable(args.observable)
    curve = MagnetizationCurve.from_sources(((p.theta_h, p.state) for p in points), scope)
    curve.write_csv(manifest.add_output(out / "curve.csv"))

    rows = []
    for p in points:
        for node, r, c, z in site_magnetization_table(p.state, lattice):
            rows.append((p.theta_h, node, r, c, z))
    write_rows(manifest.add_output(out / "sites.csv"), ["theta_h", "node", "row", "col", "value"], rows)


async def cmd_simulate(args: argparse.Namespace) -> int:
    out = Path(args.out)
    lattice = parse_lattice_spec(args.lattice)
    manifest = RunManifest.from_args(args)
    manifest.calibration = manifest.device = None

    if args.schedule:
        await _from_schedule(args, lattice, manifest, out)
    elif args.quench_steps:
        await _quench(args, lattice, manifest, out)
    else:
        await _sweep(args, lattice, manifest, out)

    manifest.write(out)
    log.info(texts.MSG_OUTPUTS, "simulate", len(manifest.outputs), out)
    return 0
