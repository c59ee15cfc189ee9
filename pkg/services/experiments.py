# -*- coding: utf-8 -*-
from __future__ import annotations

import asyncio
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from calibration import CalibrationTable, DeviceConstraints, interp
from config import settings
from dynamics.anneal import EvolutionConfig, anneal_evolve, ground_state
from dynamics.ising import IsingModel
from dynamics.state import StateVector
from dynamics.trotter import TrotterConfig, trotter_evolve
from lattice.base import HeavyHexLattice
from lattice.coloring import three_edge_coloring
from models import ScheduleKind, SimulationMode, SSelection, StepOrder, SweepMethod
from schedule.builders import AnnealSchedule, HGainSchedule, build_reverse_schedule
from schedule.derive import DerivedParams, derive_params
from schedule.sweep import SweepEntry, SweepPlan, check_sweep_args, collect_sweep, sweep_angles, sweep_entry

log = logging.getLogger("services.experiments")


@dataclass(slots=True)
class SweepPoint:
    theta_h: float
    state: StateVector
    params: DerivedParams | None = None   # anneal mode only
    schedule: AnnealSchedule | None = None

    @property
    def z(self) -> np.ndarray:
        return self.state.z_expectations()


@dataclass(slots=True)
class QuenchRow:
    n_steps: int
    pause_ns: float
    ramp_ns: float
    m_pause: float
    m_ramped: float

    @property
    def deviation(self) -> float:
        return abs(self.m_ramped - self.m_pause)

    @property
    def pause_to_ramp(self) -> float:
        return self.pause_ns / self.ramp_ns if self.ramp_ns else float("inf")


def _anneal_point(
    lattice: HeavyHexLattice,
    theta: float,
    n_steps: int,
    j_qa: float,
    cal: CalibrationTable,
    dc: DeviceConstraints,
    cfg: EvolutionConfig,
    s_selection: SSelection | str,
    with_ramps: bool,
) -> SweepPoint:
    p = derive_params(theta, n_steps, j_qa, cal, dc, s_selection=s_selection)
    sched = build_reverse_schedule(p, dc) if with_ramps else AnnealSchedule.pause_only(p.s_star, p.pause_us)
    model = IsingModel.from_lattice(lattice, p.j_qa)
    psi = anneal_evolve(model, sched, None, cal, cfg, StateVector.all_up(lattice.n_nodes))
    return SweepPoint(theta_h=theta, state=psi, params=p, schedule=sched)


def schedule_state(
    model: IsingModel,
    schedule: AnnealSchedule,
    hgain: HGainSchedule | None,
    cal: CalibrationTable,
    *,
    transverse_sign: int = 1,
) -> StateVector:
    """
    Noise-free final state of one programmed schedule. Reverse and pause runs
    start all spins up, forward runs start in the ground state at t=0.

    A forward h-gain run that starts at s=0 on a table with B(0)=0 starts in
    |+>^n: the initial gain g(0) has no effect on the start state there.
    """
    cfg = EvolutionConfig(transverse_sign=transverse_sign)
    if schedule.kind is ScheduleKind.FORWARD:
        a0, b0 = interp(cal, float(schedule.s_at(0.0)))
        g0 = float(hgain.g_at(0.0)) if hgain is not None else 1.0
        init = ground_state(model, a0, b0, g0, transverse_sign)
    else:
        init = StateVector.all_up(model.n)
    return anneal_evolve(model, schedule, hgain, cal, cfg, init)


async def magnetization_sweep(
    lattice: HeavyHexLattice,
    thetas: Sequence[float],
    n_steps: int,
    mode: SimulationMode | str,
    *,
    j_qa: float = -0.5,
    cal: CalibrationTable | None = None,
    dc: DeviceConstraints | None = None,
    transverse_sign: int = 1,
    s_selection: SSelection | str = SSelection.INTERPOLATE,
    with_ramps: bool = False,
    step_order: StepOrder | str = StepOrder.RX_THEN_RZZ,
    dtype: str = "complex128",
    threads: int | None = None,
) -> list[SweepPoint]:
    """
    Final state per θ_h from the Trotter circuit or the derived anneal
    (pause only unless with_ramps), computed in parallel, returned in θ order.
    """
    mode = SimulationMode(mode)
    if mode is SimulationMode.ANNEAL and (cal is None or dc is None):
        raise ValueError("anneal sweeps need a calibration table and device constraints")
    coloring = three_edge_coloring(lattice) if mode is SimulationMode.TROTTER else None
    cfg = EvolutionConfig(transverse_sign=transverse_sign)
    sem = asyncio.Semaphore(settings.threads(threads))

    def one(theta: float) -> SweepPoint:
        if mode is SimulationMode.TROTTER:
            tc = TrotterConfig(n_steps=n_steps, theta_h=theta, step_order=StepOrder(step_order), dtype=dtype)
            return SweepPoint(theta_h=theta, state=trotter_evolve(lattice, coloring, tc))
        return _anneal_point(lattice, theta, n_steps, j_qa, cal, dc, cfg, s_selection, with_ramps)

    async def guarded(theta: float) -> SweepPoint:
        async with sem:
            return await asyncio.to_thread(one, float(theta))

    log.info("%s sweep: %s angles, N=%s, %s qubits", mode.value, len(thetas), n_steps, lattice.n_nodes)
    points = await asyncio.gather(*(guarded(t) for t in sorted(thetas)))
    return list(points)


async def quench_deviation(
    lattice: HeavyHexLattice,
    theta: float,
    n_list: Sequence[int],
    cal: CalibrationTable,
    dc: DeviceConstraints,
    *,
    j_qa: float = -0.5,
    threads: int | None = None,
) -> list[QuenchRow]:
    """Lattice magnetization with and without the max-slope ramps, per N."""
    cfg = EvolutionConfig()
    sem = asyncio.Semaphore(settings.threads(threads))

    def one(n: int) -> QuenchRow:
        plain = _anneal_point(lattice, theta, n, j_qa, cal, dc, cfg, SSelection.INTERPOLATE, False)
        ramped = _anneal_point(lattice, theta, n, j_qa, cal, dc, cfg, SSelection.INTERPOLATE, True)
        (t0, t1, _), = ramped.schedule.pause_segments()
        ramp_ns = (ramped.schedule.duration_us - (t1 - t0)) * 1000.0
        return QuenchRow(
            n_steps=n,
            pause_ns=plain.params.pause_ns,
            ramp_ns=ramp_ns,
            m_pause=float(np.mean(plain.z)),
            m_ramped=float(np.mean(ramped.z)),
        )

    async def guarded(n: int) -> QuenchRow:
        async with sem:
            return await asyncio.to_thread(one, int(n))

    rows = list(await asyncio.gather(*(guarded(n) for n in sorted(n_list))))
    for r in rows:
        log.info("quench N=%s pause/ramp=%.3g |ΔM|=%.3g", r.n_steps, r.pause_to_ramp, r.deviation)
    return rows


async def schedule_sweep(
    n_steps: int,
    j_qa: float,
    n_angles: int,
    method: SweepMethod | str,
    cal: CalibrationTable,
    dc: DeviceConstraints,
    *,
    s_selection: SSelection | str = SSelection.GRID,
    ramp_down_ns: float = 30.0,
    threads: int | None = None,
) -> SweepPlan:
    """plan_sweep with the angles derived and built in worker threads; same plan, same order."""
    method = check_sweep_args(n_angles, method, cal, dc)
    sem = asyncio.Semaphore(settings.threads(threads))

    async def guarded(theta: float) -> SweepEntry:
        async with sem:
            return await asyncio.to_thread(
                sweep_entry, theta, n_steps, j_qa, method, cal, dc, s_selection, ramp_down_ns,
            )

    entries = list(await asyncio.gather(*(guarded(t) for t in sweep_angles(n_angles))))
    return collect_sweep(entries, method, n_steps, j_qa, cal, dc, s_selection)
