# -*- coding: utf-8 -*-
"""
Mock annealer: exact continuous-time simulation per tile.

Tiles are disjoint blocks of the composed Hamiltonian, so each one is evolved
on its own and in parallel. Per tile the RNG is seeded with (seed, tile index), which
makes the result independent of the worker count and of the other tiles.
"""

from __future__ import annotations

import asyncio
import logging

import numpy as np

from calibration import CalibrationTable, interp, load_device_profile, resolve_calibration
from config import settings
from dynamics.anneal import EvolutionConfig, anneal_evolve, ground_state
from dynamics.gauge import gauge_transform, random_gauges, ungauge
from dynamics.ising import IsingModel
from dynamics.sampling import SampleSet, sample_z
from dynamics.state import StateVector
from models import ScheduleKind
from providers.base import BackendError, Provider, SamplerProvider
from providers.models import SamplerRequest, SamplerResponse, TimingReport
from schedule.builders import validate_hgain, validate_schedule

log = logging.getLogger(__name__)


def reads_per_gauge(num_reads: int, n_gauges: int) -> list[int]:
    """Round-robin assignment of reads to gauges (read i → gauge i mod G)."""
    base, extra = divmod(num_reads, n_gauges)
    return [base + (1 if g < extra else 0) for g in range(n_gauges)]


class MockAnnealer(SamplerProvider):
    """Sampler backed by the exact Schrödinger solver."""

    name = Provider.MOCK_ANNEALER

    def __init__(self, max_qubits: int | None = None) -> None:
        self._max_qubits = max_qubits if max_qubits is not None else settings.ANNEAL_MAX_QUBITS

    # ---------------------- VALIDATION ----------------------

    def _check(self, request: SamplerRequest) -> None:
        for t in range(request.n_tiles):
            size = len(request.problem.tile_qubits(t))
            if size > self._max_qubits:
                raise BackendError(f"tile {t} has {size} qubits; the simulator cap is {self._max_qubits}")
        if request.device:
            dc = load_device_profile(request.device)
            if request.schedule.kind is not ScheduleKind.PAUSE:
                validate_schedule(request.schedule, dc)
            if request.hgain is not None:
                validate_hgain(request.hgain, dc, request.schedule)

    # ---------------------- ONE TILE ----------------------

    def _initial(
        self, request: SamplerRequest, model: IsingModel, r: dict[int, int], cal: CalibrationTable,
        spins: dict[int, int] | None,
    ) -> StateVector:
        if spins is not None:
            return StateVector.from_spins([r[q] * spins[q] for q in model.nodes])
        s0 = float(request.schedule.s_at(0.0))
        g0 = float(request.hgain.g_at(0.0)) if request.hgain is not None else 1.0
        a0, b0 = interp(cal, s0)
        return ground_state(model, a0, b0, g0, request.transverse_sign)

    def _run_tile(self, request: SamplerRequest, t: int, cal: CalibrationTable) -> SampleSet:
        embedding = request.problem.tiles[t]
        tid = embedding.tile_index
        qubits = request.problem.tile_qubits(t)
        sub = request.problem.model.restrict(qubits)
        rng = np.random.default_rng([request.seed, tid])
        gauges = random_gauges(sub.nodes, request.gauges, rng)
        counts = reads_per_gauge(request.num_reads, len(gauges))
        cfg = EvolutionConfig(transverse_sign=request.transverse_sign)
        start = (
            {q: request.initial_state[q] for q in qubits}
            if request.initial_state is not None and request.schedule.kind is not ScheduleKind.FORWARD
            else None
        )
        sequential = not request.reinitialize_state and request.schedule.kind is ScheduleKind.REVERSE

        parts: list[SampleSet] = []
        for g, (r, reads) in enumerate(zip(gauges, counts)):
            if reads == 0:
                continue
            model = gauge_transform(sub, r)

            def evolve(spins: dict[int, int] | None) -> StateVector:
                init = self._initial(request, model, r, cal, spins)
                return anneal_evolve(
                    model, request.schedule, request.hgain, cal, cfg, init, max_qubits=self._max_qubits
                )

            if not sequential:
                raw = sample_z(evolve(start), reads, [request.seed, tid, g], nodes=sub.nodes)
                parts.append(ungauge(raw, r))
                continue

            # reinitialize_state=False: каждое чтение стартует с предыдущего результата
            cache: dict[tuple[int, ...], StateVector] = {}
            current = dict(start or {})
            for i in range(reads):
                key = tuple(current[q] for q in sub.nodes)
                if key not in cache:
                    cache[key] = evolve(current)
                raw = ungauge(sample_z(cache[key], 1, [request.seed, tid, g, i], nodes=sub.nodes), r)
                parts.append(raw)
                current = {q: int(v) for q, v in zip(raw.nodes, raw.spins[0])}

        merged = SampleSet.concatenate(parts, metadata={"tile": tid, "seed": request.seed, "gauges": request.gauges})
        return merged.relabel(embedding.inverse())

    # ---------------------- PUBLIC ----------------------

    async def sample(self, request: SamplerRequest, *, threads: int | None = None) -> SamplerResponse:
        self._check(request)
        cal = resolve_calibration(request.calibration)
        workers = settings.threads(threads)
        sem = asyncio.Semaphore(workers)
        log.info(
            "mock annealer: %s tiles × %s reads, gauges=%s, %s worker(s)",
            request.n_tiles, request.num_reads, request.gauges, workers,
        )

        async def one(t: int) -> SampleSet:
            async with sem:
                return await asyncio.to_thread(self._run_tile, request, t, cal)

        samples = await asyncio.gather(*(one(t) for t in range(request.n_tiles)))
        return SamplerResponse(
            samples=list(samples),
            timing=TimingReport.for_schedule(request.schedule, request.num_reads),
            metadata={"provider": self.name.value, "seed": request.seed, "calibration": cal.device_id},
        )
