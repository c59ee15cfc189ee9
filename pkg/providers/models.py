# -*- coding: utf-8 -*-
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from dynamics.ising import IsingModel
from dynamics.sampling import SampleSet
from models import ScheduleKind
from pegasus.embedding import Embedding
from providers.base import BackendError, Provider
from schedule.builders import AnnealSchedule, HGainSchedule


@dataclass(slots=True)
class ComposedProblem:
    """One Ising model on the union of tile images; tiles[t] maps lattice node → qubit."""

    model: IsingModel
    tiles: list[Embedding]

    def tile_qubits(self, t: int) -> tuple[int, ...]:
        return tuple(sorted(self.tiles[t].mapping.values()))


@dataclass(slots=True)
class SamplerRequest:
    """Unified parameter set consumed by sampler providers."""

    # Обязательное
    problem: ComposedProblem
    schedule: AnnealSchedule

    # Расписания и начальное состояние
    hgain: Optional[HGainSchedule] = None
    initial_state: Optional[dict[int, int]] = None   # qubit → ±1, обязателен для reverse
    reinitialize_state: bool = True

    # Чтения
    num_reads: int = 1000
    gauges: int = 0                                   # 0 → без spin-reversal
    seed: int = 0

    # Физика / окружение
    calibration: str = "synthetic"
    device: Optional[str] = None                      # профиль для проверки расписаний
    transverse_sign: int = 1
    provider: Provider | str = Provider.MOCK_ANNEALER

    extras: dict[str, Any] = field(default_factory=dict)

    # ---------------------------
    # Нормализация
    # ---------------------------
    def __post_init__(self) -> None:
        self.provider = Provider(self.provider)
        self.num_reads = int(self.num_reads)
        self.gauges = int(self.gauges)
        if self.num_reads < 1:
            raise BackendError(f"num_reads must be ≥ 1, got {self.num_reads}")
        if self.gauges < 0:
            raise BackendError(f"gauges must be ≥ 0, got {self.gauges}")
        # больше калибровок, чем чтений, не бывает
        self.gauges = min(self.gauges, self.num_reads)
        if self.transverse_sign not in (1, -1):
            raise BackendError(f"transverse_sign must be ±1, got {self.transverse_sign}")
        if self.initial_state is not None:
            self.initial_state = {int(q): int(s) for q, s in self.initial_state.items()}
        if self.schedule.kind is ScheduleKind.REVERSE:
            if not self.initial_state:
                raise BackendError("reverse schedules require initial_state")
            missing = [q for q in self.problem.model.nodes if q not in self.initial_state]
            if missing:
                raise BackendError(f"initial_state misses qubits {missing[:5]}")
        if self.hgain is not None and abs(self.hgain.duration_us - self.schedule.duration_us) > 1e-9:
            raise BackendError("h-gain and anneal schedules must have the same duration")
        if not isinstance(self.extras, dict):
            self.extras = {}

    @property
    def n_tiles(self) -> int:
        return len(self.problem.tiles)

    def to_dict(self) -> dict[str, Any]:
        return {
            "provider": self.provider.value,
            "model": self.problem.model.to_dict(),
            "tiles": [e.to_dict() for e in self.problem.tiles],
            "schedule": self.schedule.to_dict(),
            "hgain": self.hgain.to_dict() if self.hgain is not None else None,
            "initial_state": (
                {str(q): s for q, s in sorted(self.initial_state.items())} if self.initial_state else None
            ),
            "reinitialize_state": self.reinitialize_state,
            "num_reads": self.num_reads,
            "gauges": self.gauges,
            "seed": self.seed,
            "calibration": self.calibration,
            "device": self.device,
            "transverse_sign": self.transverse_sign,
            "extras": self.extras,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SamplerRequest":
        hg = data.get("hgain")
        init = data.get("initial_state")
        return cls(
            problem=ComposedProblem(
                model=IsingModel.from_dict(data["model"]),
                tiles=[Embedding.from_dict(e) for e in data["tiles"]],
            ),
            schedule=AnnealSchedule.from_dict(data["schedule"]),
            hgain=HGainSchedule.from_dict(hg) if hg else None,
            initial_state={int(q): int(s) for q, s in init.items()} if init else None,
            reinitialize_state=bool(data.get("reinitialize_state", True)),
            num_reads=int(data.get("num_reads", 1000)),
            gauges=int(data.get("gauges", 0)),
            seed=int(data.get("seed", 0)),
            calibration=str(data.get("calibration", "synthetic")),
            device=data.get("device"),
            transverse_sign=int(data.get("transverse_sign", 1)),
            provider=data.get("provider", "mock_annealer"),
            extras=dict(data.get("extras") or {}),
        )


@dataclass(slots=True)
class TimingReport:
    """Simulated annealing-time accounting; never QPU access time."""

    anneal_time_per_read_us: float
    num_reads: int
    total_anneal_time_us: float
    readout_thermalization_us: float = 0.0
    programming_thermalization_us: float = 0.0
    simulated_access_time_s: float = 0.0
    simulated: bool = True

    @classmethod
    def for_schedule(cls, schedule: AnnealSchedule, num_reads: int) -> "TimingReport":
        total = schedule.duration_us * num_reads
        return cls(
            anneal_time_per_read_us=schedule.duration_us,
            num_reads=num_reads,
            total_anneal_time_us=total,
            simulated_access_time_s=total * 1e-6,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "simulated": self.simulated,
            "anneal_time_per_read_us": self.anneal_time_per_read_us,
            "num_reads": self.num_reads,
            "total_anneal_time_us": self.total_anneal_time_us,
            "readout_thermalization_us": self.readout_thermalization_us,
            "programming_thermalization_us": self.programming_thermalization_us,
            "simulated_access_time_s": self.simulated_access_time_s,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TimingReport":
        return cls(**{k: data[k] for k in (
            "anneal_time_per_read_us", "num_reads", "total_anneal_time_us", "readout_thermalization_us",
            "programming_thermalization_us", "simulated_access_time_s", "simulated",
        ) if k in data})


@dataclass(slots=True)
class SamplerResponse:
    """Per-tile samples labelled by lattice node, in tile order."""

    samples: list[SampleSet]
    timing: TimingReport
    metadata: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "samples": [s.to_dict() for s in self.samples],
            "timing": self.timing.to_dict(),
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SamplerResponse":
        return cls(
            samples=[SampleSet.from_dict(s) for s in data["samples"]],
            timing=TimingReport.from_dict(data["timing"]),
            metadata=dict(data.get("metadata") or {}),
        )

    def merged(self) -> SampleSet:
        """All tiles pooled as one lattice-labelled sample set."""
        return SampleSet.concatenate(self.samples, metadata={"tiles": len(self.samples), **self.metadata})
