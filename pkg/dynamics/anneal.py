# -*- coding: utf-8 -*-
"""
Continuous-time evolution under the schedule-driven annealing Hamiltonian

    H(t) = B(s(t))/2 · (g(t) Σ h_i Z_i + Σ J_ij Z_iZ_j) − sign · A(s(t))/2 · Σ X_i

with A, B in GHz and t in ns; the propagator phase is 2π·GHz·ns.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh
from scipy.sparse.linalg import eigsh, expm_multiply

from calibration.tables import CalibrationTable, interp
from config import settings
from dynamics.hamiltonians import AnnealOperator
from dynamics.ising import IsingModel
from dynamics.state import SimulationError, StateVector, check_capacity
from schedule.builders import AnnealSchedule, HGainSchedule
from schedule.derive import NS_PER_US

log = logging.getLogger(__name__)

_NORM_DRIFT = 1e-9
_DENSE_GROUND_DIM = 1024
_TIME_DIGITS = 12


@dataclass(slots=True)
class EvolutionConfig:
    tolerance: float = field(default_factory=lambda: settings.SOLVER_TOLERANCE)
    max_segment_ns: float = field(default_factory=lambda: settings.MAX_SEGMENT_NS)
    max_slices: int = field(default_factory=lambda: settings.MAX_SLICES)
    transverse_sign: int = 1
    max_depth: int = 20

    def __post_init__(self) -> None:
        if not self.tolerance > 0:
            raise SimulationError(f"tolerance must be positive, got {self.tolerance}")
        if not self.max_segment_ns > 0:
            raise SimulationError(f"max_segment_ns must be positive, got {self.max_segment_ns}")
        if self.max_slices < 1:
            raise SimulationError(f"max_slices must be >= 1, got {self.max_slices}")
        if self.transverse_sign not in (1, -1):
            raise SimulationError(f"transverse_sign must be ±1, got {self.transverse_sign}")


class _Propagator:
    """Midpoint-frozen slices with step-doubling error control."""

    def __init__(
        self,
        op: AnnealOperator,
        sched: AnnealSchedule,
        hg: HGainSchedule | None,
        cal: CalibrationTable,
        cfg: EvolutionConfig,
    ) -> None:
        self.op = op
        self.sched = sched
        self.hg = hg
        self.cal = cal
        self.cfg = cfg
        self.slices = 0

    def hamiltonian(self, t_us: float):
        s = float(self.sched.s_at(t_us))
        a, b = interp(self.cal, min(max(s, 0.0), 1.0))
        g = float(self.hg.g_at(t_us)) if self.hg is not None else 1.0
        return self.op(a, b, g)

    def step(self, psi: np.ndarray, t0_us: float, t1_us: float) -> np.ndarray:
        if self.slices >= self.cfg.max_slices:
            raise SimulationError(
                f"ramp integration needs more than {self.cfg.max_slices} slices near t={t0_us:.6g} µs; "
                f"raise MAX_SLICES or loosen the tolerance {self.cfg.tolerance:g}"
            )
        h = self.hamiltonian((t0_us + t1_us) / 2)
        dt_ns = (t1_us - t0_us) * NS_PER_US
        self.slices += 1
        return expm_multiply((-2j * math.pi * dt_ns) * h, psi)

    def adaptive(self, psi: np.ndarray, t0_us: float, t1_us: float, depth: int = 0) -> np.ndarray:
        tm = (t0_us + t1_us) / 2
        full = self.step(psi, t0_us, t1_us)
        half = self.step(self.step(psi, t0_us, tm), tm, t1_us)
        err = float(np.linalg.norm(full - half))
        if err <= self.cfg.tolerance or depth >= self.cfg.max_depth:
            if err > self.cfg.tolerance:
                log.warning("slice [%s, %s] µs stopped at depth %s with error %.3g", t0_us, t1_us, depth, err)
            return half
        psi = self.adaptive(psi, t0_us, tm, depth + 1)
        return self.adaptive(psi, tm, t1_us, depth + 1)


def breakpoints(sched: AnnealSchedule, hg: HGainSchedule | None = None) -> np.ndarray:
    """Union of s(t) and g(t) knots, µs."""
    times = list(sched.times)
    if hg is not None:
        times += list(hg.times)
    return np.unique(np.round(np.asarray(times, dtype=float), _TIME_DIGITS))


def anneal_evolve(
    model: IsingModel,
    sched: AnnealSchedule,
    hg: HGainSchedule | None,
    cal: CalibrationTable,
    cfg: EvolutionConfig,
    initial: StateVector,
    *,
    max_qubits: int | None = None,
) -> StateVector:
    """
    Integrates the Schrödinger equation over the whole schedule.

    Segments between breakpoints with constant s and g are one exact exponential;
    ramps are cut into slices of at most cfg.max_segment_ns and refined adaptively.
    """
    n = model.n
    check_capacity(n, max_qubits if max_qubits is not None else settings.ANNEAL_MAX_QUBITS, "anneal_evolve")
    if initial.n_qubits != n:
        raise SimulationError(f"initial state has {initial.n_qubits} qubits, model has {n}")
    if hg is not None and abs(hg.duration_us - sched.duration_us) > 1e-9:
        raise SimulationError(
            f"h-gain schedule ends at {hg.duration_us} µs but the anneal schedule ends at {sched.duration_us} µs"
        )

    prop = _Propagator(AnnealOperator(model, cfg.transverse_sign), sched, hg, cal, cfg)
    psi = initial.amplitudes.astype(np.complex128, copy=True)
    knots = breakpoints(sched, hg)

    for t0, t1 in zip(knots, knots[1:]):
        t0, t1 = float(t0), float(t1)
        s0, s1 = float(sched.s_at(t0)), float(sched.s_at(t1))
        g0 = g1 = 1.0
        if hg is not None:
            g0, g1 = float(hg.g_at(t0)), float(hg.g_at(t1))
        if s0 == s1 and g0 == g1:
            psi = prop.step(psi, t0, t1)
            continue
        n_slices = max(1, math.ceil((t1 - t0) * NS_PER_US / cfg.max_segment_ns))
        edges = np.linspace(t0, t1, n_slices + 1)
        for a, b in zip(edges, edges[1:]):
            psi = prop.adaptive(psi, float(a), float(b))

    drift = abs(float(np.linalg.norm(psi)) - 1.0)
    if drift > _NORM_DRIFT:
        log.warning("norm drift %.3g after anneal evolution (%s slices)", drift, prop.slices)
    log.debug("anneal: n=%s knots=%s slices=%s", n, len(knots), prop.slices)
    return StateVector(psi)


def _fix_phase(vec: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(vec)))
    vec = vec * (abs(vec[k]) / vec[k])
    return vec / np.linalg.norm(vec)


def ground_state(
    model: IsingModel, a_ghz: float, b_ghz: float, g: float = 1.0, transverse_sign: int = 1
) -> StateVector:
    """
    Lowest eigenvector of the annealing Hamiltonian at fixed (A, B, g).

    With B = 0 only the transverse term is left: the result is |+>^n
    (or its parity-signed twin for transverse_sign=-1) whatever g is.
    """
    n = model.n
    if a_ghz < 0 or b_ghz < 0 or (a_ghz == 0 and b_ghz == 0):
        raise SimulationError(f"no unique ground state for A={a_ghz}, B={b_ghz}")
    if b_ghz == 0:
        amps = np.full(2 ** n, 2.0 ** (-n / 2), dtype=np.complex128)
        if transverse_sign == -1:
            parity = np.array([bin(i).count("1") & 1 for i in range(2 ** n)])
            amps *= 1 - 2 * parity
        return StateVector(amps)

    h = AnnealOperator(model, transverse_sign)(a_ghz, b_ghz, g)
    if 2 ** n <= _DENSE_GROUND_DIM:
        _, vecs = eigh(h.toarray())
        vec = vecs[:, 0]
    else:
        v0 = np.full(2 ** n, 2.0 ** (-n / 2))
        _, vecs = eigsh(h, k=1, which="SA", v0=v0)
        vec = vecs[:, 0]
    return StateVector(_fix_phase(vec.astype(np.complex128)))
