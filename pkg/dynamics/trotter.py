# -*- coding: utf-8 -*-
"""
Kicked-Ising (first-order Trotter) circuit simulator.

One step: an RX(θ_h) layer on every qubit and one RZZ(φ) layer per colour
class, RZZ(φ) = exp(−iφ/2 Z_iZ_j). Colour classes are applied as a single
diagonal phase each, looked up from the integer class energy.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from config import settings
from dynamics.state import SimulationError, StateVector, check_capacity, z_pattern
from lattice.base import Edge, EdgeColoring, HeavyHexLattice
from models import StepOrder

log = logging.getLogger(__name__)


@dataclass(slots=True)
class TrotterConfig:
    n_steps: int
    theta_h: float
    rzz_angle: float = -math.pi / 2
    step_order: StepOrder = StepOrder.RX_THEN_RZZ
    layer_order: tuple[int, ...] | None = None  # colour classes, default ascending
    dtype: str = "complex128"

    def __post_init__(self) -> None:
        if int(self.n_steps) != self.n_steps or self.n_steps < 0:
            raise SimulationError(f"n_steps must be a non-negative integer, got {self.n_steps}")
        self.n_steps = int(self.n_steps)
        self.step_order = StepOrder(self.step_order)
        if self.dtype not in ("complex64", "complex128"):
            raise SimulationError(f"unsupported dtype {self.dtype!r}")


# ---------- Слои ----------

def apply_rx_layer(amps: np.ndarray, n_qubits: int, theta: float) -> None:
    """RX(θ) on every qubit, in place."""
    c = math.cos(theta / 2)
    ms = -1j * math.sin(theta / 2)
    for k in range(n_qubits):
        v = amps.reshape(2 ** (n_qubits - 1 - k), 2, 2 ** k)
        up = v[:, 0, :].copy()
        v[:, 0, :] *= c
        v[:, 0, :] += ms * v[:, 1, :]
        v[:, 1, :] *= c
        v[:, 1, :] += ms * up


class ZZLayer:
    """Diagonal phase of one colour class, stored as shifted integer energies."""

    __slots__ = ("edges", "energy", "phases")

    def __init__(self, edges: list[tuple[int, int]], n_qubits: int, angle: float, dtype: np.dtype) -> None:
        m = len(edges)
        if m > 255 // 2:
            raise SimulationError(f"colour class of {m} edges is too large for the phase table")
        e = np.zeros((2,) * n_qubits, dtype=np.int16)
        for i, j in edges:
            e += z_pattern(i, n_qubits, np.int16) * z_pattern(j, n_qubits, np.int16)
        self.edges = edges
        self.energy = (e + m).astype(np.uint8).reshape(-1)
        self.phases = np.exp(-0.5j * angle * np.arange(-m, m + 1)).astype(dtype)

    def apply(self, amps: np.ndarray) -> None:
        amps *= self.phases[self.energy]


def _qubit_classes(lattice: HeavyHexLattice, coloring: EdgeColoring) -> list[list[tuple[int, int]]]:
    q = {node: k for k, node in enumerate(lattice.nodes)}
    edges = set(lattice.edges)
    classes = coloring.classes()
    covered: set[Edge] = {e for cls in classes for e in cls}
    if covered != edges:
        raise SimulationError("colouring does not cover exactly the lattice edges")
    return [[(q[u], q[v]) for u, v in cls] for cls in classes]


def _layers(lattice: HeavyHexLattice, coloring: EdgeColoring, cfg: TrotterConfig) -> list[ZZLayer]:
    classes = _qubit_classes(lattice, coloring)
    order = cfg.layer_order if cfg.layer_order is not None else tuple(range(len(classes)))
    if sorted(order) != list(range(len(classes))):
        raise SimulationError(f"layer_order {order} is not a permutation of {len(classes)} classes")
    dtype = np.dtype(cfg.dtype)
    return [ZZLayer(classes[c], lattice.n_nodes, cfg.rzz_angle, dtype) for c in order if classes[c]]


def trotter_steps(
    lattice: HeavyHexLattice,
    coloring: EdgeColoring,
    cfg: TrotterConfig,
    *,
    initial: StateVector | None = None,
    max_qubits: int | None = None,
    on_step: Callable[[int, np.ndarray], None] | None = None,
) -> StateVector:
    """
    Runs cfg.n_steps steps; on_step(step, amplitudes) is called after each one.
    Starts from all spins up unless `initial` is given (it is not modified).
    """
    n = lattice.n_nodes
    check_capacity(n, max_qubits if max_qubits is not None else settings.TROTTER_MAX_QUBITS, "trotter_evolve")
    dtype = np.dtype(cfg.dtype)
    if initial is None:
        amps = StateVector.all_up(n, dtype).amplitudes
    else:
        if initial.n_qubits != n:
            raise SimulationError(f"initial state has {initial.n_qubits} qubits, lattice has {n}")
        amps = initial.amplitudes.astype(dtype, copy=True)
    layers = _layers(lattice, coloring, cfg)
    log.debug("trotter: n=%s steps=%s theta=%s layers=%s", n, cfg.n_steps, cfg.theta_h, len(layers))

    rx_first = cfg.step_order is StepOrder.RX_THEN_RZZ
    for step in range(1, cfg.n_steps + 1):
        if rx_first:
            apply_rx_layer(amps, n, cfg.theta_h)
        for layer in layers:
            layer.apply(amps)
        if not rx_first:
            apply_rx_layer(amps, n, cfg.theta_h)
        if on_step is not None:
            on_step(step, amps)
    return StateVector(amps)


def trotter_evolve(
    lattice: HeavyHexLattice,
    coloring: EdgeColoring,
    cfg: TrotterConfig,
    *,
    initial: StateVector | None = None,
    max_qubits: int | None = None,
) -> StateVector:
    """Final state of the N-step kicked-Ising circuit."""
    return trotter_steps(lattice, coloring, cfg, initial=initial, max_qubits=max_qubits)


def trotter_z_checkpoints(
    lattice: HeavyHexLattice,
    coloring: EdgeColoring,
    theta_h: float,
    checkpoints: Iterable[int],
    *,
    dtype: str = "complex128",
    step_order: StepOrder = StepOrder.RX_THEN_RZZ,
    max_qubits: int | None = None,
) -> dict[int, np.ndarray]:
    """⟨Z_k⟩ after each requested step count, from a single run to the largest one."""
    wanted = sorted(set(int(c) for c in checkpoints))
    if not wanted or wanted[0] < 0:
        raise SimulationError(f"checkpoints must be non-negative step counts, got {wanted}")
    out: dict[int, np.ndarray] = {}
    n = lattice.n_nodes

    def grab(step: int, amps: np.ndarray) -> None:
        if step in wanted:
            out[step] = StateVector(amps).z_expectations()

    if wanted[0] == 0:
        out[0] = np.ones(n)
    cfg = TrotterConfig(n_steps=wanted[-1], theta_h=theta_h, step_order=step_order, dtype=dtype)
    trotter_steps(lattice, coloring, cfg, max_qubits=max_qubits, on_step=grab)
    return out
