# -*- coding: utf-8 -*-
"""Spin-reversal (gauge) transforms of models, samples, states and expectations."""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from dynamics.ising import IsingModel
from dynamics.sampling import SampleSet
from dynamics.state import SimulationError, StateVector

Gauge = Mapping[int, int]


class GaugeError(SimulationError):
    pass


def _check(r: Gauge, nodes: Sequence[int]) -> np.ndarray:
    missing = [n for n in nodes if n not in r]
    if missing:
        raise GaugeError(f"gauge undefined on nodes {missing[:5]}")
    vec = np.array([r[n] for n in nodes], dtype=np.int8)
    if not np.all(np.abs(vec) == 1):
        raise GaugeError("gauge values must be ±1")
    return vec


def identity_gauge(nodes: Sequence[int]) -> dict[int, int]:
    return {int(n): 1 for n in nodes}


def random_gauges(nodes: Sequence[int], count: int, rng: np.random.Generator) -> list[dict[int, int]]:
    """`count` independent uniform gauges; count=0 yields the identity only."""
    if count <= 0:
        return [identity_gauge(nodes)]
    draws = rng.choice(np.array([1, -1], dtype=np.int8), size=(count, len(nodes)))
    return [{int(n): int(v) for n, v in zip(nodes, row)} for row in draws]


def gauge_transform(model: IsingModel, r: Gauge) -> IsingModel:
    """h_i → r_i h_i, J_ij → r_i r_j J_ij."""
    _check(r, model.nodes)
    return IsingModel(
        nodes=model.nodes,
        h={n: r[n] * x for n, x in model.h.items()},
        j={(u, v): r[u] * r[v] * x for (u, v), x in model.j.items()},
        lattice=model.lattice,
    )


def ungauge(samples: SampleSet, r: Gauge) -> SampleSet:
    """s_i → r_i s_i on every record."""
    vec = _check(r, samples.nodes)
    flipped = SampleSet(samples.nodes, samples.spins * vec[None, :], samples.multiplicity, dict(samples.metadata))
    return flipped.aggregate()


def gauge_mask(r: Gauge, nodes: Sequence[int]) -> int:
    vec = _check(r, nodes)
    return sum(1 << k for k, v in enumerate(vec) if v == -1)


def gauge_state(state: StateVector, r: Gauge, nodes: Sequence[int]) -> StateVector:
    """Applies X on every flipped qubit (qubit k ↔ nodes[k])."""
    if state.n_qubits != len(nodes):
        raise GaugeError(f"{len(nodes)} nodes for a {state.n_qubits}-qubit state")
    mask = gauge_mask(r, nodes)
    if not mask:
        return state.copy()
    idx = np.arange(state.amplitudes.size, dtype=np.int64)
    return StateVector(state.amplitudes[idx ^ mask])


def ungauge_expectations(z: np.ndarray, r: Gauge, nodes: Sequence[int]) -> np.ndarray:
    return np.asarray(z, dtype=float) * _check(r, nodes)
