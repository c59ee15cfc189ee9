# -*- coding: utf-8 -*-
"""
Dense state vectors.

Index convention: qubit k is bit k of the amplitude index (little-endian),
bit 0 ↔ spin +1, bit 1 ↔ spin −1. Reshaped as a (2,)*n tensor in C order,
qubit k lives on axis n−1−k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from config import settings


class SimulationError(RuntimeError):
    """Simulator input mismatch or numerical failure."""


class CapacityError(SimulationError):
    """Requested system exceeds the configured qubit cap."""


def check_capacity(n_qubits: int, cap: int, what: str) -> None:
    if n_qubits > cap:
        raise CapacityError(f"{what}: {n_qubits} qubits exceed the cap of {cap}")


def axis_of(qubit: int, n_qubits: int) -> int:
    return n_qubits - 1 - qubit


def z_pattern(qubit: int, n_qubits: int, dtype=np.int8) -> np.ndarray:
    """(+1, −1) along the qubit's axis, broadcastable against the (2,)*n tensor."""
    shape = [1] * n_qubits
    shape[axis_of(qubit, n_qubits)] = 2
    return np.array([1, -1], dtype=dtype).reshape(shape)


def spins_of_indices(indices: np.ndarray, n_qubits: int) -> np.ndarray:
    """Rows of ±1 spins (int8) for basis indices."""
    bits = (np.asarray(indices, dtype=np.int64)[:, None] >> np.arange(n_qubits, dtype=np.int64)) & 1
    return (1 - 2 * bits).astype(np.int8)


@dataclass(slots=True)
class StateVector:
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes)
        if not np.iscomplexobj(amps):
            amps = amps.astype(np.complex128)
        size = amps.size
        if size < 1 or size & (size - 1):
            raise SimulationError(f"state length {size} is not a power of two")
        self.amplitudes = amps.reshape(-1)

    @property
    def n_qubits(self) -> int:
        return int(self.amplitudes.size).bit_length() - 1

    @classmethod
    def all_up(cls, n_qubits: int, dtype: str | np.dtype = np.complex128) -> "StateVector":
        amps = np.zeros(2 ** n_qubits, dtype=dtype)
        amps[0] = 1.0
        return cls(amps)

    @classmethod
    def from_spins(cls, spins: Sequence[int], dtype: str | np.dtype = np.complex128) -> "StateVector":
        """Computational basis state; spins[k] is qubit k (+1 → bit 0)."""
        index = 0
        for k, s in enumerate(spins):
            if s not in (1, -1):
                raise SimulationError(f"spin values must be ±1, got {s} at qubit {k}")
            if s == -1:
                index |= 1 << k
        amps = np.zeros(2 ** len(spins), dtype=dtype)
        amps[index] = 1.0
        return cls(amps)

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        p = np.abs(self.amplitudes).astype(np.float64) ** 2
        return p

    def _chunks(self, chunk: int | None) -> Iterable[tuple[int, np.ndarray]]:
        size = self.amplitudes.size
        step = max(1, int(chunk or settings.EXPECTATION_CHUNK))
        for start in range(0, size, step):
            stop = min(size, start + step)
            yield start, np.abs(self.amplitudes[start:stop]).astype(np.float64) ** 2

    def z_expectations(self, chunk: int | None = None) -> np.ndarray:
        """⟨Z_k⟩ for every qubit k."""
        n = self.n_qubits
        out = np.zeros(n)
        for start, p in self._chunks(chunk):
            z = spins_of_indices(np.arange(start, start + p.size), n)
            out += p @ z
        return out

    def zz_expectations(self, chunk: int | None = None) -> np.ndarray:
        """⟨Z_i Z_j⟩ matrix; diagonal set to exactly 1."""
        n = self.n_qubits
        out = np.zeros((n, n))
        for start, p in self._chunks(chunk):
            z = spins_of_indices(np.arange(start, start + p.size), n).astype(np.float64)
            out += z.T @ (z * p[:, None])
        out = (out + out.T) / 2.0
        np.fill_diagonal(out, 1.0)
        return out

    def overlap(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))
