# -*- coding: utf-8 -*-
from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from dynamics.state import SimulationError, StateVector, spins_of_indices

log = logging.getLogger(__name__)


@dataclass(slots=True)
class SampleSet:
    """
    Aggregated Z-basis reads.

    spins[r, k] is the ±1 value of nodes[k] in record r; multiplicity[r] ≥ 1.
    Records are unique and kept in lexicographic order of their spin rows.
    """

    nodes: tuple[int, ...]
    spins: np.ndarray
    multiplicity: np.ndarray
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.nodes = tuple(int(n) for n in self.nodes)
        spins = np.asarray(self.spins, dtype=np.int8).reshape(-1, len(self.nodes))
        mult = np.asarray(self.multiplicity, dtype=np.int64).reshape(-1)
        if spins.shape[0] != mult.shape[0]:
            raise SimulationError(f"{spins.shape[0]} records but {mult.shape[0]} multiplicities")
        if mult.size and mult.min() < 1:
            raise SimulationError("multiplicities must be ≥ 1")
        if spins.size and not np.all(np.abs(spins) == 1):
            raise SimulationError("spins must be ±1")
        if len(set(self.nodes)) != len(self.nodes):
            raise SimulationError("duplicate node labels in sample set")
        self.spins = spins
        self.multiplicity = mult

    @property
    def num_reads(self) -> int:
        return int(self.multiplicity.sum())

    @property
    def num_records(self) -> int:
        return int(self.spins.shape[0])

    def column_of(self, node: int) -> int:
        try:
            return self.nodes.index(int(node))
        except ValueError:
            raise SimulationError(f"node {node} is not in the sample set") from None

    def aggregate(self) -> "SampleSet":
        if not self.num_records:
            return self
        uniq, inverse = np.unique(self.spins, axis=0, return_inverse=True)
        mult = np.bincount(inverse.reshape(-1), weights=self.multiplicity, minlength=uniq.shape[0])
        return SampleSet(self.nodes, uniq, mult.astype(np.int64), dict(self.metadata))

    def relabel(self, mapping: dict[int, int]) -> "SampleSet":
        """New node labels; columns reordered so labels stay ascending."""
        labels = [mapping[n] for n in self.nodes]
        order = np.argsort(labels, kind="stable")
        return SampleSet(
            tuple(labels[i] for i in order), self.spins[:, order], self.multiplicity.copy(), dict(self.metadata)
        )

    def restrict(self, nodes: Iterable[int]) -> "SampleSet":
        cols = [self.column_of(n) for n in nodes]
        picked = SampleSet(tuple(self.nodes[c] for c in cols), self.spins[:, cols], self.multiplicity, dict(self.metadata))
        return picked.aggregate()

    @classmethod
    def concatenate(cls, sets: Sequence["SampleSet"], metadata: dict[str, Any] | None = None) -> "SampleSet":
        if not sets:
            raise SimulationError("nothing to concatenate")
        nodes = sets[0].nodes
        if any(s.nodes != nodes for s in sets):
            raise SimulationError("sample sets cover different nodes")
        merged = cls(
            nodes,
            np.concatenate([s.spins for s in sets]),
            np.concatenate([s.multiplicity for s in sets]),
            dict(metadata if metadata is not None else sets[0].metadata),
        )
        return merged.aggregate()

    # ---------- Сериализация ----------

    def to_dict(self) -> dict[str, Any]:
        return {
            "nodes": list(self.nodes),
            "records": [
                {"spins": row.tolist(), "multiplicity": int(m)} for row, m in zip(self.spins, self.multiplicity)
            ],
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SampleSet":
        records = data.get("records", [])
        nodes = tuple(int(n) for n in data["nodes"])
        spins = np.array([r["spins"] for r in records], dtype=np.int8).reshape(-1, len(nodes))
        mult = np.array([r["multiplicity"] for r in records], dtype=np.int64)
        return cls(nodes, spins, mult, dict(data.get("metadata") or {}))

    def write_csv(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as f:
            f.write("# " + json.dumps(self.metadata, sort_keys=True) + "\n")
            w = csv.writer(f, lineterminator="\n")
            w.writerow([*self.nodes, "multiplicity"])
            for row, m in zip(self.spins, self.multiplicity):
                w.writerow([*row.tolist(), int(m)])
        return path

    @classmethod
    def read_csv(cls, path: str | Path) -> "SampleSet":
        path = Path(path)
        with path.open("r", encoding="utf-8", newline="") as f:
            lines = f.read().splitlines()
        metadata: dict[str, Any] = {}
        if lines and lines[0].startswith("#"):
            try:
                metadata = json.loads(lines[0][1:].strip() or "{}")
            except json.JSONDecodeError as e:
                raise SimulationError(f"{path}: bad metadata line: {e}") from e
            lines = lines[1:]
        rows = list(csv.reader(lines))
        if not rows or rows[0][-1] != "multiplicity":
            raise SimulationError(f"{path}: header must end with 'multiplicity'")
        nodes = tuple(int(x) for x in rows[0][:-1])
        body = [r for r in rows[1:] if r]
        spins = np.array([[int(x) for x in r[:-1]] for r in body], dtype=np.int8).reshape(-1, len(nodes))
        mult = np.array([int(r[-1]) for r in body], dtype=np.int64)
        return cls(nodes, spins, mult, metadata)


def sample_z(
    state: StateVector,
    shots: int,
    seed: int | Sequence[int] | None,
    *,
    nodes: Sequence[int] | None = None,
    metadata: dict[str, Any] | None = None,
) -> SampleSet:
    """
    Draws `shots` Z-basis reads; bit 0 → +1, bit 1 → −1.
    Column k is qubit k, labelled nodes[k] (default 0..n−1).
    """
    if shots < 1:
        raise SimulationError(f"shots must be ≥ 1, got {shots}")
    n = state.n_qubits
    labels = tuple(nodes) if nodes is not None else tuple(range(n))
    if len(labels) != n:
        raise SimulationError(f"{len(labels)} node labels for a {n}-qubit state")
    p = state.probabilities()
    p = p / p.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(int(shots), p)
    idx = np.nonzero(counts)[0]
    out = SampleSet(labels, spins_of_indices(idx, n), counts[idx], dict(metadata or {}))
    return out.aggregate()
