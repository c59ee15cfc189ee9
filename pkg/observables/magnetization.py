# -*- coding: utf-8 -*-
from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Sequence, Union

import numpy as np

from dynamics.sampling import SampleSet
from dynamics.state import StateVector
from lattice.base import HeavyHexLattice

log = logging.getLogger(__name__)

Source = Union[SampleSet, StateVector]


class ObservableError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Scope:
    """Lattice mean (node=None) or a single site."""

    node: int | None = None

    @classmethod
    def parse(cls, text: str) -> "Scope":
        t = (text or "").strip().lower()
        if t in ("", "mean", "lattice_mean"):
            return cls()
        head, _, tail = t.partition(":")
        if head in ("site", "single_site") and tail:
            try:
                return cls(int(tail))
            except ValueError:
                pass
        raise ObservableError(f"unknown observable scope {text!r} (use 'mean' or 'site:<node>')")

    @property
    def label(self) -> str:
        return "lattice_mean" if self.node is None else f"site:{self.node}"


@dataclass(frozen=True, slots=True)
class Estimate:
    value: float
    stderr: float = 0.0


# ---------- Вспомогательное ----------

def _state_nodes(state: StateVector, nodes: Sequence[int] | None) -> tuple[int, ...]:
    labels = tuple(nodes) if nodes is not None else tuple(range(state.n_qubits))
    if len(labels) != state.n_qubits:
        raise ObservableError(f"{len(labels)} node labels for a {state.n_qubits}-qubit state")
    return labels


def _check_nonempty(source: Source) -> None:
    if isinstance(source, SampleSet) and source.num_reads == 0:
        raise ObservableError("empty sample set")


def source_nodes(source: Source, nodes: Sequence[int] | None = None) -> tuple[int, ...]:
    if isinstance(source, SampleSet):
        return source.nodes
    return _state_nodes(source, nodes)


def site_magnetization(source: Source, nodes: Sequence[int] | None = None) -> np.ndarray:
    """⟨Z⟩ per node, in the source's node order."""
    _check_nonempty(source)
    if isinstance(source, SampleSet):
        return (source.multiplicity @ source.spins.astype(np.float64)) / source.num_reads
    _state_nodes(source, nodes)
    return source.z_expectations()


def _column(labels: tuple[int, ...], node: int) -> int:
    try:
        return labels.index(int(node))
    except ValueError:
        raise ObservableError(f"unknown node {node}") from None


def _record_stderr(values: np.ndarray) -> float:
    # по записям, без учёта кратности
    records = len(values)
    if records < 2:
        return 0.0
    return float(np.std(values, ddof=1)) / math.sqrt(records)


def magnetization(source: Source, scope: Scope | str = Scope(), nodes: Sequence[int] | None = None) -> Estimate:
    """
    Mean spin over all nodes (lattice mean) or of one node.

    Sample values are multiplicity-weighted. Their stderr is the sample
    standard deviation of the per-record values over √records; exact states
    report stderr 0.
    """
    if isinstance(scope, str):
        scope = Scope.parse(scope)
    labels = source_nodes(source, nodes)
    per_site = site_magnetization(source, nodes)
    if scope.node is None:
        value = float(np.mean(per_site))
        per_record = source.spins.mean(axis=1) if isinstance(source, SampleSet) else None
    else:
        col = _column(labels, scope.node)
        value = float(per_site[col])
        per_record = source.spins[:, col].astype(np.float64) if isinstance(source, SampleSet) else None
    stderr = _record_stderr(per_record) if per_record is not None else 0.0
    return Estimate(value=value, stderr=stderr)


# ---------- Кривые ----------

@dataclass(slots=True)
class MagnetizationCurve:
    points: list[tuple[float, float, float]]
    scope: Scope = Scope()

    def __post_init__(self) -> None:
        self.points = [(float(t), float(v), float(e)) for t, v, e in self.points]
        thetas = [p[0] for p in self.points]
        if any(b <= a for a, b in zip(thetas, thetas[1:])):
            raise ObservableError("curve θ values must be strictly ascending")
        bad = [v for _, v, _ in self.points if abs(v) > 1.0 + 1e-12]
        if bad:
            raise ObservableError(f"magnetization outside [−1, 1]: {bad[:3]}")

    @property
    def thetas(self) -> np.ndarray:
        return np.array([p[0] for p in self.points])

    @property
    def values(self) -> np.ndarray:
        return np.array([p[1] for p in self.points])

    @classmethod
    def from_sources(
        cls, pairs: Iterable[tuple[float, Source]], scope: Scope | str = Scope(), nodes: Sequence[int] | None = None
    ) -> "MagnetizationCurve":
        if isinstance(scope, str):
            scope = Scope.parse(scope)
        pts = []
        for theta, src in sorted(pairs, key=lambda p: p[0]):
            est = magnetization(src, scope, nodes)
            pts.append((theta, est.value, est.stderr))
        return cls(pts, scope)

    def write_csv(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["theta_h", "value", "stderr"])
            for t, v, e in self.points:
                w.writerow([f"{t:.17g}", f"{v:.17g}", f"{e:.17g}"])
        return path

    @classmethod
    def read_csv(cls, path: str | Path, scope: Scope | str = Scope()) -> "MagnetizationCurve":
        if isinstance(scope, str):
            scope = Scope.parse(scope)
        with Path(path).open("r", encoding="utf-8", newline="") as f:
            rows = list(csv.DictReader(f))
        try:
            pts = [(float(r["theta_h"]), float(r["value"]), float(r.get("stderr") or 0.0)) for r in rows]
        except (KeyError, ValueError) as e:
            raise ObservableError(f"{path}: expected columns theta_h,value,stderr ({e})") from e
        return cls(pts, scope)

    def to_dict(self) -> dict[str, Any]:
        return {"scope": self.scope.label, "points": [list(p) for p in self.points]}


def site_magnetization_table(
    source: Source, lattice: HeavyHexLattice, nodes: Sequence[int] | None = None
) -> list[tuple[int, int, int, float]]:
    """(node, layout row, layout col, ⟨Z⟩) for every lattice node."""
    labels = source_nodes(source, nodes if nodes is not None else list(lattice.nodes))
    z = site_magnetization(source, labels)
    rows = []
    for node in lattice.nodes:
        r, c = lattice.layout[node]
        rows.append((node, r, c, float(z[_column(labels, node)])))
    return rows


def write_site_table(rows: Sequence[tuple[int, int, int, float]], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["node", "row", "col", "value"])
        for node, r, c, v in rows:
            w.writerow([node, r, c, f"{v:.17g}"])
    return path
