# -*- coding: utf-8 -*-
from __future__ import annotations

import csv
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

import networkx as nx
import numpy as np

from dynamics.sampling import SampleSet
from lattice.base import HeavyHexLattice
from observables.magnetization import ObservableError, Source, _check_nonempty, _column, source_nodes

_SYM_TOL = 1e-12


@dataclass(slots=True)
class CorrelationMatrix:
    """⟨Z_iZ_j⟩ over `nodes`; symmetric with unit diagonal."""

    nodes: tuple[int, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        self.nodes = tuple(int(n) for n in self.nodes)
        vals = np.asarray(self.values, dtype=np.float64)
        n = len(self.nodes)
        if vals.shape != (n, n):
            raise ObservableError(f"correlation matrix shape {vals.shape} does not match {n} nodes")
        if not np.allclose(vals, vals.T, atol=_SYM_TOL):
            raise ObservableError("correlation matrix is not symmetric")
        vals = np.clip((vals + vals.T) / 2.0, -1.0, 1.0)
        np.fill_diagonal(vals, 1.0)
        self.values = vals

    def at(self, i: int, j: int) -> float:
        return float(self.values[_column(self.nodes, i), _column(self.nodes, j)])

    def write_csv(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["i", "j", "value"])
            for a, i in enumerate(self.nodes):
                for b, j in enumerate(self.nodes):
                    w.writerow([i, j, f"{self.values[a, b]:.17g}"])
        return path

    def to_dict(self) -> dict[str, Any]:
        return {"nodes": list(self.nodes), "values": self.values.tolist()}


def correlation_matrix(source: Source, nodes: Sequence[int] | None = None) -> CorrelationMatrix:
    _check_nonempty(source)
    labels = source_nodes(source, nodes)
    if isinstance(source, SampleSet):
        s = source.spins.astype(np.float64)
        vals = (s * source.multiplicity[:, None]).T @ s / source.num_reads
    else:
        vals = source.zz_expectations()
    return CorrelationMatrix(labels, vals)


@dataclass(slots=True)
class DistanceBinnedCorrelation:
    """Mean ⟨Z_anchor Z_j⟩ over all j at each shortest-path distance d."""

    anchor: int
    bins: list[tuple[int, float]]
    theta_h: float | None = None

    def to_dict(self) -> dict[str, Any]:
        return {"anchor": self.anchor, "theta_h": self.theta_h, "bins": [list(b) for b in self.bins]}


def _anchor_row(source: Source, labels: tuple[int, ...], anchor: int) -> np.ndarray:
    col = _column(labels, anchor)
    if isinstance(source, SampleSet):
        s = source.spins.astype(np.float64)
        return (s[:, col] * source.multiplicity) @ s / source.num_reads
    return source.zz_expectations()[col]


def distance_binned_correlation(
    source: Source,
    lattice: HeavyHexLattice,
    anchor: int,
    nodes: Sequence[int] | None = None,
    theta_h: float | None = None,
) -> DistanceBinnedCorrelation:
    """
    Shortest-path distances from `anchor` (Dijkstra, unit weights) bin the
    anchor's correlation row; the d=0 bin is exactly 1.
    """
    if anchor not in lattice.nodes:
        raise ObservableError(f"anchor {anchor} is not a lattice node")
    _check_nonempty(source)
    labels = source_nodes(source, nodes if nodes is not None else list(lattice.nodes))
    dist = nx.single_source_dijkstra_path_length(lattice.graph(), anchor)
    unreachable = [n for n in lattice.nodes if n not in dist]
    if unreachable:
        raise ObservableError(f"nodes {unreachable[:5]} are disconnected from anchor {anchor}")

    row = _anchor_row(source, labels, anchor)
    grouped: dict[int, list[float]] = defaultdict(list)
    for node in lattice.nodes:
        d = int(dist[node])
        grouped[d].append(1.0 if node == anchor else float(row[_column(labels, node)]))
    bins = [(d, float(np.clip(np.mean(v), -1.0, 1.0))) for d, v in sorted(grouped.items())]
    return DistanceBinnedCorrelation(anchor=int(anchor), bins=bins, theta_h=theta_h)


def write_distance_bins(items: Sequence[DistanceBinnedCorrelation], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["theta_h", "anchor", "distance", "value"])
        for item in items:
            theta = "" if item.theta_h is None else f"{item.theta_h:.17g}"
            for d, v in item.bins:
                w.writerow([theta, item.anchor, d, f"{v:.17g}"])
    return path
