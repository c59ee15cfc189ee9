# -*- coding: utf-8 -*-
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

import dwave_networkx as dnx
import networkx as nx

log = logging.getLogger(__name__)

Coord = tuple[int, int, int, int]
Shifts = tuple[tuple[int, ...], tuple[int, ...]]

# сдвиги линий по k для u=0 и u=1 (раскладка Advantage)
SHIFTS: Shifts = (
    (2, 2, 2, 2, 10, 10, 10, 10, 6, 6, 6, 6),
    (6, 6, 6, 6, 2, 2, 2, 2, 10, 10, 10, 10),
)


class PegasusError(ValueError):
    """Bad Pegasus size, defect list or coordinate."""


@dataclass(slots=True)
class DefectList:
    """Inactive qubits and couplers of one device (linear Pegasus indices)."""

    nodes: list[int] = field(default_factory=list)
    edges: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.nodes = sorted({int(q) for q in self.nodes})
        self.edges = sorted({(min(int(u), int(v)), max(int(u), int(v))) for u, v in self.edges})

    def to_dict(self) -> dict[str, Any]:
        return {"nodes": list(self.nodes), "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "DefectList":
        return cls(nodes=list(data.get("nodes", [])), edges=[tuple(e) for e in data.get("edges", [])])

    def is_empty(self) -> bool:
        return not self.nodes and not self.edges


def load_defects(path: str | Path) -> DefectList:
    with open(path, "r", encoding="utf-8") as fh:
        return DefectList.from_dict(json.load(fh))


@dataclass(slots=True)
class PegasusGraph:
    """
    Working Pegasus P_size graph with linear node labels and defects removed.

    Coordinates are (u, w, k, z): orientation, perpendicular offset,
    track within the offset, position along the line.
    """

    size: int
    graph: nx.Graph
    defects: DefectList = field(default_factory=DefectList)
    _coords: Any = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self._coords is None:
            self._coords = dnx.pegasus_coordinates(self.size)

    @property
    def n_nodes(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def n_edges(self) -> int:
        return self.graph.number_of_edges()

    @property
    def index_range(self) -> int:
        """Linear indices run 0..24·m·(m−1)−1."""
        return 24 * self.size * (self.size - 1)

    def coord(self, q: int) -> Coord:
        return tuple(int(x) for x in self._coords.linear_to_pegasus(int(q)))  # type: ignore[return-value]

    def linear(self, coord: Iterable[int]) -> int | None:
        """Linear index of (u, w, k, z); None when outside the coordinate ranges."""
        u, w, k, z = (int(x) for x in coord)
        m = self.size
        if u not in (0, 1) or not (0 <= w < m and 0 <= k < 12 and 0 <= z < m - 1):
            return None
        return int(self._coords.pegasus_to_linear((u, w, k, z)))

    def has_node(self, q: int) -> bool:
        return self.graph.has_node(q)

    def has_edge(self, p: int, q: int) -> bool:
        return self.graph.has_edge(p, q)

    def common_neighbors(self, nodes: Iterable[int]) -> set[int]:
        it = iter(nodes)
        out = set(self.graph[next(it)])
        for q in it:
            out &= set(self.graph[q])
        return out

    def without(self, nodes: Iterable[int]) -> "PegasusGraph":
        """Copy with extra qubits removed (used for repeated disjoint searches)."""
        g = self.graph.copy()
        g.remove_nodes_from(list(nodes))
        return PegasusGraph(size=self.size, graph=g, defects=self.defects, _coords=self._coords)


def make_pegasus(size: int, defects: DefectList | None = None) -> PegasusGraph:
    """Fabric-only P_size graph minus the listed defects."""
    if size < 2:
        raise PegasusError(f"Pegasus size must be >= 2, got {size}")
    defects = defects or DefectList()
    limit = 24 * size * (size - 1)

    for q in defects.nodes:
        if not 0 <= q < limit:
            raise PegasusError(f"defect qubit {q} outside 0..{limit - 1}")
    for u, v in defects.edges:
        if not (0 <= u < limit and 0 <= v < limit):
            raise PegasusError(f"defect coupler ({u}, {v}) outside 0..{limit - 1}")

    g = dnx.pegasus_graph(size, fabric_only=True)
    stray_nodes = [q for q in defects.nodes if not g.has_node(q)]
    if stray_nodes:
        raise PegasusError(f"defect qubits {stray_nodes[:5]} are not fabric qubits of P{size}")
    stray_edges = [e for e in defects.edges if not g.has_edge(*e)]
    if stray_edges:
        raise PegasusError(f"defect couplers {stray_edges[:5]} are not fabric couplers of P{size}")
    g.remove_edges_from(defects.edges)
    g.remove_nodes_from(defects.nodes)

    pg = PegasusGraph(size=size, graph=g, defects=defects)
    log.info("P%s ready: %s qubits, %s couplers (%s qubit / %s coupler defects)",
             size, pg.n_nodes, pg.n_edges, len(defects.nodes), len(defects.edges))
    return pg


def _segment(c: Coord, shifts: Shifts) -> tuple[int, int, int]:
    """(perpendicular position, span start, span end) of a qubit line, span half-open."""
    u, w, k, z = c
    start = 12 * z + shifts[u][k]
    return 12 * w + k, start, start + 12


def coupler_class(a: Coord, b: Coord, shifts: Shifts = SHIFTS) -> str | None:
    """
    'internal' | 'odd' | 'external' for a coordinate pair, None when the rules admit no coupler.

    internal: orthogonal lines that cross; odd: same line block (u, w, z),
    tracks 2j and 2j+1; external: same track (u, w, k), neighbouring z.
    """
    if a[0] != b[0]:
        pos_a, lo_a, hi_a = _segment(a, shifts)
        pos_b, lo_b, hi_b = _segment(b, shifts)
        if lo_a <= pos_b < hi_a and lo_b <= pos_a < hi_b:
            return "internal"
        return None
    if a[1] != b[1]:
        return None
    if a[3] == b[3] and a[2] != b[2] and a[2] // 2 == b[2] // 2:
        return "odd"
    if a[2] == b[2] and abs(a[3] - b[3]) == 1:
        return "external"
    return None
