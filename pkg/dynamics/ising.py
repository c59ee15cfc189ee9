# -*- coding: utf-8 -*-
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

from lattice.base import Edge, HeavyHexLattice, canonical_edge
from dynamics.state import SimulationError


@dataclass(slots=True)
class IsingModel:
    """
    h_i Z_i + J_ij Z_i Z_j on an ordered node set.

    Qubit k of a simulation is nodes[k]; nodes are kept sorted.
    `lattice` is set for single-lattice models and None for composed ones.
    """

    nodes: tuple[int, ...]
    h: dict[int, float] = field(default_factory=dict)
    j: dict[Edge, float] = field(default_factory=dict)
    lattice: HeavyHexLattice | None = None

    def __post_init__(self) -> None:
        self.nodes = tuple(sorted(int(n) for n in self.nodes))
        node_set = set(self.nodes)
        if len(node_set) != len(self.nodes):
            raise SimulationError("duplicate nodes in Ising model")
        self.h = {int(n): float(v) for n, v in self.h.items()}
        self.j = {canonical_edge(u, v): float(x) for (u, v), x in self.j.items()}
        for n in self.h:
            if n not in node_set:
                raise SimulationError(f"field on unknown node {n}")
        for u, v in self.j:
            if u not in node_set or v not in node_set:
                raise SimulationError(f"coupler ({u}, {v}) references an unknown node")
        if self.lattice is not None:
            if self.nodes != tuple(self.lattice.nodes):
                raise SimulationError("model nodes must match the lattice nodes")
            edges = set(self.lattice.edges)
            stray = [e for e in self.j if e not in edges]
            if stray:
                raise SimulationError(f"couplers {stray[:3]} are not lattice edges")

    @classmethod
    def from_lattice(cls, lattice: HeavyHexLattice, j_qa: float, h: float = 0.0) -> "IsingModel":
        """Uniform couplers on every lattice edge, uniform field (0 unless h-gain encoding)."""
        return cls(
            nodes=tuple(lattice.nodes),
            h={n: h for n in lattice.nodes} if h else {},
            j={e: j_qa for e in lattice.edges},
            lattice=lattice,
        )

    @property
    def n(self) -> int:
        return len(self.nodes)

    def qubit_of(self) -> dict[int, int]:
        return {node: k for k, node in enumerate(self.nodes)}

    def h_vector(self) -> np.ndarray:
        return np.array([self.h.get(n, 0.0) for n in self.nodes])

    def couplings(self) -> list[tuple[int, int, float]]:
        """(qubit_i, qubit_j, J) in canonical edge order."""
        q = self.qubit_of()
        return [(q[u], q[v], x) for (u, v), x in sorted(self.j.items())]

    def restrict(self, nodes: Iterable[int]) -> "IsingModel":
        keep = set(int(n) for n in nodes)
        return IsingModel(
            nodes=tuple(keep),
            h={n: x for n, x in self.h.items() if n in keep},
            j={e: x for e, x in self.j.items() if e[0] in keep and e[1] in keep},
        )

    def relabel(self, mapping: dict[int, int], lattice: HeavyHexLattice | None = None) -> "IsingModel":
        return IsingModel(
            nodes=tuple(mapping[n] for n in self.nodes),
            h={mapping[n]: x for n, x in self.h.items()},
            j={(mapping[u], mapping[v]): x for (u, v), x in self.j.items()},
            lattice=lattice,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "nodes": list(self.nodes),
            "h": {str(n): x for n, x in sorted(self.h.items())},
            "j": [[u, v, x] for (u, v), x in sorted(self.j.items())],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any], lattice: HeavyHexLattice | None = None) -> "IsingModel":
        return cls(
            nodes=tuple(int(n) for n in data["nodes"]),
            h={int(n): float(x) for n, x in (data.get("h") or {}).items()},
            j={(int(u), int(v)): float(x) for u, v, x in data.get("j", [])},
            lattice=lattice,
        )
