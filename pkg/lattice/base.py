# -*- coding: utf-8 -*-
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

import networkx as nx

log = logging.getLogger(__name__)

Edge = tuple[int, int]


class LatticeError(ValueError):
    """Raised when a lattice or one of its derived structures is malformed."""


def canonical_edge(u: int, v: int) -> Edge:
    u, v = int(u), int(v)
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, slots=True)
class HeavyHexLattice:
    """Problem graph: nodes 0..n_nodes-1, canonical sorted edges, grid layout."""

    n_nodes: int
    edges: tuple[Edge, ...]
    layout: dict[int, tuple[int, int]] = field(default_factory=dict, compare=False)
    kind: str = "custom"

    @classmethod
    def build(
        cls,
        n_nodes: int,
        edges: Iterable[tuple[int, int]],
        layout: dict[int, tuple[int, int]] | None = None,
        kind: str = "custom",
    ) -> "HeavyHexLattice":
        """Canonicalize edges, fill missing layout entries, validate."""
        canon = sorted(canonical_edge(u, v) for u, v in edges)
        lay = {int(k): (int(v[0]), int(v[1])) for k, v in (layout or {}).items()}
        for node in range(n_nodes):
            lay.setdefault(node, (0, node))
        lattice = cls(n_nodes=int(n_nodes), edges=tuple(canon), layout=lay, kind=kind)
        lattice.validate()
        return lattice

    @property
    def nodes(self) -> range:
        return range(self.n_nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(self.edges)
        return g

    def degrees(self) -> dict[int, int]:
        deg = {n: 0 for n in self.nodes}
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def neighbors(self, node: int) -> list[int]:
        return sorted({v for u, v in self.edges if u == node} | {u for u, v in self.edges if v == node})

    def validate(self) -> None:
        """Check the heavy-hex invariants; raise LatticeError naming the first violation."""
        if self.n_nodes < 1:
            raise LatticeError(f"lattice needs at least one node, got n_nodes={self.n_nodes}")
        seen: set[Edge] = set()
        for u, v in self.edges:
            if u == v:
                raise LatticeError(f"self-loop at node {u}")
            if not (0 <= u < self.n_nodes and 0 <= v < self.n_nodes):
                raise LatticeError(f"edge ({u}, {v}) references a node outside 0..{self.n_nodes - 1}")
            if (u, v) in seen:
                raise LatticeError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        worst = max(self.degrees().items(), key=lambda kv: kv[1])
        if worst[1] > 3:
            raise LatticeError(f"node {worst[0]} has degree {worst[1]} > 3")
        if self.n_nodes > 1 and not nx.is_connected(self.graph()):
            raise LatticeError("lattice is not connected")

    # ---------- JSON ----------
    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "n_nodes": self.n_nodes,
            "edges": [list(e) for e in self.edges],
            "layout": {str(n): list(self.layout[n]) for n in self.nodes},
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "HeavyHexLattice":
        try:
            n_nodes = int(data["n_nodes"])
            edges = [(int(u), int(v)) for u, v in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise LatticeError(f"malformed lattice document: {exc}") from exc
        layout = {int(k): tuple(v) for k, v in (data.get("layout") or {}).items()}
        return cls.build(n_nodes, edges, layout, kind=str(data.get("kind", "custom")))


def load_lattice(path: str | Path) -> HeavyHexLattice:
    with open(path, "r", encoding="utf-8") as fh:
        return HeavyHexLattice.from_dict(json.load(fh))


def save_lattice(lattice: HeavyHexLattice, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(lattice.to_dict(), indent=2) + "\n", encoding="utf-8")
    log.info("lattice %s written to %s", lattice.kind, path)
    return path


@dataclass(frozen=True, slots=True)
class EdgeColoring:
    """color: edge → {0, 1, 2}."""

    color: dict[Edge, int]

    def classes(self) -> list[list[Edge]]:
        """Edges grouped by color, each class sorted; classes ordered by color."""
        n_colors = max(self.color.values(), default=-1) + 1
        out: list[list[Edge]] = [[] for _ in range(n_colors)]
        for edge, c in sorted(self.color.items()):
            out[c].append(edge)
        return out

    def to_dict(self) -> dict[str, Any]:
        return {"colors": [[u, v, c] for (u, v), c in sorted(self.color.items())]}


@dataclass(frozen=True, slots=True)
class Bipartition:
    side: dict[int, int]

    def members(self, which: int) -> list[int]:
        return sorted(n for n, s in self.side.items() if s == which)
