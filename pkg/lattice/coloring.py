# -*- coding: utf-8 -*-
from __future__ import annotations

import logging

import networkx as nx

from lattice.base import Bipartition, Edge, EdgeColoring, HeavyHexLattice, LatticeError

log = logging.getLogger(__name__)

N_COLORS = 3


def _edge_order(lattice: HeavyHexLattice) -> list[Edge]:
    """Edges sorted by (row, col) of their first endpoint, horizontal before vertical."""

    def key(edge: Edge) -> tuple[int, int, int, int, int]:
        u, v = edge
        (ru, cu), (rv, cv) = lattice.layout[u], lattice.layout[v]
        vertical = int(ru != rv)
        return (min(ru, rv), min(cu, cv), vertical, u, v)

    return sorted(lattice.edges, key=key)


def _flip_chain(at: dict[int, dict[int, int]], color: dict[Edge, int], start: int, a: int, b: int) -> None:
    """Swap colors a/b along the alternating path that leaves `start` on color a."""
    path: list[Edge] = []
    node, want = start, a
    while want in at[node]:
        nxt = at[node][want]
        path.append((node, nxt))
        node, want = nxt, (b if want == a else a)

    for u, v in path:
        c = color[(min(u, v), max(u, v))]
        del at[u][c]
        del at[v][c]
    for u, v in path:
        key = (min(u, v), max(u, v))
        c = b if color[key] == a else a
        color[key] = c
        at[u][c] = v
        at[v][c] = u


def three_edge_coloring(lattice: HeavyHexLattice) -> EdgeColoring:
    """
    Greedy edge coloring in layout order with Kempe-chain repair.

    When the two endpoints have no common free color, the a/b alternating chain
    starting at v is flipped. In a bipartite graph that chain cannot end at u,
    so after the flip color a is free at both ends.
    """
    degree = lattice.degrees()
    worst = max(degree.values(), default=0)
    if worst > N_COLORS:
        raise LatticeError(f"three_edge_coloring needs max degree <= 3, got {worst}")

    color: dict[Edge, int] = {}
    at: dict[int, dict[int, int]] = {n: {} for n in lattice.nodes}

    for u, v in _edge_order(lattice):
        free_u = [c for c in range(N_COLORS) if c not in at[u]]
        free_v = [c for c in range(N_COLORS) if c not in at[v]]
        common = [c for c in free_u if c in free_v]
        if common:
            c = common[0]
        else:
            a, b = free_u[0], free_v[0]
            _flip_chain(at, color, v, a, b)
            if a in at[u] or a in at[v]:
                raise LatticeError(f"Kempe chain through ({u}, {v}) closed an odd cycle")
            c = a
        color[(u, v)] = c
        at[u][c] = v
        at[v][c] = u

    coloring = EdgeColoring(color=color)
    if not is_proper_edge_coloring(lattice, coloring):
        raise LatticeError("edge coloring is not proper")
    log.debug("colored %s edges of %s: class sizes %s", lattice.n_edges, lattice.kind,
              [len(c) for c in coloring.classes()])
    return coloring


def is_proper_edge_coloring(lattice: HeavyHexLattice, coloring: EdgeColoring) -> bool:
    """Every edge colored from {0,1,2}; no node sees the same color twice."""
    if set(coloring.color) != set(lattice.edges):
        return False
    seen: dict[int, set[int]] = {n: set() for n in lattice.nodes}
    for (u, v), c in coloring.color.items():
        if c not in range(N_COLORS) or c in seen[u] or c in seen[v]:
            return False
        seen[u].add(c)
        seen[v].add(c)
    return True


def bipartition(lattice: HeavyHexLattice) -> Bipartition:
    """Two-coloring of the nodes; node 0 always lands on side 0."""
    try:
        raw = nx.bipartite.color(lattice.graph())
    except nx.NetworkXError as exc:
        raise LatticeError(f"odd cycle detected in {lattice.kind} lattice") from exc
    flip = raw.get(0, 0)
    return Bipartition(side={int(n): int(s) ^ flip for n, s in sorted(raw.items())})
