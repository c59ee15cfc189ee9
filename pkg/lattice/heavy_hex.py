# -*- coding: utf-8 -*-
"""
Heavy-hex lattice generators.

Fixed layouts (eagle127, falcon27) ship as JSON fixtures under lattice/data.
hexgrid(m, n) builds m rows of n fused hexagons in the same line/bridge pattern
as the 127-qubit layout: m+1 horizontal lines joined by vertical bridge nodes,
bridges every 4 columns, staggered by 2 between consecutive gaps.
"""

from __future__ import annotations

import logging
import re
from collections import deque
from functools import lru_cache
from pathlib import Path

from lattice.base import Edge, HeavyHexLattice, LatticeError, load_lattice
from models import LatticeKind

log = logging.getLogger(__name__)

_DATA_DIR = Path(__file__).resolve().parent / "data"
_HEXGRID_RE = re.compile(r"^hexgrid\(\s*(\d+)\s*,\s*(\d+)\s*\)$")


@lru_cache(maxsize=None)
def _fixture(name: str) -> HeavyHexLattice:
    return load_lattice(_DATA_DIR / f"{name}.json")


def _bridge_columns(gap: int, n: int) -> list[int]:
    offset = 0 if gap % 2 == 0 else 2
    return [offset + 4 * i for i in range(n + 1)]


def hexgrid(m: int, n: int) -> HeavyHexLattice:
    """m rows × n hexagons; node numbering row-major over (layout row, column)."""
    if m < 1 or n < 1:
        raise LatticeError(f"hexgrid needs m >= 1 and n >= 1, got ({m}, {n})")

    gaps = [_bridge_columns(g, n) for g in range(m)]
    spans: list[tuple[int, int]] = []
    for line in range(m + 1):
        cols = [c for g in (line - 1, line) if 0 <= g < m for c in gaps[g]]
        spans.append((min(cols), max(cols)))
    # первая линия дотягивается до длины второй (висячий узел, как у 127-кубитной раскладки)
    if m >= 2 and spans[1][1] > spans[0][1]:
        spans[0] = (spans[0][0], spans[0][1] + 1)

    positions: list[tuple[int, int]] = []
    for line in range(m + 1):
        lo, hi = spans[line]
        positions.extend((2 * line, c) for c in range(lo, hi + 1))
        if line < m:
            positions.extend((2 * line + 1, c) for c in gaps[line])
    index = {pos: i for i, pos in enumerate(positions)}

    edges: list[Edge] = []
    for (row, col), node in index.items():
        if row % 2 == 0:
            right = index.get((row, col + 1))
            if right is not None:
                edges.append((node, right))
        else:
            edges.append((index[(row - 1, col)], node))
            edges.append((node, index[(row + 1, col)]))

    layout = {i: pos for i, pos in enumerate(positions)}
    return HeavyHexLattice.build(len(positions), edges, layout, kind=f"hexgrid({m},{n})")


def parse_kind(kind: str | LatticeKind) -> tuple[LatticeKind, tuple[int, int] | None]:
    """'eagle127' | 'falcon27' | 'hexgrid(m,n)' → (kind, dims)."""
    raw = kind.value if isinstance(kind, LatticeKind) else str(kind).strip().lower()
    match = _HEXGRID_RE.match(raw)
    if match:
        return LatticeKind.HEXGRID, (int(match.group(1)), int(match.group(2)))
    try:
        parsed = LatticeKind(raw)
    except ValueError as exc:
        raise LatticeError(f"unsupported lattice kind: {kind!r}") from exc
    if parsed in (LatticeKind.HEXGRID, LatticeKind.CUSTOM):
        raise LatticeError(f"lattice kind {raw!r} needs dimensions or a JSON document")
    return parsed, None


def make_heavy_hex(kind: str | LatticeKind) -> HeavyHexLattice:
    """Build one of the supported lattices; same kind → identical numbering."""
    parsed, dims = parse_kind(kind)
    if parsed is LatticeKind.HEXGRID:
        assert dims is not None
        return hexgrid(*dims)
    return _fixture(parsed.value)


def fragment(lattice: HeavyHexLattice, n_nodes: int, root: int = 0) -> HeavyHexLattice:
    """First n_nodes reached by BFS from root (neighbors in ascending order), relabeled in visit order."""
    if not 1 <= n_nodes <= lattice.n_nodes:
        raise LatticeError(f"fragment size {n_nodes} outside 1..{lattice.n_nodes}")
    if root not in lattice.nodes:
        raise LatticeError(f"root {root} is not a lattice node")

    adjacency: dict[int, list[int]] = {n: [] for n in lattice.nodes}
    for u, v in lattice.edges:
        adjacency[u].append(v)
        adjacency[v].append(u)

    order: list[int] = []
    seen = {root}
    queue = deque([root])
    while queue and len(order) < n_nodes:
        node = queue.popleft()
        order.append(node)
        for nb in sorted(adjacency[node]):
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)

    relabel = {old: new for new, old in enumerate(order)}
    edges = [(relabel[u], relabel[v]) for u, v in lattice.edges if u in relabel and v in relabel]
    layout = {relabel[old]: lattice.layout[old] for old in order}
    return HeavyHexLattice.build(n_nodes, edges, layout, kind=LatticeKind.CUSTOM.value)


def resolve_lattice(spec: str) -> HeavyHexLattice:
    """
    CLI lattice spec: a kind ('falcon27', 'hexgrid(2,2)'), a BFS fragment
    ('falcon27:10') or a path to a lattice JSON document.
    """
    spec = spec.strip()
    path = Path(spec)
    if path.suffix.lower() == ".json":
        if not path.exists():
            raise LatticeError(f"lattice file not found: {spec}")
        return load_lattice(path)
    base, _, size = spec.rpartition(":") if ":" in spec else (spec, "", "")
    if size:
        try:
            n = int(size)
        except ValueError as exc:
            raise LatticeError(f"bad fragment size in {spec!r}") from exc
        return fragment(make_heavy_hex(base), n)
    return make_heavy_hex(spec)
