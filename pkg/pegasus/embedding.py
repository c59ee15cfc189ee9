# -*- coding: utf-8 -*-
"""
Native one-to-one embeddings of heavy-hex lattices into Pegasus.

Template tiling: every lattice line (even layout row) rides one horizontal
Pegasus line (u=0) with column c at z=c; every bridge node is a vertical qubit
(u=1) crossing both of its line images. Copies are produced by translating the
base tile: horizontals move in w, verticals in z, by the template period.

Randomized search: seeded depth-first placement with backtracking, capped per
attempt, for lattices without a template.
"""

from __future__ import annotations

import json
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any

import numpy as np

from lattice.base import HeavyHexLattice
from pegasus.graph import Coord, PegasusError, PegasusGraph, make_pegasus

log = logging.getLogger(__name__)

_DATA_DIR = Path(__file__).resolve().parent / "data"


class EmbeddingError(PegasusError):
    """A template cannot be resolved or an embedding request is malformed."""


@dataclass(slots=True)
class Embedding:
    """Injective lattice node → Pegasus qubit map."""

    mapping: dict[int, int]
    tile_index: int = 0

    def images(self) -> set[int]:
        return set(self.mapping.values())

    def inverse(self) -> dict[int, int]:
        return {q: n for n, q in self.mapping.items()}

    def to_dict(self) -> dict[str, Any]:
        return {"tile_index": self.tile_index, "mapping": {str(k): v for k, v in sorted(self.mapping.items())}}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Embedding":
        return cls(
            mapping={int(k): int(v) for k, v in data["mapping"].items()},
            tile_index=int(data.get("tile_index", 0)),
        )


@dataclass(slots=True)
class Violation:
    kind: str  # unmapped | injectivity | defect | edge
    detail: str


@dataclass(slots=True)
class EmbeddingReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


@dataclass(slots=True)
class TilingResult:
    embeddings: list[Embedding]
    pegasus_size: int
    rejected: dict[int, str] = field(default_factory=dict)  # translation → reason

    @property
    def n_tiles(self) -> int:
        return len(self.embeddings)

    def to_dict(self) -> dict[str, Any]:
        return {
            "pegasus_size": self.pegasus_size,
            "n_tiles": self.n_tiles,
            "embeddings": [e.to_dict() for e in self.embeddings],
            "rejected": {str(k): v for k, v in sorted(self.rejected.items())},
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TilingResult":
        return cls(
            embeddings=[Embedding.from_dict(e) for e in data["embeddings"]],
            pegasus_size=int(data.get("pegasus_size", 16)),
            rejected={int(k): str(v) for k, v in (data.get("rejected") or {}).items()},
        )


@dataclass(slots=True)
class EmbedSearchResult:
    embedding: Embedding | None
    attempts_used: int

    @property
    def found(self) -> bool:
        return self.embedding is not None


def verify_embedding(embedding: Embedding, lattice: HeavyHexLattice, pg: PegasusGraph) -> EmbeddingReport:
    """Check coverage, injectivity, defect avoidance and edge preservation."""
    report = EmbeddingReport()
    mapping = embedding.mapping

    for node in lattice.nodes:
        if node not in mapping:
            report.violations.append(Violation("unmapped", f"lattice node {node} has no image"))

    owners: dict[int, int] = {}
    for node, q in sorted(mapping.items()):
        if q in owners:
            report.violations.append(
                Violation("injectivity", f"nodes {owners[q]} and {node} both map to qubit {q}")
            )
        owners.setdefault(q, node)
        if not pg.has_node(q):
            report.violations.append(Violation("defect", f"node {node} maps to inactive qubit {q}"))

    for u, v in lattice.edges:
        if u in mapping and v in mapping and not pg.has_edge(mapping[u], mapping[v]):
            report.violations.append(
                Violation("edge", f"edge ({u}, {v}) → ({mapping[u]}, {mapping[v]}) is not an active coupler")
            )
    return report


# ---------- Template tiling ----------

@lru_cache(maxsize=None)
def _load_template(kind: str) -> dict[str, Any]:
    path = _DATA_DIR / f"{kind}_tile.json"
    if not path.exists():
        raise EmbeddingError(f"no tile template for lattice kind {kind!r}")
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def base_tile(lattice: HeavyHexLattice, size: int, template: dict[str, Any] | None = None) -> dict[int, Coord]:
    """
    Resolve the template to coordinates on a defect-free P_size graph.

    Bridge qubits: lowest-index unused vertical qubit coupled to both line images.
    """
    template = template or _load_template(lattice.kind)
    clean = make_pegasus(size)
    origin = int(template["origin_w"])
    lines = {int(ln["row"]): (origin + int(ln["dw"]), int(ln["k"])) for ln in template["lines"]}

    coords: dict[int, Coord] = {}
    linear: dict[int, int] = {}
    for node in lattice.nodes:
        row, col = lattice.layout[node]
        if row % 2:
            continue
        if row not in lines:
            raise EmbeddingError(f"template has no Pegasus line for layout row {row}")
        w, k = lines[row]
        q = clean.linear((0, w, k, col))
        if q is None or not clean.has_node(q):
            raise EmbeddingError(f"line node {node} at column {col} falls outside P{size}")
        coords[node] = (0, w, k, col)
        linear[node] = q

    used = set(linear.values())
    for node in lattice.nodes:
        if lattice.layout[node][0] % 2 == 0:
            continue
        ends = [linear[nb] for nb in lattice.neighbors(node)]
        candidates = sorted(
            q for q in clean.common_neighbors(ends) if q not in used and clean.coord(q)[0] == 1
        )
        if not candidates:
            raise EmbeddingError(f"no vertical qubit bridges lattice node {node}")
        q = candidates[0]
        used.add(q)
        linear[node] = q
        coords[node] = clean.coord(q)
    return coords


def translate(coords: dict[int, Coord], shift: int, pg: PegasusGraph) -> Embedding | None:
    """Horizontal (0,w,k,z) → (0,w+shift,k,z); vertical (1,w,k,z) → (1,w,k,z+shift)."""
    mapping: dict[int, int] = {}
    for node, (u, w, k, z) in coords.items():
        moved = (u, w + shift, k, z) if u == 0 else (u, w, k, z + shift)
        q = pg.linear(moved)
        if q is None:
            return None
        mapping[node] = q
    return Embedding(mapping=mapping)


def tile_heavy_hex(lattice: HeavyHexLattice, pg: PegasusGraph, template: dict[str, Any] | None = None) -> TilingResult:
    """Maximal set of disjoint, verified translates of the base tile (ascending shift order)."""
    template = template or _load_template(lattice.kind)
    period = int(template["period"])
    coords = base_tile(lattice, pg.size, template)

    result = TilingResult(embeddings=[], pegasus_size=pg.size)
    taken: set[int] = set()
    for t in range(-pg.size, pg.size + 1):
        emb = translate(coords, period * t, pg)
        if emb is None:
            continue
        report = verify_embedding(emb, lattice, pg)
        if not report.ok:
            result.rejected[t] = "; ".join(sorted(report.kinds()))
            continue
        if emb.images() & taken:
            result.rejected[t] = "overlap"
            continue
        emb.tile_index = result.n_tiles
        taken |= emb.images()
        result.embeddings.append(emb)

    if result.rejected:
        log.warning("tiling %s on P%s: %s translates rejected (%s)",
                    lattice.kind, pg.size, len(result.rejected), result.rejected)
    log.info("tiling %s on P%s: %s disjoint tiles", lattice.kind, pg.size, result.n_tiles)
    return result


# ---------- Randomized search ----------

def _bfs_order(lattice: HeavyHexLattice, root: int) -> list[int]:
    order, seen, queue = [], {root}, deque([root])
    while queue:
        node = queue.popleft()
        order.append(node)
        for nb in lattice.neighbors(node):
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return order


def _single_attempt(
    lattice: HeavyHexLattice,
    pg: PegasusGraph,
    rng: np.random.Generator,
    max_steps: int,
) -> dict[int, int] | None:
    order = _bfs_order(lattice, int(rng.integers(lattice.n_nodes)))
    adjacency = {n: lattice.neighbors(n) for n in lattice.nodes}
    degree = lattice.degrees()
    all_qubits = sorted(pg.graph.nodes)

    mapping: dict[int, int] = {}
    used: set[int] = set()
    stack: list[list[int]] = []
    steps = 0
    i = 0
    while i < len(order):
        node = order[i]
        if len(stack) <= i:
            placed = [mapping[nb] for nb in adjacency[node] if nb in mapping]
            pool = sorted(pg.common_neighbors(placed) - used) if placed else [q for q in all_qubits if q not in used]
            pool = [q for q in pool if pg.graph.degree(q) >= degree[node]]
            stack.append([int(q) for q in rng.permutation(pool)] if pool else [])
        elif node in mapping:
            used.discard(mapping.pop(node))

        if not stack[i]:
            stack.pop()
            i -= 1
            if i < 0:
                return None
            continue

        steps += 1
        if steps > max_steps:
            return None
        q = stack[i].pop()
        mapping[node] = q
        used.add(q)
        i += 1
    return mapping


def random_native_embed(
    lattice: HeavyHexLattice,
    pg: PegasusGraph,
    attempts: int,
    seed: int,
    *,
    max_steps: int | None = None,
) -> EmbedSearchResult:
    """
    Up to `attempts` independent seeded searches; attempt a uses generator
    seeded with (seed, a), so the first success is the same whatever the order.
    """
    if attempts < 1:
        raise EmbeddingError(f"attempts must be >= 1, got {attempts}")
    if lattice.n_nodes > pg.n_nodes:
        return EmbedSearchResult(embedding=None, attempts_used=0)
    cap = max_steps if max_steps is not None else 20 * lattice.n_nodes + 1000

    for attempt in range(attempts):
        rng = np.random.default_rng([int(seed), attempt])
        mapping = _single_attempt(lattice, pg, rng, cap)
        if mapping is None:
            continue
        emb = Embedding(mapping=mapping)
        if verify_embedding(emb, lattice, pg).ok:
            log.info("native embedding of %s found after %s attempts", lattice.kind, attempt + 1)
            return EmbedSearchResult(embedding=emb, attempts_used=attempt + 1)
    log.info("no native embedding of %s in %s attempts", lattice.kind, attempts)
    return EmbedSearchResult(embedding=None, attempts_used=attempts)


def search_disjoint_tiles(
    lattice: HeavyHexLattice,
    pg: PegasusGraph,
    n_tiles: int,
    attempts: int,
    seed: int,
) -> TilingResult:
    """Repeated searches on the graph minus already used qubits."""
    result = TilingResult(embeddings=[], pegasus_size=pg.size)
    current = pg
    for t in range(n_tiles):
        found = random_native_embed(lattice, current, attempts, seed + 7919 * t)
        if not found.found:
            result.rejected[t] = f"no embedding in {attempts} attempts"
            break
        emb = found.embedding
        assert emb is not None
        emb.tile_index = t
        result.embeddings.append(emb)
        current = current.without(emb.images())
    return result
