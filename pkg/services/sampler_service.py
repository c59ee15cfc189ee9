# -*- coding: utf-8 -*-
from __future__ import annotations

import logging
from typing import Callable, Union

from dynamics.ising import IsingModel
from pegasus.embedding import Embedding, TilingResult
from providers.base import BackendError, Provider, SamplerProvider
from providers.mock_annealer import MockAnnealer
from providers.models import ComposedProblem, SamplerRequest, SamplerResponse

log = logging.getLogger("services.sampler_service")

_PROVIDER_FACTORIES: dict[Provider, Callable[[], SamplerProvider]] = {
    Provider.MOCK_ANNEALER: MockAnnealer,
}
_provider_cache: dict[Provider, SamplerProvider] = {}


def get_provider(provider: Union[str, Provider]) -> SamplerProvider:
    """Return a singleton provider instance for the requested backend."""
    try:
        key = Provider(provider)
        factory = _PROVIDER_FACTORIES[key]
    except (KeyError, ValueError) as exc:
        raise BackendError(f"Unsupported provider: {provider}") from exc

    if key not in _provider_cache:
        _provider_cache[key] = factory()
    return _provider_cache[key]


def compose_tiles(model: IsingModel, tiling: TilingResult | list[Embedding]) -> ComposedProblem:
    """
    Copies the lattice model through every tile embedding into one Ising model
    on the union of images. Tiles must be disjoint.
    """
    embeddings = tiling.embeddings if isinstance(tiling, TilingResult) else list(tiling)
    if not embeddings:
        raise BackendError("no tiles to compose")
    owner: dict[int, int] = {}
    h: dict[int, float] = {}
    j: dict[tuple[int, int], float] = {}
    for t, emb in enumerate(embeddings):
        missing = [n for n in model.nodes if n not in emb.mapping]
        if missing:
            raise BackendError(f"tile {t} does not map nodes {missing[:5]}")
        for node in model.nodes:
            q = emb.mapping[node]
            if q in owner:
                raise BackendError(f"tiles {owner[q]} and {t} overlap on qubit {q}")
            owner[q] = t
        for node, x in model.h.items():
            h[emb.mapping[node]] = x
        for (u, v), x in model.j.items():
            j[(emb.mapping[u], emb.mapping[v])] = x

    composed = IsingModel(nodes=tuple(owner), h=h, j=j)
    ids = [e.tile_index for e in embeddings]
    if len(set(ids)) != len(ids):
        ids = list(range(len(embeddings)))
    tiles = [Embedding(mapping={n: e.mapping[n] for n in model.nodes}, tile_index=i) for i, e in zip(ids, embeddings)]
    log.info("composed %s tiles: %s qubits, %s couplers", len(tiles), composed.n, len(composed.j))
    return ComposedProblem(model=composed, tiles=tiles)


async def run(request: SamplerRequest, *, threads: int | None = None) -> SamplerResponse:
    """Submit a request to its provider and return de-tiled samples."""
    provider = get_provider(request.provider)
    response = await provider.sample(request, threads=threads)
    for t, ss in enumerate(response.samples):
        if ss.num_reads != request.num_reads:
            raise BackendError(f"tile {t} returned {ss.num_reads} reads, expected {request.num_reads}")
    return response
