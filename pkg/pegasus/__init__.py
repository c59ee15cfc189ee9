# -*- coding: utf-8 -*-
from pegasus.embedding import (
    EmbedSearchResult,
    Embedding,
    EmbeddingError,
    EmbeddingReport,
    TilingResult,
    Violation,
    base_tile,
    random_native_embed,
    search_disjoint_tiles,
    tile_heavy_hex,
    translate,
    verify_embedding,
)
from pegasus.graph import DefectList, PegasusError, PegasusGraph, coupler_class, load_defects, make_pegasus

__all__ = [
    "DefectList",
    "EmbedSearchResult",
    "Embedding",
    "EmbeddingError",
    "EmbeddingReport",
    "PegasusError",
    "PegasusGraph",
    "TilingResult",
    "Violation",
    "base_tile",
    "coupler_class",
    "load_defects",
    "make_pegasus",
    "random_native_embed",
    "search_disjoint_tiles",
    "tile_heavy_hex",
    "translate",
    "verify_embedding",
]
