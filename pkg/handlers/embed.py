# -*- coding: utf-8 -*-
from __future__ import annotations

import argparse
import logging
from pathlib import Path

import texts
from models import EmbedMode
from pegasus import DefectList, load_defects, make_pegasus, search_disjoint_tiles, tile_heavy_hex, verify_embedding
from services.io_tools import RunManifest, write_json
from utils.args_parser import parse_lattice_spec

log = logging.getLogger(__name__)


async def cmd_embed(args: argparse.Namespace) -> int:
    out = Path(args.out)
    lattice = parse_lattice_spec(args.lattice)
    defects = load_defects(args.defects) if args.defects else DefectList()
    pg = make_pegasus(args.pegasus_size, defects)

    seeds = {}
    if EmbedMode(args.mode) is EmbedMode.TILE:
        tiling = tile_heavy_hex(lattice, pg)
    else:
        seeds["seed"] = args.seed
        tiling = search_disjoint_tiles(lattice, pg, args.tiles, args.attempts, args.seed)
    manifest = RunManifest.from_args(args, seeds=seeds)

    # повторная проверка каждой плитки перед записью
    verified = {e.tile_index: verify_embedding(e, lattice, pg).ok for e in tiling.embeddings}
    doc = {
        **tiling.to_dict(),
        "lattice": lattice.kind,
        "lattice_nodes": lattice.n_nodes,
        "defects": defects.to_dict(),
        "verified": {str(t): ok for t, ok in sorted(verified.items())},
    }
    write_json(manifest.add_output(out / "tiling.json"), doc)
    manifest.write(out)
    log.info("%s: %s disjoint tiles on P%s", lattice.kind, tiling.n_tiles, pg.size)
    log.info(texts.MSG_OUTPUTS, "embed", len(manifest.outputs), out)
    return 0
