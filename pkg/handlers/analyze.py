# -*- coding: utf-8 -*-
from __future__ import annotations

import argparse
import logging
from pathlib import Path

import texts
from dynamics import SampleSet
from observables import (
    MagnetizationCurve,
    ObservableError,
    correlation_matrix,
    distance_binned_correlation,
    load_reference_curve,
    rmse_vs_reference,
    site_magnetization_table,
    write_distance_bins,
)
from services.io_tools import RunManifest, write_json, write_rows
from utils.args_parser import FlagParseError, parse_lattice_spec, parse_observable

log = logging.getLogger(__name__)


def _load(paths: list[str], fallback: float | None) -> list[tuple[float, SampleSet]]:
    pairs = []
    for path in paths:
        ss = SampleSet.read_csv(path)
        theta = ss.metadata.get("theta_h")
        if theta is None:
            theta = fallback
        if theta is None:
            raise ObservableError(texts.MSG_NO_THETA.format(path=path))
        pairs.append((float(theta), ss))
    return sorted(pairs, key=lambda p: p[0])


async def cmd_analyze(args: argparse.Namespace) -> int:
    out = Path(args.out)
    manifest = RunManifest.from_args(args)
    scope = parse_observable(args.observable)
    lattice = parse_lattice_spec(args.lattice) if args.lattice else None
    if args.anchor is not None and lattice is None:
        raise FlagParseError(texts.MSG_ANCHOR_NEEDS_LATTICE)

    pairs = _load(args.samples, args.theta)
    curve = MagnetizationCurve.from_sources(pairs, scope)
    curve.write_csv(manifest.add_output(out / "curve.csv"))

    if lattice is not None:
        rows = []
        for theta, ss in pairs:
            rows.extend((theta, *row) for row in site_magnetization_table(ss, lattice))
        write_rows(manifest.add_output(out / "sites.csv"), ["theta_h", "node", "row", "col", "value"], rows)

    if args.correlations:
        for i, (_, ss) in enumerate(pairs):
            correlation_matrix(ss).write_csv(manifest.add_output(out / f"correlations_{i}.csv"))

    if args.anchor is not None:
        bins = [distance_binned_correlation(ss, lattice, args.anchor, theta_h=theta) for theta, ss in pairs]
        write_distance_bins(bins, manifest.add_output(out / "distance_bins.csv"))

    if args.reference:
        report = rmse_vs_reference(curve, load_reference_curve(args.reference))
        write_json(manifest.add_output(out / "rmse.json"), report.to_dict())
        log.info("RMSE vs %s: %.6g over %s points", report.reference_id, report.rmse, report.n_points)

    manifest.write(out)
    log.info(texts.MSG_OUTPUTS, "analyze", len(manifest.outputs), out)
    return 0
