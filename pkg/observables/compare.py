# -*- coding: utf-8 -*-
from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from observables.magnetization import MagnetizationCurve, ObservableError

log = logging.getLogger(__name__)

SPLINE_KIND = "natural_cubic"
_HULL_TOL = 1e-12


@dataclass(slots=True)
class ReferenceCurve:
    thetas: np.ndarray
    values: np.ndarray
    reference_id: str = "reference"

    def __post_init__(self) -> None:
        self.thetas = np.asarray(self.thetas, dtype=np.float64)
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.thetas.shape != self.values.shape or self.thetas.ndim != 1:
            raise ObservableError("reference θ and values must be 1-D of equal length")
        if self.thetas.size < 4:
            raise ObservableError(f"cubic spline needs ≥ 4 reference points, got {self.thetas.size}")
        if np.any(np.diff(self.thetas) <= 0):
            raise ObservableError("reference θ values must be strictly ascending")


@dataclass(frozen=True, slots=True)
class RMSEReport:
    rmse: float
    n_points: int
    reference_id: str
    spline_kind: str = SPLINE_KIND

    def to_dict(self) -> dict[str, Any]:
        return {
            "rmse": self.rmse,
            "n_points": self.n_points,
            "reference_id": self.reference_id,
            "spline_kind": self.spline_kind,
        }


def load_reference_curve(path: str | Path, reference_id: str | None = None) -> ReferenceCurve:
    """CSV with columns theta,value (θ_h accepted as 'theta_h'); '#' lines skipped."""
    path = Path(path)
    if not path.exists():
        raise ObservableError(f"reference curve not found: {path}")
    with path.open("r", encoding="utf-8", newline="") as f:
        lines = [ln for ln in f if ln.strip() and not ln.lstrip().startswith("#")]
    rows = list(csv.DictReader(lines))
    pairs = []
    for i, r in enumerate(rows, start=2):
        theta = r.get("theta", r.get("theta_h"))
        if theta is None or r.get("value") is None:
            raise ObservableError(f"{path}: expected columns theta,value")
        try:
            pairs.append((float(theta), float(r["value"])))
        except ValueError as e:
            raise ObservableError(f"{path}:{i}: {e}") from e
    pairs.sort()
    return ReferenceCurve(
        thetas=np.array([p[0] for p in pairs]),
        values=np.array([p[1] for p in pairs]),
        reference_id=reference_id or path.stem,
    )


def reference_spline(ref: ReferenceCurve) -> CubicSpline:
    return CubicSpline(ref.thetas, ref.values, bc_type="natural", extrapolate=False)


def rmse_vs_reference(
    curve: MagnetizationCurve | Sequence[tuple[float, float]], ref: ReferenceCurve
) -> RMSEReport:
    """√(mean (curve − spline(ref))²) at the curve's θ values."""
    if isinstance(curve, MagnetizationCurve):
        thetas, values = curve.thetas, curve.values
    else:
        thetas = np.array([p[0] for p in curve], dtype=np.float64)
        values = np.array([p[1] for p in curve], dtype=np.float64)
    if thetas.size == 0:
        raise ObservableError("empty curve")
    lo, hi = float(ref.thetas[0]), float(ref.thetas[-1])
    outside = thetas[(thetas < lo - _HULL_TOL) | (thetas > hi + _HULL_TOL)]
    if outside.size:
        raise ObservableError(f"θ values {outside[:3].tolist()} lie outside the reference range [{lo}, {hi}]")
    expected = reference_spline(ref)(np.clip(thetas, lo, hi))
    diff = values - expected
    rmse = math.sqrt(float(np.mean(diff ** 2)))
    log.debug("rmse vs %s over %s points: %.6g", ref.reference_id, thetas.size, rmse)
    return RMSEReport(rmse=rmse, n_points=int(thetas.size), reference_id=ref.reference_id)
