# -*- coding: utf-8 -*-
from __future__ import annotations

import csv
import io
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

log = logging.getLogger(__name__)

_MONO_TOL = 1e-9
# A(1) must vanish relative to A(0)
_A_END_REL = 1e-2


class CalibrationError(ValueError):
    """Malformed calibration table or an out-of-range query."""


@dataclass(frozen=True, slots=True, eq=False)
class CalibrationTable:
    """Annealing energy scales A(s), B(s) in GHz on a strictly increasing s grid."""

    s: np.ndarray
    a_ghz: np.ndarray
    b_ghz: np.ndarray
    device_id: str = "unknown"

    def __post_init__(self) -> None:
        for name in ("s", "a_ghz", "b_ghz"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        s, a, b = self.s, self.a_ghz, self.b_ghz
        if s.ndim != 1 or not (len(s) == len(a) == len(b)):
            raise CalibrationError("s, A and B must be 1-D columns of equal length")
        if len(s) < 2:
            raise CalibrationError("calibration needs at least two rows")
        if not np.all(np.isfinite(s)) or not np.all(np.isfinite(a)) or not np.all(np.isfinite(b)):
            raise CalibrationError("calibration contains non-finite values")
        if s[0] != 0.0 or s[-1] != 1.0:
            raise CalibrationError(f"s grid must span [0, 1], got [{s[0]}, {s[-1]}]")
        if np.any(np.diff(s) <= 0):
            raise CalibrationError("s grid must be strictly increasing")
        if np.any(a < 0) or np.any(b < 0):
            raise CalibrationError("A(s) and B(s) must be non-negative")
        if np.any(np.diff(a) > _MONO_TOL):
            raise CalibrationError("A(s) must be non-increasing")
        if np.any(np.diff(b) < -_MONO_TOL):
            raise CalibrationError("B(s) must be non-decreasing")
        if a[-1] > max(_A_END_REL * a[0], _MONO_TOL):
            raise CalibrationError(f"A(1) must be close to 0, got {a[-1]} GHz (A(0) = {a[0]} GHz)")

    def __len__(self) -> int:
        return len(self.s)

    @property
    def step(self) -> float:
        """Largest grid spacing."""
        return float(np.max(np.diff(self.s)))


def interp(table: CalibrationTable, s: float | np.ndarray) -> tuple[float, float] | tuple[np.ndarray, np.ndarray]:
    """Piecewise-linear A(s), B(s); exact at grid points."""
    arr = np.asarray(s, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > 1.0) or not np.all(np.isfinite(arr)):
        raise CalibrationError(f"s outside [0, 1]: {s}")
    a = np.interp(arr, table.s, table.a_ghz)
    b = np.interp(arr, table.s, table.b_ghz)
    if arr.ndim == 0:
        return float(a), float(b)
    return a, b


def synthetic_linear(n_points: int = 1001) -> CalibrationTable:
    """A = 2(1−s), B = 2s: the closed-form test calibration."""
    if n_points < 2:
        raise CalibrationError("n_points must be >= 2")
    s = np.linspace(0.0, 1.0, n_points)
    return CalibrationTable(s=s, a_ghz=2.0 * (1.0 - s), b_ghz=2.0 * s, device_id="synthetic_linear")


# ---------- CSV ----------

def _data_lines(lines: Iterable[str]) -> list[str]:
    return [ln for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]


def _rows_to_table(rows: list[tuple[float, float, float]], device_id: str) -> CalibrationTable:
    if not rows:
        raise CalibrationError("calibration has no data rows")
    svals = [r[0] for r in rows]
    if len(set(svals)) != len(svals):
        dup = sorted({x for x in svals if svals.count(x) > 1})
        raise CalibrationError(f"duplicate s values: {dup[:5]}")
    rows = sorted(rows)
    arr = np.array(rows, dtype=float)
    return CalibrationTable(s=arr[:, 0], a_ghz=arr[:, 1], b_ghz=arr[:, 2], device_id=device_id)


def _parse_float(value: str, where: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise CalibrationError(f"non-numeric value {value!r} in {where}") from exc


def load_calibration(path: str | Path, device_id: str | None = None) -> CalibrationTable:
    """CSV with header s,A_GHz,B_GHz; '#' lines are comments; rows sorted by s."""
    path = Path(path)
    if not path.exists():
        raise CalibrationError(f"calibration file not found: {path}")
    text = path.read_text(encoding="utf-8")
    reader = csv.DictReader(io.StringIO("\n".join(_data_lines(text.splitlines()))))
    fields = [f.strip() for f in (reader.fieldnames or [])]
    if fields[:3] != ["s", "A_GHz", "B_GHz"]:
        raise CalibrationError(f"expected header s,A_GHz,B_GHz in {path}, got {fields}")

    rows = []
    for i, rec in enumerate(reader, start=2):
        where = f"{path.name} row {i}"
        rows.append((
            _parse_float(rec["s"], where),
            _parse_float(rec["A_GHz"], where),
            _parse_float(rec["B_GHz"], where),
        ))
    table = _rows_to_table(rows, device_id or path.stem)
    log.info("calibration %s loaded: %s points", table.device_id, len(table))
    return table


_VENDOR_COLUMNS = {
    "s": re.compile(r"^s$", re.I),
    "a": re.compile(r"^A\(s\)", re.I),
    "b": re.compile(r"^B\(s\)", re.I),
}


def load_vendor_schedule(path: str | Path, device_id: str | None = None) -> CalibrationTable:
    """Vendor-exported schedule CSV (columns 's', 'A(s) (GHz)', 'B(s) (GHz)', extras ignored)."""
    path = Path(path)
    if not path.exists():
        raise CalibrationError(f"vendor schedule not found: {path}")
    lines = _data_lines(path.read_text(encoding="utf-8").splitlines())
    reader = csv.reader(lines)
    header = [h.strip() for h in next(reader, [])]
    idx: dict[str, int] = {}
    for key, pattern in _VENDOR_COLUMNS.items():
        hits = [i for i, h in enumerate(header) if pattern.match(h)]
        if not hits:
            raise CalibrationError(f"vendor schedule {path.name} lacks a column for {key!r}: {header}")
        idx[key] = hits[0]

    rows = []
    for n, rec in enumerate(reader, start=2):
        where = f"{path.name} row {n}"
        rows.append(tuple(_parse_float(rec[idx[k]], where) for k in ("s", "a", "b")))
    return _rows_to_table(rows, device_id or path.stem)  # type: ignore[arg-type]


def save_calibration(table: CalibrationTable, path: str | Path) -> Path:
    """Write with 17 significant digits; reloading gives bit-identical arrays."""
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# device_id: {table.device_id}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["s", "A_GHz", "B_GHz"])
        for s, a, b in zip(table.s, table.a_ghz, table.b_ghz):
            writer.writerow([format(float(s), ".17g"), format(float(a), ".17g"), format(float(b), ".17g")])
    return path


def resolve_calibration(name: str) -> CalibrationTable:
    """'synthetic' | bundled/CALIBRATION_DIR name | CSV path."""
    from config import settings

    if name.strip().lower() in ("synthetic", "synthetic_linear"):
        return synthetic_linear()
    path = settings.calibration_path(name)
    head = ""
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip() and not line.lstrip().startswith("#"):
                head = line.strip()
                break
    if head.replace(" ", "").startswith("s,A_GHz"):
        return load_calibration(path)
    return load_vendor_schedule(path)
