# -*- coding: utf-8 -*-
"""Command-line parser construction and flag value helpers."""

from __future__ import annotations

import argparse
import math
from typing import Sequence

import texts
from config import settings
from lattice import HeavyHexLattice, LatticeError, resolve_lattice
from models import (
    DTYPE_CHOICES,
    METHOD_CHOICES,
    S_SELECTION_CHOICES,
    EmbedMode,
    ScheduleKind,
    SimulationMode,
    StepOrder,
)
from observables import ObservableError, Scope

# 1.5708 и подобные округления считаем ровно π/2
HALF_PI_SNAP = 1e-4


class FlagParseError(ValueError):
    """Raised when provided flags cannot be parsed."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise FlagParseError(message)


# ---------- Value helpers ----------

def parse_theta(value: str) -> float:
    raw = value.strip().lower()
    try:
        theta = math.pi / 2 if raw in ("pi/2", "π/2") else float(raw)
    except ValueError as exc:
        raise FlagParseError(f"bad angle: {value!r}") from exc
    if abs(theta - math.pi / 2) <= HALF_PI_SNAP:
        return math.pi / 2
    return theta


def parse_float_list(value: str) -> list[float]:
    """Comma-separated angles; each one goes through parse_theta."""
    items = [v for v in value.split(",") if v.strip()]
    if not items:
        raise FlagParseError("expected a comma-separated list of numbers")
    return [parse_theta(v) for v in items]


def parse_int_list(value: str) -> list[int]:
    try:
        out = [int(v) for v in value.split(",") if v.strip()]
    except ValueError as exc:
        raise FlagParseError(f"expected comma-separated integers, got {value!r}") from exc
    if not out:
        raise FlagParseError("expected at least one integer")
    return out


def parse_lattice_spec(value: str) -> HeavyHexLattice:
    try:
        return resolve_lattice(value)
    except LatticeError as exc:
        raise FlagParseError(str(exc)) from exc


def parse_observable(value: str) -> Scope:
    try:
        return Scope.parse(value)
    except ObservableError as exc:
        raise FlagParseError(str(exc)) from exc


def _positive_int(value: str) -> int:
    try:
        n = int(value)
    except ValueError as exc:
        raise FlagParseError(f"expected an integer, got {value!r}") from exc
    if n < 1:
        raise FlagParseError(f"expected a positive integer, got {n}")
    return n


def _sign(value: str) -> int:
    if value not in ("1", "+1", "-1"):
        raise FlagParseError(f"transverse sign must be +1 or -1, got {value!r}")
    return int(value)


# ---------- Parser ----------

def _common(p: argparse.ArgumentParser, *, calibration: bool = True, device: bool = True) -> None:
    p.add_argument("--out", default="out", help=texts.HELP_OUT)
    if calibration:
        p.add_argument("--calibration", default="synthetic", help=texts.HELP_CALIBRATION)
    if device:
        p.add_argument("--device", default=settings.DEVICE_PROFILE, help=texts.HELP_DEVICE)


def _derivation(p: argparse.ArgumentParser, *, required: bool) -> None:
    p.add_argument("--theta", type=parse_theta, required=required, help=texts.HELP_THETA)
    p.add_argument("--steps", type=_positive_int, required=required, help=texts.HELP_STEPS)
    p.add_argument("--j", type=float, default=-0.5, help=texts.HELP_J)
    p.add_argument("--s-selection", choices=S_SELECTION_CHOICES, default="grid", help=texts.HELP_S_SELECTION)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hexanneal", description=texts.DESCRIPTION)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("derive", help=texts.HELP_DERIVE)
    _derivation(p, required=True)
    p.add_argument("--require-feasible", action="store_true", help=texts.HELP_REQUIRE_FEASIBLE)
    _common(p)

    p = sub.add_parser("schedule", help=texts.HELP_SCHEDULE)
    p.add_argument("--derived", help=texts.HELP_DERIVED)
    _derivation(p, required=False)
    p.add_argument("--method", choices=(*METHOD_CHOICES, ScheduleKind.PAUSE.value), default="reverse",
                   help=texts.HELP_METHOD)
    p.add_argument("--ramp-down-ns", type=float, default=30.0, help=texts.HELP_RAMP_DOWN)
    _common(p)

    p = sub.add_parser("sweep", help=texts.HELP_SWEEP)
    p.add_argument("--steps", type=_positive_int, default=None, help=texts.HELP_STEPS)
    p.add_argument("--j", type=float, default=-0.5, help=texts.HELP_J)
    p.add_argument("--angles", type=_positive_int, default=100, help=texts.HELP_ANGLES)
    p.add_argument("--method", choices=METHOD_CHOICES, default="reverse", help=texts.HELP_METHOD)
    p.add_argument("--s-selection", choices=S_SELECTION_CHOICES, default="grid", help=texts.HELP_S_SELECTION)
    p.add_argument("--ramp-down-ns", type=float, default=30.0, help=texts.HELP_RAMP_DOWN)
    p.add_argument("--fixed-time", type=float, default=None, metavar="US", help=texts.HELP_FIXED_TIME)
    p.add_argument("--s-step", type=float, default=0.01, help=texts.HELP_S_STEP)
    p.add_argument("--threads", type=_positive_int, default=None, help=texts.HELP_THREADS)
    _common(p)

    p = sub.add_parser("embed", help=texts.HELP_EMBED)
    p.add_argument("--lattice", default="eagle127", help=texts.HELP_LATTICE)
    p.add_argument("--pegasus-size", type=_positive_int, default=16)
    p.add_argument("--mode", choices=[m.value for m in EmbedMode], default="tile")
    p.add_argument("--defects", default=None, help=texts.HELP_DEFECTS)
    p.add_argument("--tiles", type=_positive_int, default=1, help=texts.HELP_TILES)
    p.add_argument("--attempts", type=_positive_int, default=100)
    p.add_argument("--seed", type=int, default=0)
    _common(p, calibration=False, device=False)

    p = sub.add_parser("simulate", help=texts.HELP_SIMULATE)
    p.add_argument("--lattice", default="falcon27:10", help=texts.HELP_LATTICE)
    p.add_argument("--mode", choices=[m.value for m in SimulationMode], default="trotter")
    p.add_argument("--schedule", default=None, help=texts.HELP_SCHEDULE_FILE)
    p.add_argument("--steps", type=_positive_int, default=None, help=texts.HELP_STEPS)
    p.add_argument("--thetas", type=parse_float_list, default=None, help=texts.HELP_THETAS)
    p.add_argument("--angles", type=_positive_int, default=None, help=texts.HELP_ANGLES)
    p.add_argument("--quench-steps", type=parse_int_list, default=None, help=texts.HELP_QUENCH)
    p.add_argument("--j", type=float, default=-0.5, help=texts.HELP_J)
    p.add_argument("--s-selection", choices=S_SELECTION_CHOICES, default="interpolate",
                   help=texts.HELP_S_SELECTION)
    p.add_argument("--with-ramps", action="store_true", help=texts.HELP_WITH_RAMPS)
    p.add_argument("--transverse-sign", type=_sign, default=1)
    p.add_argument("--step-order", choices=[o.value for o in StepOrder], default=StepOrder.RX_THEN_RZZ.value)
    p.add_argument("--dtype", choices=DTYPE_CHOICES, default="complex128")
    p.add_argument("--observable", default="mean", help=texts.HELP_OBSERVABLE)
    p.add_argument("--threads", type=_positive_int, default=None, help=texts.HELP_THREADS)
    _common(p)

    p = sub.add_parser("sample", help=texts.HELP_SAMPLE)
    p.add_argument("--lattice", default="falcon27:10", help=texts.HELP_LATTICE)
    p.add_argument("--schedule", default=None, help=texts.HELP_SCHEDULE_FILE)
    p.add_argument("--tiling", default=None, help=texts.HELP_TILING)
    p.add_argument("--request", default=None, help=texts.HELP_REQUEST)
    p.add_argument("--j", type=float, default=None, help=texts.HELP_J)
    p.add_argument("--field", type=float, default=None, help=texts.HELP_H)
    p.add_argument("--num-reads", type=_positive_int, default=1000)
    p.add_argument("--gauges", type=int, default=0, help=texts.HELP_GAUGES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sequential", action="store_true", help=texts.HELP_SEQUENTIAL)
    p.add_argument("--transverse-sign", type=_sign, default=1)
    p.add_argument("--validate-device", action="store_true", help=texts.HELP_VALIDATE_DEVICE)
    p.add_argument("--threads", type=_positive_int, default=None, help=texts.HELP_THREADS)
    _common(p)

    p = sub.add_parser("analyze", help=texts.HELP_ANALYZE)
    p.add_argument("--samples", nargs="+", required=True, help=texts.HELP_SAMPLES)
    p.add_argument("--observable", default="mean", help=texts.HELP_OBSERVABLE)
    p.add_argument("--theta", type=parse_theta, default=None, help=texts.HELP_THETA_FALLBACK)
    p.add_argument("--lattice", default=None, help=texts.HELP_LATTICE)
    p.add_argument("--anchor", type=int, default=None, help=texts.HELP_ANCHOR)
    p.add_argument("--correlations", action="store_true", help=texts.HELP_CORRELATIONS)
    p.add_argument("--reference", default=None, help=texts.HELP_REFERENCE)
    _common(p, calibration=False, device=False)

    return parser


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)
