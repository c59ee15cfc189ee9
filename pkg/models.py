# -*- coding: utf-8 -*-
from __future__ import annotations

from enum import Enum


class LatticeKind(str, Enum):
    EAGLE127 = "eagle127"
    FALCON27 = "falcon27"
    HEXGRID = "hexgrid"
    CUSTOM = "custom"


class ScheduleKind(str, Enum):
    REVERSE = "reverse"
    FORWARD = "forward"
    PAUSE = "pause"  # constant s, equivalence checks only


class SweepMethod(str, Enum):
    REVERSE = "reverse"
    HGAIN = "hgain"


class SSelection(str, Enum):
    GRID = "grid"
    INTERPOLATE = "interpolate"


class StepOrder(str, Enum):
    RX_THEN_RZZ = "rx_then_rzz"
    RZZ_THEN_RX = "rzz_then_rx"


class EmbedMode(str, Enum):
    TILE = "tile"
    SEARCH = "search"


class SimulationMode(str, Enum):
    TROTTER = "trotter"
    ANNEAL = "anneal"


# Допустимые значения для CLI
METHOD_CHOICES = tuple(m.value for m in SweepMethod)
S_SELECTION_CHOICES = tuple(m.value for m in SSelection)
DTYPE_CHOICES = ("complex128", "complex64")
