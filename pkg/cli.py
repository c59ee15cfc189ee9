# -*- coding: utf-8 -*-
from __future__ import annotations

import asyncio
import json
import logging
import sys
from typing import Awaitable, Callable, Sequence

from calibration import CalibrationError
from config import settings
from dynamics import SimulationError
from handlers.analyze import cmd_analyze
from handlers.derive import cmd_derive
from handlers.embed import cmd_embed
from handlers.sample import cmd_sample
from handlers.schedule import cmd_schedule
from handlers.simulate import cmd_simulate
from handlers.sweep import cmd_sweep
from lattice import LatticeError
from observables import ObservableError
from pegasus import PegasusError
from providers import BackendError
from schedule import InfeasibleParamsError, ScheduleError
from utils.args_parser import FlagParseError, build_parser

try:  # uvloop только на Linux
    import uvloop
except ImportError:  # pragma: no cover
    uvloop = None

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_RUNTIME = 4

Handler = Callable[..., Awaitable[int]]

COMMANDS: dict[str, Handler] = {
    "derive": cmd_derive,
    "schedule": cmd_schedule,
    "sweep": cmd_sweep,
    "embed": cmd_embed,
    "simulate": cmd_simulate,
    "sample": cmd_sample,
    "analyze": cmd_analyze,
}

PACKAGE_ERRORS = (
    LatticeError,
    PegasusError,
    CalibrationError,
    ScheduleError,
    SimulationError,
    ObservableError,
    BackendError,
    OSError,
)

log = logging.getLogger(__name__)


def _setup_logging() -> None:
    logging.basicConfig(
        level=getattr(logging, (settings.LOG_LEVEL or "INFO").upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


def _run(coro: Awaitable[int]) -> int:
    if uvloop is not None and hasattr(uvloop, "run"):
        return uvloop.run(coro)
    return asyncio.run(coro)


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, FlagParseError):
        return EXIT_USAGE
    if isinstance(exc, InfeasibleParamsError):
        return EXIT_INFEASIBLE
    return EXIT_RUNTIME


def _report(exc: BaseException, code: int) -> None:
    payload = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    print(json.dumps(payload), file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    _setup_logging()
    try:
        args = build_parser().parse_args(argv)
        return _run(COMMANDS[args.command](args))
    except (FlagParseError, *PACKAGE_ERRORS) as exc:
        code = exit_code_for(exc)
        log.debug("command failed", exc_info=True)
        _report(exc, code)
        return code
    except Exception as exc:  # noqa: BLE001
        log.exception("unexpected failure: %s", exc)
        _report(exc, EXIT_RUNTIME)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
