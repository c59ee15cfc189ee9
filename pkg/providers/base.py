# -*- coding: utf-8 -*-
from __future__ import annotations

from enum import Enum
from typing import TYPE_CHECKING, Protocol, runtime_checkable

if TYPE_CHECKING:
    from providers.models import SamplerRequest, SamplerResponse


class Provider(str, Enum):
    """Supported sampler backends."""
    MOCK_ANNEALER = "mock_annealer"


class BackendError(RuntimeError):
    """Sampler request cannot be composed or executed."""


@runtime_checkable
class SamplerProvider(Protocol):
    """Common contract for annealer-like samplers."""

    name: Provider

    async def sample(self, request: "SamplerRequest", *, threads: int | None = None) -> "SamplerResponse":
        """Run every tile of the request and return de-tiled samples."""
