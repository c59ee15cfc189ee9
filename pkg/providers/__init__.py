# -*- coding: utf-8 -*-
"""Sampler provider interfaces and implementations."""

from providers.base import BackendError, Provider, SamplerProvider
from providers.models import ComposedProblem, SamplerRequest, SamplerResponse, TimingReport
from providers.mock_annealer import MockAnnealer

__all__ = [
    "BackendError",
    "ComposedProblem",
    "MockAnnealer",
    "Provider",
    "SamplerProvider",
    "SamplerRequest",
    "SamplerResponse",
    "TimingReport",
]
