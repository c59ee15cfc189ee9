# -*- coding: utf-8 -*-
from observables.compare import RMSEReport, ReferenceCurve, load_reference_curve, reference_spline, rmse_vs_reference
from observables.correlations import (
    CorrelationMatrix,
    DistanceBinnedCorrelation,
    correlation_matrix,
    distance_binned_correlation,
    write_distance_bins,
)
from observables.magnetization import (
    Estimate,
    MagnetizationCurve,
    ObservableError,
    Scope,
    magnetization,
    site_magnetization,
    site_magnetization_table,
    write_site_table,
)

__all__ = [
    "CorrelationMatrix",
    "DistanceBinnedCorrelation",
    "Estimate",
    "MagnetizationCurve",
    "ObservableError",
    "RMSEReport",
    "ReferenceCurve",
    "Scope",
    "correlation_matrix",
    "distance_binned_correlation",
    "load_reference_curve",
    "magnetization",
    "reference_spline",
    "rmse_vs_reference",
    "site_magnetization",
    "site_magnetization_table",
    "write_distance_bins",
    "write_site_table",
]
