"""Quasi-3D magneto-thermal quench solver bindings."""

from ._core import (
    QuenchParams,
    ReferenceTensorSet,
    Solver,
    StepRecord,
    TransientConfig,
    WireModelParams,
    build_reference_tensors,
    chebyshev,
    chebyshev_coeffs,
    chebyshev_eval,
    chebyshev_points,
    copper_resistivity,
    csv_string,
    effective_materials,
    gauss_legendre,
    kron_dense,
    load_or_build_reference_tensors,
    lobatto_shape,
    lobatto_shape_deriv,
    quench_flag,
)

__all__ = [
    "QuenchParams",
    "ReferenceTensorSet",
    "Solver",
    "StepRecord",
    "TransientConfig",
    "WireModelParams",
    "build_reference_tensors",
    "chebyshev",
    "chebyshev_coeffs",
    "chebyshev_eval",
    "chebyshev_points",
    "copper_resistivity",
    "csv_string",
    "effective_materials",
    "gauss_legendre",
    "kron_dense",
    "load_or_build_reference_tensors",
    "lobatto_shape",
    "lobatto_shape_deriv",
    "quench_flag",
]
