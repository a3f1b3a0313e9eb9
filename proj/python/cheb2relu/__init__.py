"""Chebyshev-to-ReLU network compiler."""

from ._core import (
    ChebSeries,
    DataError,
    Mesh,
    NeuralNetwork,
    ParameterError,
    PiecewiseCheb,
    ProductSpec,
    SizeMetrics,
    StructuralError,
    StudyRecord,
    build_cheb_tower,
    build_interval_emulator,
    build_poly_emulator,
    build_product,
    build_spline_emulator,
    cc_interpolate,
    cc_points,
    cheb_eval,
    cheb_eval_derivative,
    coeff_tail_sum,
    concat,
    cpwl_interpolant_net,
    diff_norm,
    full_parallel,
    geometric_mesh,
    identity_net,
    lebesgue_constant,
    parallel,
    product_constants,
    run_hp_study,
    sample_to_spline,
    sparse_concat,
    uniform_mesh,
)

__all__ = [
    "ChebSeries",
    "DataError",
    "Mesh",
    "NeuralNetwork",
    "ParameterError",
    "PiecewiseCheb",
    "ProductSpec",
    "SizeMetrics",
    "StructuralError",
    "StudyRecord",
    "build_cheb_tower",
    "build_interval_emulator",
    "build_poly_emulator",
    "build_product",
    "build_spline_emulator",
    "cc_interpolate",
    "cc_points",
    "cheb_eval",
    "cheb_eval_derivative",
    "coeff_tail_sum",
    "concat",
    "cpwl_interpolant_net",
    "diff_norm",
    "full_parallel",
    "geometric_mesh",
    "identity_net",
    "lebesgue_constant",
    "parallel",
    "product_constants",
    "run_hp_study",
    "sample_to_spline",
    "sparse_concat",
    "uniform_mesh",
]
