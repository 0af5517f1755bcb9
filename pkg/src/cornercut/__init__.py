"""Corner-cutting subdivision with data-adaptive exponential shape parameters.

The package refines sequences and control polygons with the classical
Chaikin rule, the level-dependent exponential B-spline rule of degree 2,
and a non-uniform rule whose local shape parameters are read off the data
so that smooth samples are reproduced to third order.
"""

from .analysis import (
    DiagnosticReport,
    LaurentSymbol,
    OrderTableRow,
    SmoothnessReport,
    asymptotic_equivalence_profile,
    fit_decay_exponent,
    franke_1d,
    order_estimate,
    order_table,
    property_a_d1,
    sample_initial,
    smoothness_probe,
    symbol_from_mask,
)
from .masks import (
    CHAIKIN,
    DEFAULT_KERNEL,
    EpsilonPolicy,
    MaskQuad,
    ParameterOutOfRange,
    RatioKernelConfig,
    RatioKernelError,
    ShapeParam,
    TrigonometricSingularity,
    chaikin_mask,
    exp_bspline_mask,
    exp_ratio,
    mask_oracle,
    nucc_mask,
    nucc_mask_alternative,
    shape_param_alternative,
    shape_param_primary,
    sinh_ratio,
)
from .sequences import (
    BoundaryPolicy,
    GridSpec,
    LevelSequence,
    forward_difference,
    grid_point,
    second_difference,
)
from .subdivision import (
    ControlPolygon,
    RefinementState,
    SchemeConfig,
    initial_state,
    level_masks,
    limit_samples,
    operator_norm,
    refine_curve,
    refine_step,
    run,
    run_traced,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryPolicy",
    "CHAIKIN",
    "ControlPolygon",
    "DEFAULT_KERNEL",
    "DiagnosticReport",
    "EpsilonPolicy",
    "GridSpec",
    "LaurentSymbol",
    "LevelSequence",
    "MaskQuad",
    "OrderTableRow",
    "ParameterOutOfRange",
    "RatioKernelConfig",
    "RatioKernelError",
    "RefinementState",
    "SchemeConfig",
    "ShapeParam",
    "SmoothnessReport",
    "TrigonometricSingularity",
    "asymptotic_equivalence_profile",
    "chaikin_mask",
    "exp_bspline_mask",
    "exp_ratio",
    "fit_decay_exponent",
    "forward_difference",
    "franke_1d",
    "grid_point",
    "initial_state",
    "level_masks",
    "limit_samples",
    "mask_oracle",
    "nucc_mask",
    "nucc_mask_alternative",
    "operator_norm",
    "order_estimate",
    "order_table",
    "property_a_d1",
    "refine_curve",
    "refine_step",
    "run",
    "run_traced",
    "sample_initial",
    "second_difference",
    "shape_param_alternative",
    "shape_param_primary",
    "sinh_ratio",
    "smoothness_probe",
    "symbol_from_mask",
]
