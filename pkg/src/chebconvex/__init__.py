"""Chebyshev systems, generalized divided differences, convexity checks
and variation bounds, with exact-rational and float backends."""

from .core import (
    AffineFn,
    Backend,
    ChebyshevSystem,
    ConstFn,
    CosFn,
    ExpFn,
    FiniteSet,
    FunctionSpec,
    Interval,
    NegCotFn,
    OrderingClass,
    PointTuple,
    PowerFn,
    PuncturedInterval,
    SampledFn,
    SignClaim,
    SinFn,
    affine,
    evaluate,
    function_from_json,
    function_to_json,
    puncture,
    system_from_json,
    system_to_json,
    to_exact,
    to_float,
    validate_tuple,
)
from .determinant import (
    Matrix,
    PositivityReport,
    SylvesterReport,
    bordered_minor,
    collocation_det,
    collocation_matrix,
    det,
    is_positive_chebyshev,
    matrix_from_rows,
    sylvester_check,
)
from .divdiff import (
    DividedDifference,
    ResidualReport,
    classical_divided_difference,
    complete_homogeneous,
    divided_difference,
    power_divdiff_check,
    power_divdiff_expansion,
)
from .induced import (
    DerivedFn,
    InducedSystem,
    SignIndex,
    induced_system,
    sign_index,
    verify_induced_system,
)
from .convexity import (
    AgreementReport,
    ConvexityVerdict,
    check_convex_direct,
    check_convex_induced,
    check_convex_interval,
    convexity_identity_check,
    cross_mode_agreement,
    is_strictly_convex,
)
from .variation import (
    Partition,
    RefinementStrategy,
    VariationCheckReport,
    VariationEstimate,
    check_variation_bound,
    default_anchors,
    estimate_variation,
    variation_bound,
    variation_sum,
)
from .systems import (
    CatalogEntry,
    catalog_entry,
    default_grid,
    one_xsq_system,
    polynomial_system,
    trig_even_system,
    trig_induced_closed_form,
    trig_odd_system,
    verified_prefix_depth,
)
from . import errors

__version__ = "0.1.0"
