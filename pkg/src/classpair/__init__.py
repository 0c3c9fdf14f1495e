"""Class number lower bounds from elliptic-curve rational points.

Exact-arithmetic toolkit: short Weierstrass group law over Q, certified
canonical heights and regulators, binary quadratic form reduction and
brute-force class numbers, the point-to-form-class pairing, and the
effective bound evaluators with a family scan pipeline.
"""

from .bounds import (
    BoundEvaluation,
    BoundReport,
    FamilyCurve,
    HypothesisCheck,
    ScanOptions,
    class_bound_family,
    class_bound_general,
    compare_with_ggz,
    csv_text,
    example_inequality_threshold,
    family_constants,
    family_curve,
    format_table,
    ggz_bound,
    height_budget_family,
    height_budget_general,
    scan,
    write_csv,
)
from .catalog import (
    BUILTIN_CATALOG,
    CurveCatalogEntry,
    builtin_entry,
    load_catalog,
    parse_catalog,
    search_generators,
    validate_entry,
)
from .curves import (
    INFINITY,
    CurveModel,
    RationalPoint,
    TwistPoint,
    curve_new,
    family_discriminant,
    family_twist_point,
    integral_points,
    on_curve,
    point,
    point_add,
    point_neg,
    point_order,
    point_scale,
    torsion_order,
    torsion_points,
    twist_contains,
)
from .heights import (
    CurveProfile,
    HeightEstimate,
    build_profile,
    canonical_height,
    count_lower_bound,
    count_lower_bound_subset,
    diameter,
    enumerate_points_below,
    gram_matrix,
    height_pairing,
    naive_height,
    regulator,
    unit_ball_volume,
    weil_height,
    weil_height_rational,
)
from .intervals import Interval
from .pairing import (
    PairingContext,
    inequivalence_guard,
    pair,
    pair_form,
    pair_point_set,
    pairing_context,
)
from .qforms import (
    FundamentalDecomposition,
    QuadraticForm,
    class_number,
    equivalent,
    fundamental_decomposition,
    hurwitz_class_number,
    hurwitz_class_number_direct,
    is_fundamental,
    kronecker_chi,
    reduce_form,
    reduced_forms,
    transform,
)

__version__ = "0.1.0"
