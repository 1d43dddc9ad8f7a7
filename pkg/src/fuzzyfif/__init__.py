"""Fuzzy-valued fractal interpolation with certified regularity analysis."""

__version__ = "0.1.0"

from .analysis import (
    BoundCheck,
    EquivalenceReport,
    HolderReport,
    OscillationFit,
    address_oracle_gap,
    data_bound,
    estimate_exponent,
    holder_constants,
    level_equivalence,
    verify_holder_bound,
)
from .config import RunConfig
from .engine import FuzzyFif, LevelCurves, evaluate, extract_level, make_eval_grid, solve_fif
from .errors import (
    ConfigParse,
    DegenerateInterval,
    FuzzyFifError,
    GridMismatch,
    InsufficientResolution,
    InvalidTauChoice,
    LengthMismatch,
    MatchingNotVerified,
    NoConvergence,
    NonConvexLevels,
    NonNormal,
    OutOfDomain,
    OutOfInterval,
    ScaleOutOfRange,
    SchemaViolation,
    UnboundedSupport,
)
from .estimators import FractalInterpolator, FuzzyFractalInterpolator
from .fuzzy import (
    FuzzyNumber,
    add,
    d_infty,
    g_difference,
    random_fuzzy,
    scale,
    sup_distance,
)
from .grids import LevelGrid
from .ifs import (
    AffineMap,
    FuzzyDataSet,
    IfsSystem,
    LinearGDiffRecipe,
    MatchingReport,
    TableQRecipe,
    ThetaMetric,
    admissible_theta,
    alt_form_residual,
    build_maps,
    build_system,
    check_matching,
    estimate_lipschitz,
    theta_metric,
    verify_theta_contraction,
)
from .membership import (
    Crisp,
    LevelTable,
    Membership,
    QuadraticCap,
    QuadraticFlank,
    Trapezoidal,
    Triangular,
    TruncatedGaussian,
    from_membership,
    invert_membership,
)
from .scalar import ScalarFif, address_values, affine_q, solve_scalar_fif

__all__ = [
    "AffineMap", "BoundCheck", "ConfigParse", "Crisp", "DegenerateInterval",
    "EquivalenceReport", "FractalInterpolator", "FuzzyDataSet", "FuzzyFif",
    "FuzzyFifError", "FuzzyFractalInterpolator", "FuzzyNumber", "GridMismatch",
    "HolderReport", "IfsSystem", "InsufficientResolution", "InvalidTauChoice",
    "LengthMismatch", "LevelCurves", "LevelGrid", "LevelTable",
    "LinearGDiffRecipe", "MatchingNotVerified", "MatchingReport", "Membership",
    "NoConvergence", "NonConvexLevels", "NonNormal", "OscillationFit",
    "OutOfDomain", "OutOfInterval", "QuadraticCap", "QuadraticFlank",
    "RunConfig", "ScalarFif", "ScaleOutOfRange", "SchemaViolation",
    "TableQRecipe", "ThetaMetric", "Trapezoidal", "Triangular",
    "TruncatedGaussian", "UnboundedSupport", "add", "address_oracle_gap",
    "address_values", "admissible_theta", "affine_q", "alt_form_residual",
    "build_maps", "build_system", "check_matching", "d_infty", "data_bound",
    "estimate_exponent", "estimate_lipschitz", "evaluate", "extract_level",
    "from_membership", "g_difference", "holder_constants", "invert_membership",
    "level_equivalence", "make_eval_grid", "random_fuzzy", "scale",
    "solve_fif", "solve_scalar_fif", "sup_distance", "theta_metric",
    "verify_holder_bound", "verify_theta_contraction",
]
