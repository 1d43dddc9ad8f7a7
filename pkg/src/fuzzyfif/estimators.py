"""Estimator-style wrappers so the interpolators compose with sklearn tooling.

``fit`` consumes knots plus values, ``predict``/``transform`` evaluate the
fixed point; hyperparameters round-trip through ``get_params``/``set_params``.
"""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted, column_or_1d

from .analysis import holder_constants
from .engine import extract_level, solve_fif
from .errors import SchemaViolation
from .fuzzy import FuzzyNumber
from .grids import LevelGrid
from .ifs import FuzzyDataSet, IfsSystem, LinearGDiffRecipe, TableQRecipe
from .membership import from_membership, spec_from_dict
from .scalar import affine_q, solve_scalar_fif


def _validate_knots(X):
    X = np.asarray(X, dtype=float)
    if X.ndim == 2 and X.shape[1] == 1:
        X = X[:, 0]
    X = column_or_1d(X)
    return X


def as_fuzzy_number(value, grid):
    """Coerce the accepted value forms to a fuzzy number on the grid."""
    if isinstance(value, FuzzyNumber):
        if value.grid != grid:
            raise SchemaViolation("value grids do not match the estimator grid")
        return value
    if isinstance(value, dict):
        return from_membership(spec_from_dict(value), grid)
    if hasattr(value, "level_endpoints"):
        return from_membership(value, grid)
    try:
        if np.isscalar(value):
            return FuzzyNumber.crisp(float(value), grid)
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        arr = None
    if arr is not None and arr.ndim == 2 and arr.shape == (2, len(grid)):
        return FuzzyNumber(grid, arr[0], arr[1])
    raise SchemaViolation(
        "values must be fuzzy numbers, membership specs, scalars, or (2, levels) arrays"
    )


class FuzzyFractalInterpolator(BaseEstimator):
    """Fits the fuzzy-valued fractal interpolant of (knots, fuzzy values).

    Parameters
    ----------
    scales : float or sequence, vertical scaling per interval (broadcast if scalar).
    level_count : membership grid resolution (level_count + 1 levels).
    grid_points : evaluation grid resolution.
    tol : certified sup-distance to the fixed point.
    max_depth : sweep budget before giving up.
    q_recipe : "linear-gdiff" or a recipe object.
    matching_tol : endpoint residual gate.
    allow_mismatch : proceed past a failing gate (the result then does not
        interpolate the data).
    """

    def __init__(self, scales=0.3, level_count=100, grid_points=1024, tol=1e-8,
                 max_depth=256, q_recipe="linear-gdiff", matching_tol=1e-9,
                 allow_mismatch=False, eval_depth=32):
        self.scales = scales
        self.level_count = level_count
        self.grid_points = grid_points
        self.tol = tol
        self.max_depth = max_depth
        self.q_recipe = q_recipe
        self.matching_tol = matching_tol
        self.allow_mismatch = allow_mismatch
        self.eval_depth = eval_depth

    def _recipe(self):
        if self.q_recipe == "linear-gdiff":
            return LinearGDiffRecipe()
        if isinstance(self.q_recipe, (LinearGDiffRecipe, TableQRecipe)):
            return self.q_recipe
        raise SchemaViolation(f"unknown offset recipe {self.q_recipe!r}")

    def fit(self, X, y):
        knots = _validate_knots(X)
        self.grid_ = LevelGrid.uniform(self.level_count)
        values = [as_fuzzy_number(v, self.grid_) for v in y]
        self.data_ = FuzzyDataSet(knots, values)
        scales = self.scales
        if np.isscalar(scales):
            scales = np.full(self.data_.n_intervals, float(scales))
        self.system_ = IfsSystem(
            self.data_, scales, recipe=self._recipe(), matching_tol=self.matching_tol
        )
        self.matching_ = self.system_.matching
        self.fif_ = solve_fif(
            self.system_,
            n_points=self.grid_points,
            tol=self.tol,
            max_depth=self.max_depth,
            allow_mismatch=self.allow_mismatch,
        )
        self.depth_ = self.fif_.depth
        self.residual_ = self.fif_.residual
        return self

    def predict(self, X):
        """Fuzzy values of the interpolant at the query points."""
        check_is_fitted(self, "fif_")
        xs = _validate_knots(X)
        lo, up = self.fif_.values_at(xs)
        return [
            FuzzyNumber(self.grid_, lo[j], up[j], validate=False)
            for j in range(xs.size)
        ]

    def transform(self, X):
        """Level tables stacked as a 2D array: lower endpoints then upper."""
        check_is_fitted(self, "fif_")
        xs = _validate_knots(X)
        lo, up = self.fif_.values_at(xs)
        return np.hstack([lo, up])

    def predict_level(self, X, level):
        """(n, 2) array of the level interval endpoints at the query points."""
        check_is_fitted(self, "fif_")
        xs = _validate_knots(X)
        k, w = self.grid_.interp_weights(level)
        lo, up = self.fif_.values_at(xs)
        return np.column_stack(
            [
                (1 - w) * lo[:, k] + w * lo[:, k + 1],
                (1 - w) * up[:, k] + w * up[:, k + 1],
            ]
        )

    def level_curves(self, level):
        check_is_fitted(self, "fif_")
        return extract_level(self.fif_, level)

    def holder_report(self, **kw):
        check_is_fitted(self, "system_")
        return holder_constants(self.system_, **kw)


class FractalInterpolator(BaseEstimator):
    """Classical real-valued fractal interpolant with the affine offset family."""

    def __init__(self, scales=0.3, grid_points=1024, tol=1e-9, max_depth=2000):
        self.scales = scales
        self.grid_points = grid_points
        self.tol = tol
        self.max_depth = max_depth

    def fit(self, X, y):
        knots = _validate_knots(X)
        y = column_or_1d(np.asarray(y, dtype=float))
        if y.size != knots.size:
            raise SchemaViolation("one value per knot required")
        scales = self.scales
        if np.isscalar(scales):
            scales = np.full(knots.size - 1, float(scales))
        q = affine_q(knots, y, scales)
        self.fif_ = solve_scalar_fif(
            knots, y, scales, q,
            n_points=self.grid_points, tol=self.tol, max_depth=self.max_depth,
        )
        self.depth_ = self.fif_.depth
        self.residual_ = self.fif_.residual
        return self

    def predict(self, X):
        check_is_fitted(self, "fif_")
        return self.fif_.at(_validate_knots(X))
