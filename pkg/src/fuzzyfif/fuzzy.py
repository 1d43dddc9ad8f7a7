"""Fuzzy numbers as nested families of level intervals, their arithmetic and metrics.

A fuzzy number is stored as two arrays over a shared :class:`LevelGrid`:
``lower[k] <= upper[k]`` is the interval of points with membership at least
``levels[k]``.  Nesting (lower nondecreasing, upper nonincreasing in the
level) is what makes the family a valid fuzzy number; it is validated at
construction and preserved exactly by every operation here.
"""

import numpy as np

from .errors import LengthMismatch, SchemaViolation
from .grids import require_same_grid

#: slack for runtime nesting validation; the ops themselves are exact, the
#: slack only absorbs roundoff from numeric membership inversion.
NESTING_ATOL = 1e-12


class FuzzyNumber:
    __slots__ = ("grid", "lower", "upper")

    def __init__(self, grid, lower, upper, validate=True):
        lo = np.asarray(lower, dtype=float).copy()
        up = np.asarray(upper, dtype=float).copy()
        if lo.shape != (len(grid),) or up.shape != (len(grid),):
            raise SchemaViolation("endpoint arrays must have one entry per level")
        if validate:
            validate_level_family(lo, up)
        lo.setflags(write=False)
        up.setflags(write=False)
        self.grid = grid
        self.lower = lo
        self.upper = up

    @classmethod
    def crisp(cls, value, grid):
        """Embed a real number as the degenerate fuzzy number."""
        v = float(value)
        arr = np.full(len(grid), v)
        return cls(grid, arr, arr, validate=False)

    def level(self, lam):
        """Interval at an arbitrary level, piecewise-linear between grid levels."""
        k, w = self.grid.interp_weights(lam)
        return (
            (1 - w) * self.lower[k] + w * self.lower[k + 1],
            (1 - w) * self.upper[k] + w * self.upper[k + 1],
        )

    @property
    def support(self):
        return self.lower[0], self.upper[0]

    @property
    def core(self):
        return self.lower[-1], self.upper[-1]

    def is_crisp(self, atol=0.0):
        return bool(np.all(np.abs(self.upper - self.lower) <= atol))

    def __add__(self, other):
        if not isinstance(other, FuzzyNumber):
            return NotImplemented
        return add(self, other)

    def __mul__(self, c):
        return scale(c, self)

    __rmul__ = __mul__

    def __repr__(self):
        return (
            f"FuzzyNumber(support=[{self.lower[0]:g}, {self.upper[0]:g}], "
            f"core=[{self.lower[-1]:g}, {self.upper[-1]:g}])"
        )


def validate_level_family(lower, upper, atol=NESTING_ATOL):
    """Check lower <= upper and interval nesting across levels."""
    if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
        raise SchemaViolation("level endpoints must be finite")
    scale_ = max(1.0, float(np.max(np.abs(lower))), float(np.max(np.abs(upper))))
    tol = atol * scale_
    if np.any(upper - lower < -tol):
        raise SchemaViolation("lower endpoint exceeds upper endpoint at some level")
    if np.any(np.diff(lower) < -tol) or np.any(np.diff(upper) > tol):
        raise SchemaViolation("level intervals are not nested")


def add(u, v):
    """Level-wise interval sum."""
    require_same_grid(u.grid, v.grid)
    return FuzzyNumber(u.grid, u.lower + v.lower, u.upper + v.upper, validate=False)


def scale(c, u):
    """Level-wise scalar product; negative factors swap the endpoints."""
    c = float(c)
    if c >= 0:
        return FuzzyNumber(u.grid, c * u.lower, c * u.upper, validate=False)
    return FuzzyNumber(u.grid, c * u.upper, c * u.lower, validate=False)


def g_difference(u, v):
    """Generalized level-set difference of u and v.

    At each level the result is the running envelope, over all grid levels at
    or above it, of the two endpoint differences.  A single backward scan
    makes each level's inf/sup an O(1) update, and the construction nests by
    definition because the envelope is taken over a shrinking set of levels.
    """
    require_same_grid(u.grid, v.grid)
    dl = u.lower - v.lower
    du = u.upper - v.upper
    lo = np.minimum.accumulate(np.minimum(dl, du)[::-1])[::-1]
    up = np.maximum.accumulate(np.maximum(dl, du)[::-1])[::-1]
    return FuzzyNumber(u.grid, lo, up, validate=False)


def g_difference_arrays(b_lower, b_upper, v_lower, v_upper):
    """Vectorized generalized difference for (points, levels) arrays."""
    dl = b_lower - v_lower
    du = b_upper - v_upper
    lo = np.minimum.accumulate(np.minimum(dl, du)[..., ::-1], axis=-1)[..., ::-1]
    up = np.maximum.accumulate(np.maximum(dl, du)[..., ::-1], axis=-1)[..., ::-1]
    return lo, up


def d_infty(u, v):
    """Supreme metric: worst endpoint distance over the level grid."""
    require_same_grid(u.grid, v.grid)
    return float(
        max(np.max(np.abs(u.lower - v.lower)), np.max(np.abs(u.upper - v.upper)))
    )


def sup_distance(f_samples, g_samples):
    """Uniform distance between two sampled fuzzy functions (max of d_infty)."""
    if len(f_samples) != len(g_samples):
        raise LengthMismatch("sample lists differ in length")
    if not f_samples:
        raise LengthMismatch("empty sample lists")
    return max(d_infty(a, b) for a, b in zip(f_samples, g_samples))


def random_fuzzy(grid, rng, low=-1.0, high=1.0, max_width=1.0):
    """Random valid fuzzy number; used by contraction checks and tests."""
    m = len(grid)
    core_lo = rng.uniform(low, high)
    core_hi = core_lo + rng.uniform(0.0, 0.2 * max_width)
    drop_l = rng.uniform(0.0, 0.4 * max_width)
    drop_r = rng.uniform(0.0, 0.4 * max_width)
    inc_l = rng.uniform(0.0, 1.0, m - 1)
    inc_r = rng.uniform(0.0, 1.0, m - 1)
    inc_l *= drop_l / max(inc_l.sum(), 1e-300)
    inc_r *= drop_r / max(inc_r.sum(), 1e-300)
    lower = np.empty(m)
    upper = np.empty(m)
    lower[-1] = core_lo
    upper[-1] = core_hi
    lower[:-1] = core_lo - np.cumsum(inc_l[::-1])[::-1]
    upper[:-1] = core_hi + np.cumsum(inc_r[::-1])[::-1]
    return FuzzyNumber(grid, lower, upper)
