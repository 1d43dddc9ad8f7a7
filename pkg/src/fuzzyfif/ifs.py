"""Iterated-function-system construction from a fuzzy data set.

Each map pairs an affine contraction of the knot interval with a vertical
transform ``u -> s_i * u (+) q_i(.)``.  The endpoint matching residuals are
the gate that decides whether the fixed point of the induced operator will
actually interpolate the data; construction computes them up front.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateInterval,
    LengthMismatch,
    OutOfInterval,
    ScaleOutOfRange,
    SchemaViolation,
)
from .fuzzy import FuzzyNumber, d_infty, g_difference_arrays, random_fuzzy
from .grids import require_same_grid


@dataclass(frozen=True)
class AffineMap:
    """x -> a*x + b; a is the similarity ratio of the map."""

    a: float
    b: float

    def __call__(self, x):
        return self.a * x + self.b

    def invert(self, x):
        return (x - self.b) / self.a


class FuzzyDataSet:
    """Strictly increasing knots paired with fuzzy values on one shared grid."""

    __slots__ = ("knots", "values", "grid")

    def __init__(self, knots, values):
        kn = np.asarray(knots, dtype=float).copy()
        if kn.ndim != 1 or kn.size < 3:
            raise SchemaViolation("need at least three knots (two intervals)")
        if not np.all(np.isfinite(kn)):
            raise SchemaViolation("knots must be finite")
        if not np.all(np.diff(kn) > 0):
            raise SchemaViolation("knots must be strictly increasing")
        values = tuple(values)
        if len(values) != kn.size:
            raise LengthMismatch(f"{kn.size} knots need {kn.size} fuzzy values, got {len(values)}")
        grid = require_same_grid(*(v.grid for v in values))
        kn.setflags(write=False)
        self.knots = kn
        self.values = values
        self.grid = grid

    @property
    def n_intervals(self):
        return self.knots.size - 1

    @property
    def span(self):
        return float(self.knots[-1] - self.knots[0])

    def lower_table(self):
        return np.array([v.lower for v in self.values])

    def upper_table(self):
        return np.array([v.upper for v in self.values])


def build_maps(knots):
    """Affine contractions sending the full knot interval onto each subinterval."""
    kn = np.asarray(knots, dtype=float)
    span = kn[-1] - kn[0]
    maps = []
    for i in range(kn.size - 1):
        if kn[i + 1] == kn[i]:
            raise DegenerateInterval(f"knot interval {i} has zero length")
        a = (kn[i + 1] - kn[i]) / span
        maps.append(AffineMap(a=a, b=kn[i] - a * kn[0]))
    return maps


def interval_of(knots, x):
    """Interval assignment rule: [t_i, t_{i+1}) belongs to interval i,
    the right endpoint of the domain to the last interval."""
    return np.clip(np.searchsorted(knots, x, side="right") - 1, 0, len(knots) - 2)


class LinearGDiffRecipe:
    """Default vertical-offset recipe.

    On each interval it blends the two local data values linearly, then
    removes (via the generalized difference) the scaled two-point blend of
    the global endpoint values, so that the matching residuals vanish
    whenever the generalized difference acts as a true difference.
    """

    name = "linear-gdiff"

    def values(self, sys, i, xs):
        """Offset endpoint arrays (len(xs), levels) on interval i."""
        xs = np.asarray(xs, dtype=float)
        t = sys.knots
        lo_t, up_t = sys.lower_table, sys.upper_table
        wb = (xs - t[i]) / (t[i + 1] - t[i])
        b_lo = np.outer(1 - wb, lo_t[i]) + np.outer(wb, lo_t[i + 1])
        b_up = np.outer(1 - wb, up_t[i]) + np.outer(wb, up_t[i + 1])
        xi = sys.maps[i].invert(xs)
        wg = (xi - t[0]) / (t[-1] - t[0])
        g_lo = np.outer(1 - wg, lo_t[0]) + np.outer(wg, lo_t[-1])
        g_up = np.outer(1 - wg, up_t[0]) + np.outer(wg, up_t[-1])
        s = sys.scales[i]
        return g_difference_arrays(b_lo, b_up, s * g_lo, s * g_up)


class TableQRecipe:
    """User-supplied offsets as per-interval level tables over x samples.

    ``entries[i]`` is ``(xs, lower, upper)`` with arrays of shape
    (nx,) and (nx, levels); evaluation interpolates linearly in x.
    """

    name = "table"

    def __init__(self, entries):
        self.entries = [
            (np.asarray(x, float), np.asarray(lo, float), np.asarray(up, float))
            for x, lo, up in entries
        ]
        for x, lo, up in self.entries:
            if not np.all(np.diff(x) > 0):
                raise SchemaViolation("table recipe x samples must increase")
            if lo.shape != (x.size,) + lo.shape[1:] or lo.shape != up.shape:
                raise SchemaViolation("table recipe arrays are inconsistent")

    def values(self, sys, i, xs):
        xs = np.asarray(xs, dtype=float)
        x, lo, up = self.entries[i]
        pos = np.clip(np.searchsorted(x, xs, side="left"), 1, x.size - 1)
        w = ((xs - x[pos - 1]) / (x[pos] - x[pos - 1]))[:, None]
        return (
            (1 - w) * lo[pos - 1] + w * lo[pos],
            (1 - w) * up[pos - 1] + w * up[pos],
        )


@dataclass
class MatchingReport:
    """Endpoint residuals of the vertical transforms against the data."""

    residuals: list  # (left, right) per interval
    tol: float

    @property
    def max_residual(self):
        return max(max(pair) for pair in self.residuals)

    @property
    def passed(self):
        return self.max_residual <= self.tol

    def __str__(self):
        lines = [
            f"  interval {i}: left {l:.3e}  right {r:.3e}"
            for i, (l, r) in enumerate(self.residuals)
        ]
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(f"  matching {verdict} (max {self.max_residual:.3e}, tol {self.tol:g})")
        return "\n".join(lines)


class IfsSystem:
    """Validated system: data, affine maps, vertical scales, offset recipe.

    Immutable after construction; all evaluation methods are pure.
    """

    def __init__(self, data, scales, recipe=None, matching_tol=1e-9,
                 lipschitz_samples=512, rho_safety=1.25):
        scales = np.asarray(scales, dtype=float).copy()
        if scales.shape != (data.n_intervals,):
            raise LengthMismatch(
                f"{data.n_intervals} intervals need {data.n_intervals} scales, got {scales.size}"
            )
        if np.any(scales < 0) or np.any(scales >= 1):
            raise ScaleOutOfRange("vertical scales must satisfy 0 <= s < 1")
        scales.setflags(write=False)
        self.data = data
        self.scales = scales
        self.maps = build_maps(data.knots)
        self.recipe = recipe if recipe is not None else LinearGDiffRecipe()
        self.lower_table = data.lower_table()
        self.upper_table = data.upper_table()
        self.lower_table.setflags(write=False)
        self.upper_table.setflags(write=False)
        self.lipschitz = np.array(
            [estimate_lipschitz(self, i, lipschitz_samples) for i in range(self.n_maps)]
        )
        self.rho = float(self.lipschitz.max() * rho_safety)
        self.matching = check_matching(self, matching_tol)

    # -- geometry ----------------------------------------------------------
    @property
    def knots(self):
        return self.data.knots

    @property
    def grid(self):
        return self.data.grid

    @property
    def n_maps(self):
        return len(self.maps)

    @property
    def ratios(self):
        return np.array([m.a for m in self.maps])

    @property
    def c_min(self):
        return float(np.min(np.abs(self.ratios)))

    @property
    def c_max(self):
        return float(np.max(np.abs(self.ratios)))

    @property
    def s_max(self):
        return float(np.max(np.abs(self.scales)))

    # -- evaluation --------------------------------------------------------
    def q_values(self, i, xs, clip=True):
        """Offset arrays on interval i; xs must lie in that knot interval."""
        xs = np.asarray(xs, dtype=float)
        t = self.knots
        slack = 1e-12 * self.data.span
        if np.any(xs < t[i] - slack) or np.any(xs > t[i + 1] + slack):
            raise OutOfInterval(f"points outside knot interval {i}")
        if clip:
            xs = np.clip(xs, t[i], t[i + 1])
        return self.recipe.values(self, i, xs)

    def q_at(self, i, x):
        lo, up = self.q_values(i, np.array([float(x)]))
        return FuzzyNumber(self.grid, lo[0], up[0])

    def value_map(self, i, x, u):
        """Vertical transform of map i at domain point x: s_i*u (+) q_i(l_i(x))."""
        require_same_grid(self.grid, u.grid)
        lo, up = self.q_values(i, np.array([self.maps[i](float(x))]))
        s = self.scales[i]
        return FuzzyNumber(self.grid, s * u.lower + lo[0], s * u.upper + up[0], validate=False)

    def point_map(self, i, x, u):
        """Full system map: (x, u) -> (l_i(x), F_i(x, u))."""
        return self.maps[i](float(x)), self.value_map(i, x, u)


def build_system(data, scales, recipe=None, matching_tol=1e-9, **kw):
    return IfsSystem(data, scales, recipe=recipe, matching_tol=matching_tol, **kw)


def check_matching(sys, tol=1e-9):
    """Residuals of the endpoint conditions that make the fixed point interpolate."""
    x0, xn = sys.knots[0], sys.knots[-1]
    u0, un = sys.data.values[0], sys.data.values[-1]
    residuals = []
    for i in range(sys.n_maps):
        left = d_infty(sys.value_map(i, x0, u0), sys.data.values[i])
        right = d_infty(sys.value_map(i, xn, un), sys.data.values[i + 1])
        residuals.append((left, right))
    return MatchingReport(residuals=residuals, tol=tol)


def estimate_lipschitz(sys, i, samples=512):
    """Max adjacent difference quotient of the offset map on interval i.

    A lower-bound estimate; callers inflate it by a safety factor before
    using it as a Lipschitz cap.
    """
    if samples < 2:
        raise SchemaViolation("need at least two samples")
    xs = np.linspace(sys.knots[i], sys.knots[i + 1], samples)
    lo, up = sys.q_values(i, xs)
    step = xs[1] - xs[0]
    dmax = max(
        np.abs(np.diff(lo, axis=0)).max(),
        np.abs(np.diff(up, axis=0)).max(),
    )
    return float(dmax / step)


def alt_form_residual(sys, n_points=64, seed=0):
    """Diagnostic: discrepancy between the composed vertical transform and the
    alternative "difference first, blend after" composition.

    The two agree only when the generalized difference distributes over the
    blend; the residual quantifies how far a given data set is from that.
    """
    rng = np.random.default_rng(seed)
    t = sys.knots
    lo_t, up_t = sys.lower_table, sys.upper_table
    worst = 0.0
    for i in range(sys.n_maps):
        xs = np.linspace(t[0], t[-1], n_points)
        u = random_fuzzy(sys.grid, rng, low=float(lo_t.min()), high=float(up_t.max()))
        for x in xs:
            direct = sys.value_map(i, x, u)
            # alternative composition
            wg = (x - t[0]) / (t[-1] - t[0])
            g_lo = (1 - wg) * lo_t[0] + wg * lo_t[-1]
            g_up = (1 - wg) * up_t[0] + wg * up_t[-1]
            dl, du = g_difference_arrays(
                u.lower[None, :], u.upper[None, :], g_lo[None, :], g_up[None, :]
            )
            y = sys.maps[i](x)
            wb = (y - t[i]) / (t[i + 1] - t[i])
            b_lo = (1 - wb) * lo_t[i] + wb * lo_t[i + 1]
            b_up = (1 - wb) * up_t[i] + wb * up_t[i + 1]
            s = sys.scales[i]
            alt = FuzzyNumber(sys.grid, s * dl[0] + b_lo, s * du[0] + b_up, validate=False)
            worst = max(worst, d_infty(direct, alt))
    return worst


# ---------------------------------------------------------------------------
# contraction diagnostics for the blended product metric
# ---------------------------------------------------------------------------

@dataclass
class ThetaMetric:
    """Product metric |x - x'| + theta * d_infty(u, u') with the per-map
    contraction factors it certifies."""

    theta: float
    factors: np.ndarray = field(repr=False)

    def distance(self, x, u, x2, u2):
        return abs(float(x) - float(x2)) + self.theta * d_infty(u, u2)


def admissible_theta(sys):
    """Largest theta below which every system map is a contraction."""
    bounds = []
    for i in range(sys.n_maps):
        c = abs(sys.maps[i].a)
        li = max(sys.lipschitz[i], 1e-300)
        bounds.append((1 - c) / (li * c))
    return float(min(bounds))


def theta_metric(sys, theta=None):
    if theta is None:
        theta = 0.5 * admissible_theta(sys)
    if not 0 < theta < admissible_theta(sys):
        raise ScaleOutOfRange(
            f"theta {theta:g} outside the admissible range (0, {admissible_theta(sys):g})"
        )
    c = np.abs(sys.ratios)
    factors = np.maximum(c + theta * sys.lipschitz * c, np.abs(sys.scales))
    if np.any(factors >= 1):
        raise ScaleOutOfRange("some map is not certified contractive at this theta")
    return ThetaMetric(theta=float(theta), factors=factors)


@dataclass
class ContractionReport:
    theta: float
    trials: int
    violations: int
    worst_margin: float  # most negative slack seen (rhs - lhs)
    sandwich_ok: bool

    @property
    def passed(self):
        return self.violations == 0 and self.sandwich_ok


def verify_theta_contraction(sys, metric=None, trials=1000, seed=0, slack=1e-9):
    """Monte-Carlo check that every map contracts the blended metric, plus the
    equivalence sandwich between the blended and the max product metric."""
    if metric is None:
        metric = theta_metric(sys)
    rng = np.random.default_rng(seed)
    lo = float(sys.lower_table.min()) - 1.0
    hi = float(sys.upper_table.max()) + 1.0
    t = sys.knots
    violations = 0
    worst = np.inf
    sandwich_ok = True
    theta = metric.theta
    for _ in range(trials):
        x = rng.uniform(t[0], t[-1])
        x2 = rng.uniform(t[0], t[-1])
        u = random_fuzzy(sys.grid, rng, lo, hi)
        u2 = random_fuzzy(sys.grid, rng, lo, hi)
        d = metric.distance(x, u, x2, u2)
        dmax = max(abs(x - x2), d_infty(u, u2))
        if theta < 1:
            sandwich_ok &= (theta * dmax <= d + 1e-12) and (d <= 2 * dmax + 1e-12)
        else:
            sandwich_ok &= (dmax <= d + 1e-12) and (d <= 2 * theta * dmax + 1e-12)
        for i in range(sys.n_maps):
            y, v = sys.point_map(i, x, u)
            y2, v2 = sys.point_map(i, x2, u2)
            lhs = abs(y - y2) + theta * d_infty(v, v2)
            rhs = metric.factors[i] * d
            margin = rhs - lhs + slack
            worst = min(worst, margin)
            if margin < 0:
                violations += 1
    return ContractionReport(
        theta=theta,
        trials=trials,
        violations=violations,
        worst_margin=float(worst),
        sandwich_ok=bool(sandwich_ok),
    )
