"""Membership-function specs and their conversion to level-interval families.

Built-in kinds invert their membership function analytically; arbitrary
callables go through dense sampling plus bisection.  Both paths return, per
level, the tightest interval of points with membership at least that level,
and the closure of the support at level zero.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NonConvexLevels, NonNormal, SchemaViolation, UnboundedSupport
from .fuzzy import FuzzyNumber

#: a membership function counts as normal if its peak reaches 1 - this.
NORMALITY_TOL = 1e-9


@dataclass(frozen=True)
class Triangular:
    a: float
    b: float
    c: float
    kind = "triangular"

    def __post_init__(self):
        if not self.a <= self.b <= self.c:
            raise SchemaViolation("triangular needs a <= b <= c")

    def mu(self, y):
        y = np.asarray(y, dtype=float)
        left = np.where(self.b > self.a, (y - self.a) / max(self.b - self.a, 1e-300), 1.0)
        right = np.where(self.c > self.b, (self.c - y) / max(self.c - self.b, 1e-300), 1.0)
        inside = (y >= self.a) & (y <= self.c)
        return np.where(inside, np.minimum(left, right).clip(0.0, 1.0), 0.0)

    def level_endpoints(self, levels):
        return self.a + levels * (self.b - self.a), self.c - levels * (self.c - self.b)


@dataclass(frozen=True)
class Trapezoidal:
    a: float
    b: float
    c: float
    d: float
    kind = "trapezoidal"

    def __post_init__(self):
        if not self.a <= self.b <= self.c <= self.d:
            raise SchemaViolation("trapezoidal needs a <= b <= c <= d")

    def mu(self, y):
        y = np.asarray(y, dtype=float)
        left = np.where(self.b > self.a, (y - self.a) / max(self.b - self.a, 1e-300), 1.0)
        right = np.where(self.d > self.c, (self.d - y) / max(self.d - self.c, 1e-300), 1.0)
        inside = (y >= self.a) & (y <= self.d)
        return np.where(inside, np.minimum(np.minimum(left, right), 1.0).clip(0.0, 1.0), 0.0)

    def level_endpoints(self, levels):
        return self.a + levels * (self.b - self.a), self.d - levels * (self.d - self.c)


@dataclass(frozen=True)
class TruncatedGaussian:
    """exp(-((y - center)/width)^2) restricted to a compact support interval."""

    center: float
    width: float
    support_lo: float
    support_hi: float
    kind = "truncated_gaussian"

    def __post_init__(self):
        if self.width <= 0:
            raise SchemaViolation("gaussian width must be positive")
        if not self.support_lo <= self.center <= self.support_hi:
            raise NonNormal("gaussian center outside the support: peak never reaches 1")

    def mu(self, y):
        y = np.asarray(y, dtype=float)
        val = np.exp(-(((y - self.center) / self.width) ** 2))
        inside = (y >= self.support_lo) & (y <= self.support_hi)
        return np.where(inside, val, 0.0)

    def level_endpoints(self, levels):
        r = np.empty_like(levels)
        r[0] = np.inf  # level 0 is the support closure
        r[1:] = np.sqrt(np.maximum(-np.log(levels[1:]), 0.0))
        lo = np.maximum(self.support_lo, self.center - self.width * r)
        up = np.minimum(self.support_hi, self.center + self.width * r)
        return lo, up


@dataclass(frozen=True)
class QuadraticFlank:
    """Convex quadratic flanks: membership ((y-a)/(peak-a))^2 rising to 1 at the peak."""

    a: float
    peak: float
    b: float
    kind = "quadratic_flank"

    def __post_init__(self):
        if not self.a <= self.peak <= self.b:
            raise SchemaViolation("quadratic_flank needs a <= peak <= b")

    def mu(self, y):
        y = np.asarray(y, dtype=float)
        wl = max(self.peak - self.a, 1e-300)
        wr = max(self.b - self.peak, 1e-300)
        left = ((y - self.a) / wl) ** 2
        right = ((y - self.b) / wr) ** 2
        out = np.where(y <= self.peak, left, right)
        inside = (y >= self.a) & (y <= self.b)
        return np.where(inside, out.clip(0.0, 1.0), 0.0)

    def level_endpoints(self, levels):
        r = np.sqrt(levels)
        return self.a + (self.peak - self.a) * r, self.b - (self.b - self.peak) * r


@dataclass(frozen=True)
class QuadraticCap:
    """Concave quadratic bell: membership 1 - ((y-peak)/halfwidth)^2, zero at a and b."""

    a: float
    peak: float
    b: float
    kind = "quadratic_cap"

    def __post_init__(self):
        if not self.a <= self.peak <= self.b:
            raise SchemaViolation("quadratic_cap needs a <= peak <= b")

    def mu(self, y):
        y = np.asarray(y, dtype=float)
        wl = max(self.peak - self.a, 1e-300)
        wr = max(self.b - self.peak, 1e-300)
        left = 1.0 - ((self.peak - y) / wl) ** 2
        right = 1.0 - ((y - self.peak) / wr) ** 2
        out = np.where(y <= self.peak, left, right)
        inside = (y >= self.a) & (y <= self.b)
        return np.where(inside, out.clip(0.0, 1.0), 0.0)

    def level_endpoints(self, levels):
        r = np.sqrt(1.0 - levels)
        return self.peak - (self.peak - self.a) * r, self.peak + (self.b - self.peak) * r


@dataclass(frozen=True)
class Crisp:
    value: float
    kind = "crisp"

    def mu(self, y):
        return np.where(np.asarray(y, dtype=float) == self.value, 1.0, 0.0)

    def level_endpoints(self, levels):
        arr = np.full_like(levels, self.value)
        return arr, arr.copy()


@dataclass(frozen=True)
class LevelTable:
    """Explicit level intervals; resampled onto the target grid if needed."""

    levels: tuple
    lower: tuple
    upper: tuple
    kind = "level_table"

    def level_endpoints(self, levels):
        src = np.asarray(self.levels, dtype=float)
        lo = np.asarray(self.lower, dtype=float)
        up = np.asarray(self.upper, dtype=float)
        if src.ndim != 1 or lo.shape != src.shape or up.shape != src.shape:
            raise SchemaViolation("level table arrays must share one shape")
        if not np.all(np.diff(src) > 0) or src[0] != 0.0 or src[-1] != 1.0:
            raise SchemaViolation("level table levels must increase from 0 to 1")
        if np.array_equal(src, levels):
            return lo.copy(), up.copy()
        return np.interp(levels, src, lo), np.interp(levels, src, up)


@dataclass(frozen=True)
class Membership:
    """Arbitrary membership callable on a declared compact support.

    Converted by dense sampling plus per-level bisection; not serializable.
    """

    fn: object
    support_lo: float
    support_hi: float
    kind = "membership"

    def mu(self, y):
        y = np.asarray(y, dtype=float)
        inside = (y >= self.support_lo) & (y <= self.support_hi)
        return np.where(inside, np.asarray(self.fn(y), dtype=float), 0.0)

    def level_endpoints(self, levels):
        if not (np.isfinite(self.support_lo) and np.isfinite(self.support_hi)):
            raise UnboundedSupport("declared support must be a bounded interval")
        return invert_membership(self.mu, self.support_lo, self.support_hi, levels)


def invert_membership(mu, lo, hi, levels, samples=4096, xtol=1e-13):
    """Numeric level inversion of a unimodal membership function.

    Independent of the analytic formulas above: dense scan for normality and
    level-set convexity, golden-section refinement of the peak, then flank
    bisection for every level.
    """
    ys = np.linspace(lo, hi, samples + 1)
    vals = np.asarray(mu(ys), dtype=float)
    peak_idx = int(np.argmax(vals))
    if vals[peak_idx] < 1.0 - NORMALITY_TOL:
        raise NonNormal(f"max membership {vals[peak_idx]:.12f} < 1")
    y_peak = _refine_peak(mu, ys, peak_idx, xtol)
    peak_val = _mu1(mu, y_peak)
    if peak_val < 1.0 - NORMALITY_TOL:
        raise NonNormal(f"max membership {peak_val:.12f} < 1")

    lower = np.empty_like(levels)
    upper = np.empty_like(levels)
    lower[0], upper[0] = lo, hi
    for k in range(1, len(levels)):
        lam = min(levels[k], peak_val)
        taken = np.flatnonzero(vals >= min(lam, vals[peak_idx]) - 1e-15)
        if taken.size > 1 and np.any(np.diff(taken) != 1):
            raise NonConvexLevels(f"level set at {levels[k]:g} is disconnected")
        lower[k] = _bisect_rising(mu, lo, y_peak, lam, xtol)
        upper[k] = _bisect_falling(mu, y_peak, hi, lam, xtol)
    # bisection jitter can break nesting by ~xtol; snap monotone
    np.maximum.accumulate(lower, out=lower)
    np.minimum.accumulate(upper, out=upper)
    return lower, upper


def _mu1(mu, y):
    return float(np.asarray(mu(np.array([y])), dtype=float)[0])


def _refine_peak(mu, ys, peak_idx, xtol):
    a = ys[max(peak_idx - 1, 0)]
    b = ys[min(peak_idx + 1, len(ys) - 1)]
    phi = (np.sqrt(5.0) - 1.0) / 2.0
    c, d = b - phi * (b - a), a + phi * (b - a)
    fc, fd = _mu1(mu, c), _mu1(mu, d)
    while b - a > xtol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = _mu1(mu, c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = _mu1(mu, d)
    return 0.5 * (a + b)


def _bisect_rising(mu, ya, yb, lam, xtol):
    """Leftmost y in [ya, yb] with membership >= lam (flank is monotone)."""
    if _mu1(mu, ya) >= lam:
        return ya
    while yb - ya > xtol:
        mid = 0.5 * (ya + yb)
        if _mu1(mu, mid) >= lam:
            yb = mid
        else:
            ya = mid
    return yb


def _bisect_falling(mu, ya, yb, lam, xtol):
    if _mu1(mu, yb) >= lam:
        return yb
    while yb - ya > xtol:
        mid = 0.5 * (ya + yb)
        if _mu1(mu, mid) >= lam:
            ya = mid
        else:
            yb = mid
    return ya


def from_membership(spec, grid):
    """Convert a membership spec to a fuzzy number on the grid."""
    lo, up = spec.level_endpoints(grid.levels)
    return FuzzyNumber(grid, lo, up)


# serializable kinds for config files (Membership is API-only)
SPEC_KINDS = {
    "triangular": (Triangular, ("a", "b", "c")),
    "trapezoidal": (Trapezoidal, ("a", "b", "c", "d")),
    "truncated_gaussian": (TruncatedGaussian, ("center", "width", "support_lo", "support_hi")),
    "quadratic_flank": (QuadraticFlank, ("a", "peak", "b")),
    "quadratic_cap": (QuadraticCap, ("a", "peak", "b")),
    "crisp": (Crisp, ("value",)),
    "level_table": (LevelTable, ("levels", "lower", "upper")),
}


def spec_from_dict(d):
    if not isinstance(d, dict) or "kind" not in d:
        raise SchemaViolation("membership spec must be an object with a 'kind'")
    kind = d["kind"]
    if kind not in SPEC_KINDS:
        raise SchemaViolation(f"unknown membership kind {kind!r}")
    cls, fields = SPEC_KINDS[kind]
    try:
        args = {f: d[f] for f in fields}
    except KeyError as e:
        raise SchemaViolation(f"membership kind {kind!r} missing field {e.args[0]!r}") from None
    if kind == "level_table":
        args = {f: tuple(args[f]) for f in fields}
    return cls(**args)


def spec_to_dict(spec):
    cls_fields = SPEC_KINDS.get(spec.kind)
    if cls_fields is None:
        raise SchemaViolation(f"membership kind {spec.kind!r} is not serializable")
    d = {"kind": spec.kind}
    for f in cls_fields[1]:
        v = getattr(spec, f)
        d[f] = list(v) if isinstance(v, tuple) else v
    return d
