"""Regularity analysis: certified Holder constants, empirical exponent fits,
bound verification, and the level-decomposition equivalence harness."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InsufficientResolution,
    InvalidTauChoice,
    ScaleOutOfRange,
    SchemaViolation,
)
from .engine import extract_level
from .scalar import address_values, solve_scalar_fif

CASE_SUB = "delta_lt_1"
CASE_CRITICAL = "delta_eq_1"
CASE_SUPER = "delta_gt_1"


def data_bound(data):
    """Uniform bound on the data: largest absolute support endpoint.

    By nesting, every level endpoint of every value lies between the level-0
    extremes, so this bounds all level slices at once.
    """
    return float(
        max(max(abs(v.lower[0]), abs(v.upper[0])) for v in data.values)
    )


@dataclass
class HolderReport:
    """Certified uniform bound and Holder pair for every level slice."""

    a_bound: float
    rho: float
    c_min: float
    c_max: float
    s: float
    delta: float
    alpha: float
    big_m: float
    tau: float
    q_const: float
    k_const: float
    h_f: float
    case: str
    n_maps: int
    span: float

    def to_dict(self):
        return {
            "a_bound": self.a_bound,
            "rho": self.rho,
            "c_min": self.c_min,
            "c_max": self.c_max,
            "s": self.s,
            "delta": self.delta,
            "alpha": self.alpha,
            "big_m": self.big_m,
            "tau": self.tau,
            "q_const": self.q_const,
            "k_const": self.k_const,
            "h_f": self.h_f,
            "case": self.case,
            "n_maps": self.n_maps,
            "span": self.span,
        }


def holder_constants(sys, a_bound=None, rho=None, tau_if_critical=0.9,
                     critical_tol=1e-12):
    """Holder coefficient and exponent guaranteed by the system parameters.

    The exponent depends only on the vertical scales and the similarity
    ratios; the coefficient additionally on the data bound and the offset
    Lipschitz cap.  Three regimes split on delta = s / c_min.
    """
    if a_bound is None:
        a_bound = data_bound(sys.data)
    if rho is None:
        rho = sys.rho
    if rho < sys.lipschitz.max():
        raise SchemaViolation("rho must dominate the estimated offset Lipschitz bounds")
    s = sys.s_max
    if s >= 1:
        raise ScaleOutOfRange("max vertical scale must be below 1")
    c_min, c_max = sys.c_min, sys.c_max
    span = sys.data.span
    alpha = (rho * c_max * span + (1 + s) * a_bound) / (1 - s)
    big_m = max(2 * alpha / (c_min * span), rho)
    delta = s / c_min
    if delta < 1 - critical_tol:
        case = CASE_SUB
        tau = 1.0
        q_const = big_m / (1 - delta)
    elif delta <= 1 + critical_tol:
        case = CASE_CRITICAL
        if not 0 < tau_if_critical < 1:
            raise InvalidTauChoice("critical case needs an exponent strictly inside (0, 1)")
        tau = float(tau_if_critical)
        q_const = (
            big_m
            * (1 + 1 / (abs(math.log(c_max)) * (1 - tau) * math.e))
            * max(1.0, span)
        )
    else:
        case = CASE_SUPER
        tau = 1 + math.log(delta) / math.log(c_max)
        if tau <= 0:
            raise ScaleOutOfRange(
                "vertical scales too large relative to the map ratios: "
                "the guaranteed exponent degenerates to zero"
            )
        q_const = big_m * delta / (delta - 1) * max(1.0, span)
    k_const = 2 * sys.n_maps * q_const
    return HolderReport(
        a_bound=float(a_bound),
        rho=float(rho),
        c_min=c_min,
        c_max=c_max,
        s=s,
        delta=float(delta),
        alpha=float(alpha),
        big_m=float(big_m),
        tau=float(tau),
        q_const=float(q_const),
        k_const=float(k_const),
        h_f=float(k_const),
        case=case,
        n_maps=sys.n_maps,
        span=span,
    )


@dataclass
class BoundCheck:
    passed: bool
    pairs: int
    violations: int
    worst_ratio: float
    worst_pair: tuple
    bound_coefficient: float
    exponent: float


def verify_holder_bound(fif, report, pairs=10000, seed=0):
    """Check the certified bound on random plus knot-straddling point pairs.

    Also reports the largest observed ratio, an empirical lower bound for the
    best possible coefficient at the certified exponent.
    """
    rng = np.random.default_rng(seed)
    t = fif.sys.knots
    span = t[-1] - t[0]
    xa = rng.uniform(t[0], t[-1], pairs)
    xb = rng.uniform(t[0], t[-1], pairs)
    extra_a, extra_b = [], []
    for k in t:
        for j in range(1, 15):
            h = span * 2.0 ** (-j)
            extra_a.append(max(t[0], k - h))
            extra_b.append(min(t[-1], k + h))
    xa = np.concatenate([xa, extra_a])
    xb = np.concatenate([xb, extra_b])
    lo_a, up_a = fif.values_at(xa)
    lo_b, up_b = fif.values_at(xb)
    d = np.maximum(
        np.max(np.abs(lo_a - lo_b), axis=1), np.max(np.abs(up_a - up_b), axis=1)
    )
    dx = np.abs(xa - xb)
    bound = report.h_f * dx ** report.tau + 2 * fif.tol
    bad = d > bound
    nonzero = dx > 0
    ratios = np.zeros_like(d)
    ratios[nonzero] = d[nonzero] / dx[nonzero] ** report.tau
    worst = int(np.argmax(ratios))
    return BoundCheck(
        passed=bool(not bad.any()),
        pairs=int(xa.size),
        violations=int(bad.sum()),
        worst_ratio=float(ratios[worst]),
        worst_pair=(float(xa[worst]), float(xb[worst])),
        bound_coefficient=float(report.h_f),
        exponent=float(report.tau),
    )


@dataclass
class OscillationFit:
    step_sizes: np.ndarray
    oscillations: np.ndarray
    fitted_exponent: float
    fit_residual: float


def estimate_exponent(fif, num_scales=6, coarsest_power=3):
    """Log-log fit of the uniform oscillation against dyadic step sizes."""
    if num_scales < 4:
        raise SchemaViolation("need at least four step sizes for a meaningful fit")
    t = fif.sys.knots
    span = t[-1] - t[0]
    spacing = float(np.min(np.diff(fif.grid_x)))
    steps, oscs = [], []
    for j in range(coarsest_power, coarsest_power + num_scales + 1):
        h = span * 2.0 ** (-j)
        if h < spacing:
            raise InsufficientResolution(
                f"step {h:g} below the evaluation grid spacing {spacing:g}"
            )
        xs = fif.grid_x[fif.grid_x <= t[-1] - h + 1e-12 * span]
        lo_s, up_s = fif.values_at(xs + h)
        lo_0 = fif.lower[: xs.size]
        up_0 = fif.upper[: xs.size]
        osc = max(float(np.max(np.abs(lo_s - lo_0))), float(np.max(np.abs(up_s - up_0))))
        steps.append(h)
        oscs.append(osc)
    steps = np.array(steps)
    oscs = np.array(oscs)
    if np.any(oscs <= 0):
        # constant function: oscillation vanishes at every scale
        return OscillationFit(steps, oscs, float("inf"), 0.0)
    coeffs = np.polyfit(np.log(steps), np.log(oscs), 1)
    fitted = np.polyval(coeffs, np.log(steps))
    resid = float(np.sqrt(np.mean((fitted - np.log(oscs)) ** 2)))
    return OscillationFit(steps, oscs, float(coeffs[0]), resid)


# ---------------------------------------------------------------------------
# level-decomposition equivalence
# ---------------------------------------------------------------------------

def level_slices(sys, lam):
    """Scalar data and offset functions at one membership level."""
    k, w = sys.grid.interp_weights(lam)

    def slice_cols(arr2d):
        return (1 - w) * arr2d[:, k] + w * arr2d[:, k + 1]

    y_lo = np.array([(1 - w) * v.lower[k] + w * v.lower[k + 1] for v in sys.data.values])
    y_up = np.array([(1 - w) * v.upper[k] + w * v.upper[k + 1] for v in sys.data.values])

    def q_lo(i, xs):
        lo, _ = sys.q_values(i, xs)
        return slice_cols(lo)

    def q_up(i, xs):
        _, up = sys.q_values(i, xs)
        return slice_cols(up)

    return y_lo, y_up, q_lo, q_up


@dataclass
class LevelGapEntry:
    level: float
    gap_lower: float
    gap_upper: float

    @property
    def gap(self):
        return max(self.gap_lower, self.gap_upper)


@dataclass
class EquivalenceReport:
    entries: list
    combined_tol: float
    scalar_tol: float

    @property
    def max_gap(self):
        return max(e.gap for e in self.entries)

    @property
    def passed(self):
        return self.max_gap <= self.combined_tol


def level_equivalence(fif, levels, scalar_tol=None, matching_tol=1e-7, slack=1e-12):
    """Compare each level slice of the fuzzy fixed point against classical
    real fixed points built independently over the sliced knot data.

    Uniqueness of fixed points makes the two coincide; the measured gap is
    bounded by the two engines' certified iteration errors.
    """
    sys = fif.sys
    if scalar_tol is None:
        scalar_tol = fif.tol
    entries = []
    for lam in levels:
        y_lo, y_up, q_lo, q_up = level_slices(sys, lam)
        f_lo = solve_scalar_fif(
            sys.knots, y_lo, sys.scales, q_lo, n_points=fif.n_points,
            tol=scalar_tol, matching_tol=matching_tol,
        )
        f_up = solve_scalar_fif(
            sys.knots, y_up, sys.scales, q_up, n_points=fif.n_points,
            tol=scalar_tol, matching_tol=matching_tol,
        )
        curves = extract_level(fif, lam)
        if f_lo.grid_x.size != curves.x.size:
            raise SchemaViolation("engines disagree on the evaluation grid")
        entries.append(
            LevelGapEntry(
                level=float(lam),
                gap_lower=float(np.max(np.abs(curves.lower - f_lo.values))),
                gap_upper=float(np.max(np.abs(curves.upper - f_up.values))),
            )
        )
    combined = fif.tol + scalar_tol + slack
    return EquivalenceReport(entries=entries, combined_tol=combined, scalar_tol=scalar_tol)


def address_oracle_gap(fif, lam, depth=6, matching_tol=1e-7):
    """Gap between the sampled level slice and the exact address-point oracle.

    The oracle walks the level's functional equation forward from the knot
    values, so the gap isolates the sweep engine's total error (iteration
    plus grid interpolation) at off-grid points.
    """
    sys = fif.sys
    y_lo, y_up, q_lo, q_up = level_slices(sys, lam)
    curves = extract_level(fif, lam)
    worst = 0.0
    for y, q, curve in ((y_lo, q_lo, curves.lower), (y_up, q_up, curves.upper)):
        pts, vals = address_values(
            sys.knots, y, sys.scales, q, depth=depth, matching_tol=matching_tol
        )
        approx = np.interp(pts, curves.x, curve)
        worst = max(worst, float(np.max(np.abs(approx - vals))))
    return worst
