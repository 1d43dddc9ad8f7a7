"""Classical real-valued fractal interpolation, kept free of fuzzy arithmetic.

This is a deliberately separate code path from the fuzzy engine (its own
sweep loop, numpy's interp for the closure) so the two can serve as
independent oracles for each other through the level decomposition.
"""

from dataclasses import dataclass

import numpy as np

from .errors import MatchingNotVerified, NoConvergence, SchemaViolation
from .ifs import build_maps, interval_of
from .engine import make_eval_grid


def affine_q(knots, y, scales):
    """Classical offset family: the affine functions forced by the endpoint
    conditions q_i(t_i) = y_i - s_i*y_0, q_i(t_{i+1}) = y_{i+1} - s_i*y_n."""
    t = np.asarray(knots, dtype=float)
    y = np.asarray(y, dtype=float)
    s = np.asarray(scales, dtype=float)
    lefts = y[:-1] - s * y[0]
    rights = y[1:] - s * y[-1]

    def q(i, xs):
        w = (np.asarray(xs, dtype=float) - t[i]) / (t[i + 1] - t[i])
        return (1 - w) * lefts[i] + w * rights[i]

    return q


def matching_residual(knots, y, scales, q):
    """Worst violation of the scalar endpoint conditions."""
    t = np.asarray(knots, dtype=float)
    y = np.asarray(y, dtype=float)
    worst = 0.0
    for i in range(t.size - 1):
        left = q(i, np.array([t[i]]))[0] - (y[i] - scales[i] * y[0])
        right = q(i, np.array([t[i + 1]]))[0] - (y[i + 1] - scales[i] * y[-1])
        worst = max(worst, abs(float(left)), abs(float(right)))
    return worst


@dataclass
class ScalarFif:
    knots: np.ndarray
    y: np.ndarray
    scales: np.ndarray
    grid_x: np.ndarray
    values: np.ndarray
    depth: int
    residual: float

    @property
    def certified_error(self):
        s = float(np.max(np.abs(self.scales)))
        return self.residual * s / (1 - s) if s > 0 else 0.0

    def at(self, xs):
        return np.interp(np.asarray(xs, dtype=float), self.grid_x, self.values)


def solve_scalar_fif(knots, y, scales, q, n_points=1024, tol=1e-9, max_depth=2000,
                     matching_tol=1e-7, enforce_matching=True):
    """Fixed point of the real interpolation operator for one offset family.

    ``q(i, xs)`` returns the offset values on knot interval i.  Scales may be
    negative; the contraction factor is max |s_i|.
    """
    t = np.asarray(knots, dtype=float)
    y = np.asarray(y, dtype=float)
    s = np.asarray(scales, dtype=float)
    if np.any(np.abs(s) >= 1):
        raise SchemaViolation("scalar scales must satisfy |s| < 1")
    res = matching_residual(t, y, s, q)
    if enforce_matching and res > matching_tol:
        raise MatchingNotVerified(
            f"scalar endpoint residual {res:.3e} exceeds {matching_tol:g}"
        )
    maps = build_maps(t)
    grid_x = make_eval_grid(t, n_points)
    idx = interval_of(t, grid_x)
    a_arr = np.array([m.a for m in maps])
    b_arr = np.array([m.b for m in maps])
    xi = np.clip((grid_x - b_arr[idx]) / a_arr[idx], t[0], t[-1])
    s_pt = s[idx]
    qv = np.empty_like(grid_x)
    for i in range(t.size - 1):
        sel = idx == i
        qv[sel] = q(i, grid_x[sel])

    vals = np.interp(grid_x, t, y)
    smax = float(np.max(np.abs(s)))
    threshold = tol * (1 - smax) / smax if smax > 0 else 0.0
    depth = 0
    last = np.inf
    for depth in range(1, max_depth + 1):
        new = s_pt * np.interp(xi, grid_x, vals) + qv
        last = float(np.max(np.abs(new - vals)))
        vals = new
        if last <= threshold:
            break
    else:
        raise NoConvergence(
            f"scalar sweep did not meet the stopping rule in {max_depth} steps; "
            "increase max_depth"
        )
    return ScalarFif(
        knots=t, y=y, scales=s, grid_x=grid_x, values=vals, depth=depth, residual=last
    )


def address_values(knots, y, scales, q, depth=6, matching_tol=1e-9):
    """Exact fixed-point values on the iterated map images of the knots.

    Walks the functional equation forward from the knot values, so there is
    no iteration or interpolation error at all; serves as the sharpest
    available oracle.  Requires the endpoint conditions to hold, otherwise
    the knot seed values are not fixed-point values.
    """
    t = np.asarray(knots, dtype=float)
    y = np.asarray(y, dtype=float)
    s = np.asarray(scales, dtype=float)
    res = matching_residual(t, y, s, q)
    if res > matching_tol:
        raise MatchingNotVerified(
            f"scalar endpoint residual {res:.3e}: address recursion seed invalid"
        )
    maps = build_maps(t)
    pts_all = [t.copy()]
    val_all = [y.copy()]
    frontier = [(t.copy(), y.copy())]
    for _ in range(depth):
        nxt = []
        for pts, vals in frontier:
            for i, mp in enumerate(maps):
                npts = mp(pts)
                nvals = s[i] * vals + q(i, npts)
                nxt.append((npts, nvals))
                pts_all.append(npts)
                val_all.append(nvals)
        frontier = nxt
    pts = np.concatenate(pts_all)
    vals = np.concatenate(val_all)
    order = np.argsort(pts, kind="stable")
    pts, vals = pts[order], vals[order]
    keep = np.concatenate([[True], np.diff(pts) > 1e-13 * (t[-1] - t[0])])
    # duplicated points come from shared interval endpoints; their values
    # agree exactly when the endpoint conditions hold
    return pts[keep], vals[keep]
