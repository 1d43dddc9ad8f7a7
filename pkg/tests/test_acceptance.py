"""Acceptance suite.

One test per numbered criterion; each prints a PASS/FAIL line with the
measured quantity next to its required tolerance (run pytest with -s to see
every line).
"""

import json
import time

import numpy as np
import pytest

from fuzzyfif import (
    FuzzyNumber,
    IfsSystem,
    add,
    address_oracle_gap,
    d_infty,
    estimate_exponent,
    evaluate,
    g_difference,
    holder_constants,
    level_equivalence,
    random_fuzzy,
    scale,
    solve_fif,
    solve_scalar_fif,
    verify_holder_bound,
    verify_theta_contraction,
)
from fuzzyfif.analysis import CASE_SUPER, level_slices
from fuzzyfif.cli import main as cli_main
from fuzzyfif.grids import LevelGrid
from fuzzyfif.ifs import interval_of
from conftest import CONFIGS, crisp_dataset


def _report(num, name, ok, detail):
    print(f"ACCEPTANCE {num} [{name}]: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {num} ({name}): {detail}"


# ---------------------------------------------------------------------------
# 1. interpolation property
# ---------------------------------------------------------------------------

def test_criterion_1_interpolation(showcase_system):
    t0 = time.perf_counter()
    fif = solve_fif(showcase_system, n_points=1024, tol=1e-8, max_depth=256)
    worst = max(
        d_infty(evaluate(fif, x), u)
        for x, u in zip(showcase_system.knots, showcase_system.data.values)
    )
    elapsed = time.perf_counter() - t0
    _report(
        1, "interpolation", worst <= 1e-7 and elapsed <= 30.0,
        f"max knot error {worst:.3e} <= 1e-7, runtime {elapsed:.2f}s <= 30s",
    )


# ---------------------------------------------------------------------------
# 2. contraction rate
# ---------------------------------------------------------------------------

def test_criterion_2_contraction_rate(showcase_fif):
    _, disps = showcase_fif
    s = 0.8
    ratios = [disps[k + 1] / disps[k] for k in range(len(disps) - 1)]
    worst = max(ratios) if ratios else 0.0
    _report(
        2, "contraction-rate", worst <= s + 1e-6,
        f"worst displacement ratio {worst:.9f} <= {s + 1e-6}",
    )


# ---------------------------------------------------------------------------
# 3. level-decomposition oracle equivalence + refinement behaviour
# ---------------------------------------------------------------------------

def test_criterion_3_level_equivalence(showcase_fif_4096, crisp_uneven_system):
    levels = [0.0, 0.25, 0.5, 0.75, 1.0]
    report = level_equivalence(showcase_fif_4096, levels)
    ok_gap = report.max_gap <= 1e-6

    # refinement study against the exact address oracle: uneven knots keep
    # the map preimages off the grid so interpolation error is visible, and
    # the gentle scales give a resolvable decay rate
    gaps = []
    for n in (1024, 2048, 4096, 8192):
        fif_n = solve_fif(crisp_uneven_system, n_points=n, tol=1e-12, max_depth=4000)
        gaps.append(address_oracle_gap(fif_n, 0.0, depth=6))
    ratios = [gaps[k] / gaps[k + 1] for k in range(len(gaps) - 1)]
    ok_shrink = all(r >= 1.5 for r in ratios)
    _report(
        3, "level-equivalence", ok_gap and ok_shrink,
        f"max gap {report.max_gap:.3e} <= 1e-6 at N=4096; "
        f"refinement ratios {[f'{r:.2f}' for r in ratios]} all >= 1.5",
    )


# ---------------------------------------------------------------------------
# 4. self-affinity of the sampled graph
# ---------------------------------------------------------------------------

def test_criterion_4_self_affinity(showcase_system):
    fif = solve_fif(showcase_system, n_points=2048, tol=1e-8, max_depth=256)
    grid_x = fif.grid_x
    xs_idx = np.arange(0, grid_x.size, 4)  # 513 sample points per map
    xs = grid_x[xs_idx]
    worst = 0.0
    for i in range(showcase_system.n_maps):
        m = showcase_system.maps[i]
        ys = m(xs)
        ys_idx = np.searchsorted(grid_x, ys)
        assert np.array_equal(grid_x[ys_idx], ys)  # images are exact grid nodes
        q_lo, q_up = showcase_system.q_values(i, ys)
        s = showcase_system.scales[i]
        res_lo = np.abs(fif.lower[ys_idx] - (s * fif.lower[xs_idx] + q_lo))
        res_up = np.abs(fif.upper[ys_idx] - (s * fif.upper[xs_idx] + q_up))
        worst = max(worst, float(res_lo.max()), float(res_up.max()))
    _report(
        4, "self-affinity", worst <= 1e-6,
        f"graph residual {worst:.3e} <= 1e-6 over {xs.size} points per map",
    )


# ---------------------------------------------------------------------------
# 5. certified regularity constants
# ---------------------------------------------------------------------------

def test_criterion_5_holder(showcase_fif, showcase_system):
    mp = pytest.importorskip("mpmath")
    fif, _ = showcase_fif
    report = holder_constants(showcase_system)
    mp.mp.dps = 50
    tau_ref = float(1 + mp.log(mp.mpf("0.8") / mp.mpf("0.25")) / mp.log(mp.mpf("0.25")))
    ok_case = report.case == CASE_SUPER and abs(report.tau - tau_ref) <= 1e-12
    check = verify_holder_bound(fif, report, pairs=10000, seed=20240801)
    fit = estimate_exponent(fif)
    ok_fit = fit.fitted_exponent >= report.tau - 0.05
    _report(
        5, "holder-constants", ok_case and check.passed and ok_fit,
        f"case {report.case}, tau {report.tau:.6f} (ref {tau_ref:.6f}), "
        f"{check.violations} bound violations over {check.pairs} pairs, "
        f"fitted exponent {fit.fitted_exponent:.4f} >= {report.tau - 0.05:.4f}",
    )


# ---------------------------------------------------------------------------
# 6. contraction of the system maps under the blended metric
# ---------------------------------------------------------------------------

def test_criterion_6_theta_contraction(showcase_system):
    rep = verify_theta_contraction(showcase_system, trials=1000, seed=20240801)
    _report(
        6, "theta-contraction", rep.violations == 0 and rep.sandwich_ok,
        f"{rep.violations} violations over {rep.trials} trials per map at "
        f"theta {rep.theta:.4g} (metric sandwich ok: {rep.sandwich_ok})",
    )


# ---------------------------------------------------------------------------
# 7. crisp degeneration: cross-engine oracle
# ---------------------------------------------------------------------------

def test_criterion_7_crisp_degeneration():
    data = crisp_dataset([0.0, 0.3, 0.55, 0.8, 1.0], [0.0, 0.8, 0.2, 0.9, 0.4],
                         level_count=8)
    sys_ = IfsSystem(data, [0.3, 0.7, 0.4, 0.8])
    fif = solve_fif(sys_, n_points=1024, tol=1e-9, max_depth=4000)
    y_lo, _, q_lo, _ = level_slices(sys_, 0.0)
    ref = solve_scalar_fif(sys_.knots, y_lo, sys_.scales, q_lo,
                           n_points=1024, tol=1e-9, max_depth=4000)
    worst = 0.0
    for k in range(len(sys_.grid)):
        worst = max(
            worst,
            float(np.max(np.abs(fif.lower[:, k] - ref.values))),
            float(np.max(np.abs(fif.upper[:, k] - ref.values))),
        )
    _report(
        7, "crisp-degeneration", worst <= 1e-8,
        f"max cross-engine deviation {worst:.3e} <= 1e-8 over all level columns",
    )


# ---------------------------------------------------------------------------
# 8. fuzzy-core invariant suite
# ---------------------------------------------------------------------------

def test_criterion_8_invariants():
    grid = LevelGrid.uniform(32)
    rng = np.random.default_rng(20240801)
    n_ops = 100_000
    ok_nesting = True
    for k in range(n_ops):
        u = random_fuzzy(grid, rng, -5, 5, 4.0)
        v = random_fuzzy(grid, rng, -5, 5, 4.0)
        op = k % 3
        if op == 0:
            w = add(u, v)
        elif op == 1:
            w = scale(rng.uniform(-3, 3), u)
        else:
            w = g_difference(u, v)
        if not (
            np.all(w.upper >= w.lower)
            and np.all(np.diff(w.lower) >= 0)
            and np.all(np.diff(w.upper) <= 0)
        ):
            ok_nesting = False
            break

    n_triples = 10_000
    worst_tri = 0.0
    sym_exact = True
    for _ in range(n_triples):
        u = random_fuzzy(grid, rng, -5, 5, 4.0)
        v = random_fuzzy(grid, rng, -5, 5, 4.0)
        w = random_fuzzy(grid, rng, -5, 5, 4.0)
        duv, dvu = d_infty(u, v), d_infty(v, u)
        sym_exact &= duv == dvu
        worst_tri = max(worst_tri, d_infty(u, w) - (duv + d_infty(v, w)))

    u = random_fuzzy(grid, rng, -5, 5, 4.0)
    self_diff = g_difference(u, u)
    ok_zero = bool(np.all(self_diff.lower == 0.0) and np.all(self_diff.upper == 0.0))

    _report(
        8, "invariants",
        ok_nesting and sym_exact and worst_tri <= 1e-12 and ok_zero,
        f"nesting held over {n_ops} ops, symmetry exact and triangle slack "
        f"{worst_tri:.2e} <= 1e-12 over {n_triples} triples, self difference "
        f"is exactly crisp zero",
    )


# ---------------------------------------------------------------------------
# 9. determinism of exported tables
# ---------------------------------------------------------------------------

def test_criterion_9_determinism(tmp_path):
    cfg = str(CONFIGS / "showcase.json")
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli_main(["build", "--config", cfg, "--out", str(a)]) == 0
    assert cli_main(["build", "--config", cfg, "--out", str(b)]) == 0
    same_csv = (a / "fif_samples.csv").read_bytes() == (b / "fif_samples.csv").read_bytes()
    ma = json.loads((a / "manifest.json").read_text())
    mb = json.loads((b / "manifest.json").read_text())
    same_sum = ma["bundle_checksum"] == mb["bundle_checksum"]
    _report(
        9, "determinism", same_csv and same_sum,
        f"byte-identical tables: {same_csv}, equal bundle checksums: {same_sum}",
    )
