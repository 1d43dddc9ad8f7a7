"""Command-line interface.

Verbs: validate, build, levels, holder, export.  Exit codes: 0 success,
2 validation failure, 3 convergence failure, 4 I/O failure.
"""

import argparse
import json
import os
import sys as _sys

import numpy as np

from . import __version__
from .analysis import (
    data_bound,
    estimate_exponent,
    holder_constants,
    level_equivalence,
    level_slices,
    verify_holder_bound,
)
from .config import RunConfig
from .engine import extract_level, solve_fif
from .errors import (
    ConfigParse,
    FuzzyFifError,
    MatchingNotVerified,
    NoConvergence,
    SchemaViolation,
)
from .export import ExportBundle, level_curves_table, samples_table
from .ifs import theta_metric, verify_theta_contraction
from .scalar import solve_scalar_fif

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CONVERGENCE = 3
EXIT_IO = 4


def _load_config(args):
    cfg = RunConfig.from_file(args.config)
    overrides = {}
    if getattr(args, "tol", None) is not None:
        overrides["tol"] = args.tol
    if getattr(args, "grid", None) is not None:
        overrides["grid_points"] = args.grid
    if getattr(args, "levels", None) is not None:
        overrides["level_count"] = args.levels
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "max_depth", None) is not None:
        overrides["max_depth"] = args.max_depth
    if overrides:
        d = cfg.to_dict()
        d.update(overrides)
        cfg = RunConfig.from_dict(d)
    return cfg


def _build_fif(cfg):
    sys_ = cfg.build_system()
    fif = solve_fif(
        sys_,
        n_points=cfg.grid_points,
        tol=cfg.tol,
        max_depth=cfg.max_depth,
        allow_mismatch=cfg.allow_mismatch,
    )
    return sys_, fif


def cmd_validate(args):
    cfg = _load_config(args)
    checks = []
    sys_ = cfg.build_system()  # membership + dataset + maps validated here
    checks.append(("config-schema", True, "parsed and validated"))
    checks.append(("membership", True, f"{len(cfg.values)} values converted"))
    endpoints_ok = all(
        abs(sys_.maps[i](sys_.knots[0]) - sys_.knots[i]) < 1e-12
        and abs(sys_.maps[i](sys_.knots[-1]) - sys_.knots[i + 1]) < 1e-12
        for i in range(sys_.n_maps)
    )
    checks.append(("affine-maps", endpoints_ok, f"{sys_.n_maps} contractions"))
    m = sys_.matching
    checks.append(
        ("matching", m.passed, f"max residual {m.max_residual:.3e} (tol {m.tol:g})")
    )
    metric = theta_metric(sys_)
    rep = verify_theta_contraction(sys_, metric, trials=200, seed=cfg.seed)
    checks.append(
        (
            "contraction",
            rep.passed,
            f"theta {metric.theta:.4g}, {rep.violations} violations in {rep.trials} trials",
        )
    )
    ok = all(c[1] for c in checks)
    for name, passed, detail in checks:
        print(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
    print(f"validation {'PASS' if ok else 'FAIL'}")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, "validation_report.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(
                {
                    "passed": ok,
                    "checks": [
                        {"name": n, "passed": p, "detail": d} for n, p, d in checks
                    ],
                    "matching_residuals": m.residuals,
                },
                fh,
                indent=2,
            )
            fh.write("\n")
    return EXIT_OK if ok else EXIT_VALIDATION


def cmd_build(args):
    cfg = _load_config(args)
    sys_, fif = _build_fif(cfg)
    bundle = ExportBundle(args.out)
    bundle.meta = {
        "command": "build",
        "config": cfg.to_dict(),
        "version": __version__,
        "depth": fif.depth,
        "residual": fif.residual,
        "matching_max_residual": sys_.matching.max_residual,
    }
    samples_table(bundle, fif, cfg.export_levels)
    manifest = bundle.write_manifest()
    print(f"built fixed point: depth {fif.depth}, residual {fif.residual:.3e}")
    print(f"wrote {manifest}")
    return EXIT_OK


def cmd_levels(args):
    cfg = _load_config(args)
    lambdas = cfg.export_levels if args.lambdas is None else _parse_lambdas(args.lambdas)
    sys_, fif = _build_fif(cfg)
    bundle = ExportBundle(args.out)
    entries = []
    gaps = {}
    for lam in sorted(set(float(x) for x in lambdas)):
        curves = extract_level(fif, lam)

        y_lo, y_up, q_lo, q_up = level_slices(sys_, lam)
        f_lo = solve_scalar_fif(
            sys_.knots, y_lo, sys_.scales, q_lo, n_points=fif.n_points, tol=cfg.tol
        )
        f_up = solve_scalar_fif(
            sys_.knots, y_up, sys_.scales, q_up, n_points=fif.n_points, tol=cfg.tol
        )
        entries.append((lam, curves.x, curves.lower, curves.upper, f_lo.values, f_up.values))
        gaps[str(lam)] = float(
            max(
                np.max(np.abs(curves.lower - f_lo.values)),
                np.max(np.abs(curves.upper - f_up.values)),
            )
        )
    bundle.meta = {
        "command": "levels",
        "config": cfg.to_dict(),
        "version": __version__,
        "depth": fif.depth,
        "residual": fif.residual,
        "level_gaps": gaps,
    }
    if entries:
        level_curves_table(bundle, entries)
    manifest = bundle.write_manifest()
    for lam, gap in gaps.items():
        print(f"level {lam}: scalar-engine gap {gap:.3e}")
    print(f"wrote {manifest}")
    return EXIT_OK


def cmd_holder(args):
    cfg = _load_config(args)
    sys_, fif = _build_fif(cfg)
    report = holder_constants(sys_)
    check = verify_holder_bound(fif, report, pairs=10000, seed=cfg.seed)
    fit = estimate_exponent(fif)
    doc = {
        "constants": report.to_dict(),
        "data_bound": data_bound(sys_.data),
        "bound_check": {
            "passed": check.passed,
            "pairs": check.pairs,
            "violations": check.violations,
            "worst_ratio": check.worst_ratio,
            "worst_pair": list(check.worst_pair),
        },
        "empirical": {
            "step_sizes": list(map(float, fit.step_sizes)),
            "oscillations": list(map(float, fit.oscillations)),
            "fitted_exponent": fit.fitted_exponent,
            "fit_residual": fit.fit_residual,
        },
    }
    print(
        f"case {report.case}: tau {report.tau:.6f}, coefficient {report.h_f:.6g} "
        f"(alpha {report.alpha:.6g}, delta {report.delta:.6g})"
    )
    print(
        f"bound check {'PASS' if check.passed else 'FAIL'}: "
        f"{check.violations} violations over {check.pairs} pairs, "
        f"worst ratio {check.worst_ratio:.6g} at {check.worst_pair}"
    )
    print(f"empirical exponent {fit.fitted_exponent:.4f} (fit residual {fit.fit_residual:.3g})")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, "holder_report.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        print(f"wrote {path}")
    return EXIT_OK if check.passed else EXIT_VALIDATION


def cmd_export(args):
    cfg = _load_config(args)
    sys_, fif = _build_fif(cfg)
    bundle = ExportBundle(args.out)
    samples_table(bundle, fif, cfg.export_levels)
    eq = level_equivalence(fif, cfg.export_levels)
    entries = []
    for lam in sorted(set(float(x) for x in cfg.export_levels)):
        curves = extract_level(fif, lam)

        y_lo, y_up, q_lo, q_up = level_slices(sys_, lam)
        f_lo = solve_scalar_fif(
            sys_.knots, y_lo, sys_.scales, q_lo, n_points=fif.n_points, tol=cfg.tol
        )
        f_up = solve_scalar_fif(
            sys_.knots, y_up, sys_.scales, q_up, n_points=fif.n_points, tol=cfg.tol
        )
        entries.append((lam, curves.x, curves.lower, curves.upper, f_lo.values, f_up.values))
    level_curves_table(bundle, entries)
    report = holder_constants(sys_)
    bundle.meta = {
        "command": "export",
        "config": cfg.to_dict(),
        "version": __version__,
        "depth": fif.depth,
        "residual": fif.residual,
        "holder": report.to_dict(),
        "equivalence_max_gap": eq.max_gap,
    }
    manifest = bundle.write_manifest()
    print(f"exported bundle to {args.out} (equivalence gap {eq.max_gap:.3e})")
    print(f"wrote {manifest}")
    return EXIT_OK


def _parse_lambdas(text):
    if text.strip() == "":
        return []
    try:
        return [float(x) for x in text.split(",")]
    except ValueError as e:
        raise SchemaViolation(f"bad --lambdas list: {e}") from None


def _add_common(p, out_required):
    p.add_argument("--config", required=True, help="path to a run config JSON")
    p.add_argument("--out", required=out_required, default=None, help="output directory")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--grid", type=int, default=None, help="evaluation grid points")
    p.add_argument("--levels", type=int, default=None, help="membership level count")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-depth", type=int, default=None, dest="max_depth")


def make_parser():
    parser = argparse.ArgumentParser(
        prog="fuzzyfif",
        description="fuzzy-valued fractal interpolation: validate, solve, slice, analyze",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="run the validation pipeline")
    _add_common(p, out_required=False)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("build", help="solve the fixed point and export samples")
    _add_common(p, out_required=True)
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("levels", help="export level slices with the scalar-engine cross-check")
    _add_common(p, out_required=True)
    p.add_argument("--lambdas", default=None, help="comma-separated levels")
    p.set_defaults(fn=cmd_levels)

    p = sub.add_parser("holder", help="regularity constants, bound check, empirical exponent")
    _add_common(p, out_required=False)
    p.set_defaults(fn=cmd_holder)

    p = sub.add_parser("export", help="full bundle: samples, level curves, holder report")
    _add_common(p, out_required=True)
    p.set_defaults(fn=cmd_export)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigParse, SchemaViolation, MatchingNotVerified) as e:
        print(f"FAIL [{e.code}] {e}", file=_sys.stderr)
        return EXIT_VALIDATION
    except NoConvergence as e:
        print(f"FAIL [{e.code}] {e}", file=_sys.stderr)
        return EXIT_CONVERGENCE
    except OSError as e:
        print(f"FAIL [io-error] {e}", file=_sys.stderr)
        return EXIT_IO
    except FuzzyFifError as e:
        print(f"FAIL [{e.code}] {e}", file=_sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    raise SystemExit(main())
