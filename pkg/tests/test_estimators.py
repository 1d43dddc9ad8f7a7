import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from fuzzyfif import (
    FractalInterpolator,
    FuzzyFractalInterpolator,
    MatchingNotVerified,
    SchemaViolation,
    d_infty,
)


def showcase_spec_dicts(showcase_cfg):
    return [dict(d) for d in showcase_cfg.to_dict()["values"]]


def test_get_set_params_round_trip():
    est = FuzzyFractalInterpolator(scales=[0.3, 0.7], tol=1e-6)
    params = est.get_params()
    assert params["tol"] == 1e-6
    est2 = clone(est)
    assert est2.get_params() == params


def test_fit_predict_interpolates(showcase_cfg):
    knots = np.asarray(showcase_cfg.knots)
    est = FuzzyFractalInterpolator(
        scales=list(showcase_cfg.scales), level_count=100, grid_points=1024, tol=1e-8
    )
    est.fit(knots, showcase_spec_dicts(showcase_cfg))
    assert est.matching_.passed
    preds = est.predict(knots)
    for u, v in zip(preds, est.data_.values):
        assert d_infty(u, v) <= 1e-7


def test_transform_shape_and_levels(showcase_cfg):
    knots = np.asarray(showcase_cfg.knots)
    est = FuzzyFractalInterpolator(
        scales=list(showcase_cfg.scales), level_count=50, grid_points=256, tol=1e-8
    ).fit(knots, showcase_spec_dicts(showcase_cfg))
    xs = np.linspace(0, 1, 17)
    table = est.transform(xs)
    assert table.shape == (17, 2 * 51)
    pl = est.predict_level(xs, 0.5)
    assert pl.shape == (17, 2)
    assert np.all(pl[:, 0] <= pl[:, 1])
    curves = est.level_curves(1.0)
    assert np.max(np.abs(curves.upper - curves.lower)) <= 1e-7


def test_unfitted_raises():
    est = FuzzyFractalInterpolator()
    with pytest.raises(NotFittedError):
        est.predict([0.5])


def test_matching_gate_respected(printed_cfg):
    est = FuzzyFractalInterpolator(
        scales=list(printed_cfg.scales), level_count=100, grid_points=256
    )
    with pytest.raises(MatchingNotVerified):
        est.fit(np.asarray(printed_cfg.knots), [dict(d) for d in printed_cfg.to_dict()["values"]])


def test_scalar_broadcast_and_holder(showcase_cfg):
    knots = np.asarray(showcase_cfg.knots)
    est = FuzzyFractalInterpolator(scales=0.3, level_count=20, grid_points=128)
    est.fit(knots, showcase_spec_dicts(showcase_cfg))
    rep = est.holder_report()
    assert rep.case == "delta_gt_1"


def test_crisp_and_array_values():
    est = FuzzyFractalInterpolator(scales=0.2, level_count=10, grid_points=64, tol=1e-9)
    est.fit([0.0, 0.5, 1.0], [0.0, 1.0, 0.5])
    u = est.predict([0.5])[0]
    assert u.is_crisp(atol=1e-9)
    with pytest.raises(SchemaViolation):
        est.fit([0.0, 0.5, 1.0], [0.0, "what", 0.5])


def test_scalar_estimator_interpolates():
    X = np.array([0.0, 0.5, 1.0])
    y = np.array([0.0, 1.0, 0.0])
    est = FractalInterpolator(scales=0.5, grid_points=512, tol=1e-12).fit(X, y)
    assert np.max(np.abs(est.predict(X) - y)) < 1e-10
    est2 = clone(est)
    assert est2.get_params()["scales"] == 0.5
    with pytest.raises(NotFittedError):
        FractalInterpolator().predict(X)
