import math

import numpy as np
import pytest

from fuzzyfif import (
    Crisp,
    LevelGrid,
    LevelTable,
    Membership,
    NonConvexLevels,
    NonNormal,
    QuadraticCap,
    QuadraticFlank,
    SchemaViolation,
    Trapezoidal,
    Triangular,
    TruncatedGaussian,
    UnboundedSupport,
    from_membership,
    invert_membership,
)

BUILTIN_SPECS = [
    Triangular(0, 1, 2),
    Triangular(1.5, 2.5, 3.5),
    Trapezoidal(0, 1, 2, 4),
    TruncatedGaussian(3.0, 1.0, 0.0, 6.0),
    QuadraticFlank(1, 4, 7),
    QuadraticCap(1, 3, 5),
]


def test_triangular_levels_are_linear_flank_inversions(grid):
    u = from_membership(Triangular(0, 1, 2), grid)
    lev = grid.levels
    assert np.allclose(u.lower, lev, atol=1e-15)
    assert np.allclose(u.upper, 2 - lev, atol=1e-15)


def test_truncated_gaussian_half_level(grid):
    u = from_membership(TruncatedGaussian(3.0, 1.0, 0.0, 6.0), grid)
    lo, up = u.level(0.5)
    r = math.sqrt(math.log(2.0))
    assert lo == pytest.approx(3 - r, abs=1e-12)
    assert up == pytest.approx(3 + r, abs=1e-12)


def test_level_zero_is_support_closure(grid):
    u = from_membership(TruncatedGaussian(3.0, 1.0, 0.0, 6.0), grid)
    assert u.support == (0.0, 6.0)
    v = from_membership(QuadraticFlank(1, 4, 7), grid)
    assert v.support == (1.0, 7.0)


def test_quadratic_cap_levels(grid):
    u = from_membership(QuadraticCap(1, 3, 5), grid)
    lev = grid.levels
    assert np.allclose(u.lower, 3 - 2 * np.sqrt(1 - lev), atol=1e-15)
    assert np.allclose(u.upper, 3 + 2 * np.sqrt(1 - lev), atol=1e-15)


def test_quadratic_flank_levels(grid):
    u = from_membership(QuadraticFlank(1, 4, 7), grid)
    lev = grid.levels
    assert np.allclose(u.lower, 1 + 3 * np.sqrt(lev), atol=1e-15)
    assert np.allclose(u.upper, 7 - 3 * np.sqrt(lev), atol=1e-15)


@pytest.mark.parametrize("spec", BUILTIN_SPECS, ids=lambda s: type(s).__name__)
def test_analytic_levels_agree_with_bisection(spec, grid):
    analytic = from_membership(spec, grid)
    sup_lo, sup_hi = analytic.support
    lo, up = invert_membership(spec.mu, sup_lo, sup_hi, grid.levels)
    assert np.max(np.abs(lo - analytic.lower)[:-1]) < 1e-9
    assert np.max(np.abs(up - analytic.upper)[:-1]) < 1e-9
    # at the core the inverse is ill-conditioned for smooth peaks (the set
    # mu >= 1-eps has width ~sqrt(eps)), capping probe-based accuracy
    assert abs(lo[-1] - analytic.lower[-1]) < 5e-7
    assert abs(up[-1] - analytic.upper[-1]) < 5e-7


def test_level_table_identity(grid):
    lev = grid.levels
    table = LevelTable(tuple(lev), tuple(lev * 0.5), tuple(2 - lev))
    u = from_membership(table, grid)
    assert np.array_equal(u.lower, lev * 0.5)
    assert np.array_equal(u.upper, 2 - lev)


def test_level_table_resamples_onto_grid(grid):
    coarse = np.linspace(0, 1, 11)
    table = LevelTable(tuple(coarse), tuple(coarse), tuple(2 - coarse))
    u = from_membership(table, grid)
    assert np.allclose(u.lower, grid.levels, atol=1e-15)


def test_crisp_spec(grid):
    u = from_membership(Crisp(4.2), grid)
    assert u.is_crisp()
    assert u.core == (4.2, 4.2)


def test_membership_callable_matches_analytic(grid):
    spec = Membership(lambda y: np.clip(1 - 0.25 * (y - 3) ** 2, 0, 1), 1.0, 5.0)
    u = from_membership(spec, grid)
    ref = from_membership(QuadraticCap(1, 3, 5), grid)
    assert np.max(np.abs(u.lower - ref.lower)[:-1]) < 1e-9
    assert np.max(np.abs(u.upper - ref.upper)[:-1]) < 1e-9
    assert abs(u.lower[-1] - ref.lower[-1]) < 5e-7  # flat-peak conditioning
    assert abs(u.upper[-1] - ref.upper[-1]) < 5e-7


def test_non_normal_raises(grid):
    with pytest.raises(NonNormal):
        from_membership(Membership(lambda y: 0.8 * np.ones_like(y), 0.0, 1.0), grid)
    with pytest.raises(NonNormal):
        TruncatedGaussian(10.0, 1.0, 0.0, 6.0)


def test_non_convex_levels_raises(grid):
    def bimodal(y):
        return np.maximum(np.exp(-((y - 1) ** 2) / 0.01), np.exp(-((y - 3) ** 2) / 0.01))

    with pytest.raises(NonConvexLevels):
        from_membership(Membership(bimodal, 0.0, 4.0), grid)


def test_unbounded_support_raises(grid):
    with pytest.raises(UnboundedSupport):
        from_membership(Membership(lambda y: np.exp(-(y**2)), -np.inf, np.inf), grid)


def test_invalid_parameters_raise(grid):
    with pytest.raises(SchemaViolation):
        Triangular(2, 1, 0)
    with pytest.raises(SchemaViolation):
        Trapezoidal(0, 2, 1, 3)
    with pytest.raises(SchemaViolation):
        TruncatedGaussian(3.0, -1.0, 0.0, 6.0)
