import pathlib

import numpy as np
import pytest

from fuzzyfif import (
    FuzzyDataSet,
    IfsSystem,
    LevelGrid,
    RunConfig,
    solve_fif,
)

REPO = pathlib.Path(__file__).resolve().parent.parent
CONFIGS = REPO / "configs"


@pytest.fixture(scope="session")
def grid():
    return LevelGrid.uniform(100)


@pytest.fixture(scope="session")
def showcase_cfg():
    return RunConfig.from_file(CONFIGS / "showcase.json")


@pytest.fixture(scope="session")
def printed_cfg():
    return RunConfig.from_file(CONFIGS / "incompatible_widths.json")


@pytest.fixture(scope="session")
def showcase_system(showcase_cfg):
    return showcase_cfg.build_system()


@pytest.fixture(scope="session")
def printed_system(printed_cfg):
    return printed_cfg.build_system()


@pytest.fixture(scope="session")
def showcase_fif(showcase_system, showcase_cfg):
    fif, disps = solve_fif(
        showcase_system,
        n_points=showcase_cfg.grid_points,
        tol=showcase_cfg.tol,
        max_depth=showcase_cfg.max_depth,
        track_displacements=True,
    )
    return fif, disps


@pytest.fixture(scope="session")
def showcase_fif_4096(showcase_system):
    return solve_fif(showcase_system, n_points=4096, tol=1e-8, max_depth=256)


def crisp_dataset(knots, ys, level_count=4):
    g = LevelGrid.uniform(level_count)
    from fuzzyfif import FuzzyNumber

    values = [FuzzyNumber.crisp(y, g) for y in ys]
    return FuzzyDataSet(np.asarray(knots, float), values)


@pytest.fixture(scope="session")
def crisp_uneven_system():
    """Uneven knots, gentle scales: off-grid preimages make grid-interpolation
    error visible, and the local regularity is high enough to resolve rates."""
    data = crisp_dataset([0.0, 0.3, 0.55, 0.8, 1.0], [0.0, 0.8, 0.2, 0.9, 0.4])
    return IfsSystem(data, [0.25, 0.25, 0.25, 0.25])
