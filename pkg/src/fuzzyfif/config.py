"""Run configuration: a single JSON document that pins every input of a run.

Schema (all floats unless noted):

    {
      "knots":  [x0, x1, ...],              # strictly increasing, >= 3 entries
      "values": [ {membership spec}, ... ], # one per knot, tagged by "kind"
      "scales": [s1, ...],                  # one per interval, 0 <= s < 1
      "level_count": 100,                   # int, membership grid resolution
      "grid_points": 1024,                  # int, evaluation grid resolution
      "tol": 1e-8,
      "max_depth": 256,                     # int
      "seed": 0,                            # int, randomized diagnostics
      "q_recipe": "linear-gdiff",
      "export_levels": [0, 0.25, 0.5, 0.75, 1.0],
      "matching_tol": 1e-9,
      "allow_mismatch": false               # bool
    }

Membership spec kinds: triangular(a,b,c), trapezoidal(a,b,c,d),
truncated_gaussian(center,width,support_lo,support_hi),
quadratic_flank(a,peak,b), quadratic_cap(a,peak,b), crisp(value),
level_table(levels,lower,upper).
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import ConfigParse, SchemaViolation
from .grids import LevelGrid
from .ifs import FuzzyDataSet, IfsSystem, LinearGDiffRecipe
from .membership import from_membership, spec_from_dict, spec_to_dict

DEFAULT_EXPORT_LEVELS = (0.0, 0.25, 0.5, 0.75, 1.0)


@dataclass
class RunConfig:
    knots: tuple
    values: tuple  # membership specs
    scales: tuple
    level_count: int = 100
    grid_points: int = 1024
    tol: float = 1e-8
    max_depth: int = 256
    seed: int = 0
    q_recipe: str = "linear-gdiff"
    export_levels: tuple = DEFAULT_EXPORT_LEVELS
    matching_tol: float = 1e-9
    allow_mismatch: bool = False

    def __post_init__(self):
        self.validate()

    def validate(self):
        knots = np.asarray(self.knots, dtype=float)
        if knots.ndim != 1 or knots.size < 3:
            raise SchemaViolation("knots: need at least three strictly increasing reals")
        if not np.all(np.diff(knots) > 0):
            raise SchemaViolation("knots must be strictly increasing")
        n = knots.size - 1
        if len(self.values) != knots.size:
            raise SchemaViolation(
                f"values: expected {knots.size} membership specs, got {len(self.values)}"
            )
        if len(self.scales) != n:
            raise SchemaViolation(f"scales: expected {n} entries, got {len(self.scales)}")
        if not isinstance(self.level_count, int) or self.level_count < 2:
            raise SchemaViolation("level_count must be an integer >= 2")
        if not isinstance(self.grid_points, int) or self.grid_points < 2 * n:
            raise SchemaViolation("grid_points must be an integer >= twice the interval count")
        if not self.tol > 0:
            raise SchemaViolation("tol must be positive")
        if not isinstance(self.max_depth, int) or self.max_depth < 1:
            raise SchemaViolation("max_depth must be a positive integer")
        if self.q_recipe != "linear-gdiff":
            raise SchemaViolation(f"unknown q_recipe {self.q_recipe!r}")
        for lam in self.export_levels:
            if not 0.0 <= float(lam) <= 1.0:
                raise SchemaViolation("export levels must lie in [0, 1]")

    # -- serialization -------------------------------------------------------
    @classmethod
    def from_dict(cls, d):
        if not isinstance(d, dict):
            raise SchemaViolation("config root must be an object")
        known = {
            "knots", "values", "scales", "level_count", "grid_points", "tol",
            "max_depth", "seed", "q_recipe", "export_levels", "matching_tol",
            "allow_mismatch",
        }
        unknown = set(d) - known
        if unknown:
            raise SchemaViolation(f"unknown config keys: {sorted(unknown)}")
        for req in ("knots", "values", "scales"):
            if req not in d:
                raise SchemaViolation(f"config missing required key {req!r}")
        kwargs = dict(d)
        kwargs["knots"] = tuple(float(x) for x in d["knots"])
        kwargs["values"] = tuple(spec_from_dict(v) for v in d["values"])
        kwargs["scales"] = tuple(float(s) for s in d["scales"])
        if "export_levels" in d:
            kwargs["export_levels"] = tuple(float(x) for x in d["export_levels"])
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path):
        try:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as e:
            raise ConfigParse(f"cannot read config {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise ConfigParse(f"config {path} is not valid JSON: {e}") from e
        return cls.from_dict(doc)

    def to_dict(self):
        return {
            "knots": list(self.knots),
            "values": [spec_to_dict(v) for v in self.values],
            "scales": list(self.scales),
            "level_count": self.level_count,
            "grid_points": self.grid_points,
            "tol": self.tol,
            "max_depth": self.max_depth,
            "seed": self.seed,
            "q_recipe": self.q_recipe,
            "export_levels": list(self.export_levels),
            "matching_tol": self.matching_tol,
            "allow_mismatch": self.allow_mismatch,
        }

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)

    # -- builders ------------------------------------------------------------
    def build_grid(self):
        return LevelGrid.uniform(self.level_count)

    def build_dataset(self, grid=None):
        grid = grid if grid is not None else self.build_grid()
        values = [from_membership(spec, grid) for spec in self.values]
        return FuzzyDataSet(np.asarray(self.knots, dtype=float), values)

    def build_system(self, data=None):
        data = data if data is not None else self.build_dataset()
        return IfsSystem(
            data, np.asarray(self.scales, dtype=float),
            recipe=LinearGDiffRecipe(), matching_tol=self.matching_tol,
        )
