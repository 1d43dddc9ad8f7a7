"""Discretized membership-level grids shared by all fuzzy numbers in a computation."""

import numpy as np

from .errors import GridMismatch, SchemaViolation


class LevelGrid:
    """Strictly increasing membership levels in [0, 1], containing both endpoints.

    All fuzzy numbers taking part in one computation must share a grid; the
    arithmetic, metrics and the generalized difference are defined level-wise
    on it. Instances are immutable.
    """

    __slots__ = ("_levels",)

    def __init__(self, levels):
        lv = np.asarray(levels, dtype=float).copy()
        if lv.ndim != 1 or lv.size < 2:
            raise SchemaViolation("level grid needs at least the two endpoint levels")
        if not np.all(np.diff(lv) > 0):
            raise SchemaViolation("levels must be strictly increasing")
        if lv[0] != 0.0 or lv[-1] != 1.0:
            raise SchemaViolation("level grid must start at 0 and end at 1")
        lv.setflags(write=False)
        self._levels = lv

    @classmethod
    def uniform(cls, m=100):
        """Uniform grid of m+1 levels including 0 and 1."""
        if m < 2:
            raise SchemaViolation("level count must be >= 2")
        return cls(np.linspace(0.0, 1.0, m + 1))

    @property
    def levels(self):
        return self._levels

    def __len__(self):
        return self._levels.size

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, LevelGrid):
            return NotImplemented
        return np.array_equal(self._levels, other._levels)

    def __hash__(self):
        return hash((self._levels.size, float(self._levels[1])))

    def __repr__(self):
        return f"LevelGrid({self._levels.size} levels)"

    def interp_weights(self, lam):
        """(index, weight) so a level-wise array f satisfies
        f(lam) = (1-w) * f[k] + w * f[k+1]."""
        if not 0.0 <= lam <= 1.0:
            raise GridMismatch(f"level {lam} outside [0, 1]")
        k = int(np.searchsorted(self._levels, lam, side="right") - 1)
        if k >= self._levels.size - 1:
            return self._levels.size - 2, 1.0
        w = (lam - self._levels[k]) / (self._levels[k + 1] - self._levels[k])
        return k, float(w)


def require_same_grid(*grids):
    first = grids[0]
    for g in grids[1:]:
        if g != first:
            raise GridMismatch("fuzzy numbers do not share a level grid")
    return first
