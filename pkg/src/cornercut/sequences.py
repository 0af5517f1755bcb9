"""Sequences on integer index windows with dyadic level bookkeeping.

A value attached to index j at refinement level k lives at the dual grid
point 2^-(k0+k) * (j - 1/2), where k0 is the density exponent of the
initial data.  Finite windows stand in for bi-infinite sequences via a
boundary policy: periodic wrap-around for closed data, end replication
for open data.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class BoundaryPolicy(enum.Enum):
    PERIODIC = "periodic"
    REPLICATE_END = "replicate"


@dataclass(frozen=True)
class GridSpec:
    """Dual parametrization grid for one refinement level."""

    level: int
    base_density_exp: int = 0


def grid_point(g: GridSpec, j):
    """Abscissa of index j: 2^-(k0+k) * (j - 1/2).  Accepts scalars or arrays."""
    return (j - 0.5) * 2.0 ** -(g.base_density_exp + g.level)


@dataclass(frozen=True)
class LevelSequence:
    """Real values on a window of consecutive integer indices at one level.

    ``values[i]`` is the entry at index ``first_index + i``.  Lookups outside
    the stored window are resolved by the boundary policy; everything else is
    exact integer index arithmetic.
    """

    values: np.ndarray
    first_index: int = 0
    level: int = 0
    base_density_exp: int = 0
    boundary: BoundaryPolicy = BoundaryPolicy.REPLICATE_END

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("values must be a non-empty 1-d array")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size

    @property
    def last_index(self):
        return self.first_index + len(self) - 1

    @property
    def grid(self):
        return GridSpec(self.level, self.base_density_exp)

    def indices(self):
        return np.arange(self.first_index, self.first_index + len(self))

    def grid_points(self):
        return grid_point(self.grid, self.indices())

    def value_at(self, j):
        """Entry at integer index j (scalar or array), honoring the boundary."""
        off = np.asarray(j) - self.first_index
        n = len(self)
        if self.boundary is BoundaryPolicy.PERIODIC:
            return self.values[off % n]
        return self.values[np.clip(off, 0, n - 1)]

    def with_values(self, values, first_index=None, level=None):
        return LevelSequence(
            values,
            self.first_index if first_index is None else first_index,
            self.level if level is None else level,
            self.base_density_exp,
            self.boundary,
        )


def second_difference(f: LevelSequence) -> LevelSequence:
    """Scaled second difference 4^k * (f_{j-1} - 2 f_j + f_{j+1}), same window.

    Out-of-window neighbors at the ends come from the boundary policy.  The
    scale uses the sequence's level only; the density exponent k0 is carried
    by the data itself.
    """
    n = len(f)
    if f.boundary is BoundaryPolicy.REPLICATE_END and n < 3:
        raise ValueError("insufficient support: need >= 3 values for a second difference")
    idx = f.indices()
    left = f.value_at(idx - 1)
    right = f.value_at(idx + 1)
    vals = 4.0 ** f.level * ((left - 2.0 * f.values) + right)
    return f.with_values(vals)


def forward_difference(f: LevelSequence) -> LevelSequence:
    """Scaled forward difference: entry at j+1 is 2^k * (f_{j+1} - f_j).

    The window shrinks by one under end replication and wraps under
    periodicity.
    """
    n = len(f)
    if f.boundary is BoundaryPolicy.REPLICATE_END:
        if n < 2:
            raise ValueError("insufficient support: need >= 2 values for a forward difference")
        vals = 2.0 ** f.level * np.diff(f.values)
        return f.with_values(vals, first_index=f.first_index + 1)
    vals = 2.0 ** f.level * (f.values - np.roll(f.values, 1))
    return f.with_values(vals)
