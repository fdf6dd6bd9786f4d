"""Dense mass fields on the centred box [-R, R]^nu."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch

__all__ = ["MassField", "ReturnSequence"]


@dataclass
class MassField:
    """Masses indexed by lattice sites of the box |x|_inf <= radius.

    ``values[i1, ..., inu]`` holds the mass at x = (i1 - R, ..., inu - R).
    ``time`` records the number of steps the field corresponds to.
    """

    dim: int
    radius: int
    time: int
    values: np.ndarray

    def __post_init__(self):
        side = 2 * self.radius + 1
        if self.values.shape != (side,) * self.dim:
            raise DimensionMismatch(
                f"values shape {self.values.shape} does not match box "
                f"radius {self.radius} in dimension {self.dim}"
            )

    @classmethod
    def point_mass(cls, dim: int, radius: int, at=None) -> "MassField":
        side = 2 * radius + 1
        values = np.zeros((side,) * dim)
        x = (0,) * dim if at is None else tuple(int(c) for c in np.atleast_1d(at))
        values[tuple(c + radius for c in x)] = 1.0
        return cls(dim=dim, radius=radius, time=0, values=values)

    def _index(self, x) -> tuple[int, ...]:
        x = np.atleast_1d(x)
        if len(x) != self.dim:
            raise DimensionMismatch(f"site {x!r} is not a {self.dim}-vector")
        if np.max(np.abs(x)) > self.radius:
            raise IndexError(f"site {tuple(int(c) for c in x)} outside box radius {self.radius}")
        return tuple(int(c) + self.radius for c in x)

    def value_at(self, x) -> float:
        return float(self.values[self._index(x)])

    @property
    def origin_value(self) -> float:
        return self.value_at((0,) * self.dim)

    def total(self) -> float:
        return float(self.values.sum())

    def sites(self):
        """Iterate lattice sites of the box in lexicographic order."""
        side = 2 * self.radius + 1
        for idx in np.ndindex(*(side,) * self.dim):
            yield tuple(i - self.radius for i in idx)

    def items(self):
        """Iterate (site, value) pairs in lexicographic site order."""
        side = 2 * self.radius + 1
        for idx in np.ndindex(*(side,) * self.dim):
            yield tuple(i - self.radius for i in idx), float(self.values[idx])

    def max_abs_diff(self, other: "MassField") -> float:
        if other.dim != self.dim or other.radius != self.radius:
            raise DimensionMismatch("fields live on different boxes")
        return float(np.max(np.abs(self.values - other.values)))

    def reflected(self) -> "MassField":
        """The field at -x; equals self for symmetric evolutions."""
        values = self.values[(slice(None, None, -1),) * self.dim].copy()
        return MassField(self.dim, self.radius, self.time, values)


@dataclass
class ReturnSequence:
    """Origin masses p_n = P_n(0,0) for n = 0..horizon.

    ``perturbed`` optionally carries the perturbed-walk origin masses on the
    same index range.
    """

    horizon: int
    values: np.ndarray
    perturbed: np.ndarray | None = None

    def __post_init__(self):
        if len(self.values) != self.horizon + 1:
            raise DimensionMismatch("return sequence length must be horizon + 1")

    def __getitem__(self, n: int) -> float:
        return float(self.values[n])
