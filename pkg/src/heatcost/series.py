"""Year-indexed series carrier shared by every stage."""

from dataclasses import dataclass, field

import numpy as np

UNITS = ("GtC", "GtCO2", "ppm", "ppb", "ppt", "Wm2", "degC", "ZJ", "USD", "fraction")


@dataclass(frozen=True)
class YearSeries:
    start_year: int
    values: np.ndarray = field(repr=False)
    unit: str

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size < 1:
            raise ValueError("YearSeries needs a non-empty 1-D sequence")
        if self.unit not in UNITS:
            raise ValueError(f"unknown unit {self.unit!r}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "start_year", int(self.start_year))

    def __len__(self):
        return self.values.size

    @property
    def end_year(self):
        return self.start_year + self.values.size - 1

    @property
    def years(self):
        return np.arange(self.start_year, self.end_year + 1)

    def __contains__(self, year):
        return self.start_year <= year <= self.end_year

    def at(self, year):
        if year not in self:
            raise KeyError(f"year {year} outside {self.start_year}..{self.end_year}")
        return float(self.values[year - self.start_year])

    def window(self, y0, y1):
        """Inclusive slice by calendar year."""
        if y0 not in self or y1 not in self or y1 < y0:
            raise KeyError(f"window {y0}..{y1} outside {self.start_year}..{self.end_year}")
        i = y0 - self.start_year
        return YearSeries(y0, self.values[i : i + (y1 - y0) + 1], self.unit)

    def with_values(self, values, unit=None):
        return YearSeries(self.start_year, values, unit or self.unit)
