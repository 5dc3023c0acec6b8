"""Whole-theatre occupancy as a sum of independently filled row sections."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import rng
from .core import Entrances, RowSpec, SeatDistribution, harmonic
from .exact import exact_table
from .montecarlo import Semantics, SimulationSummary, _summary, simulate_trials


@dataclass(frozen=True)
class Section:
    seats: int
    entrances: Entrances = Entrances.ONE

    def __post_init__(self):
        if isinstance(self.seats, bool) or int(self.seats) != self.seats or self.seats < 1:
            raise ValueError(f"a section needs a positive seat count, got {self.seats!r}")
        object.__setattr__(self, "entrances", Entrances.parse(self.entrances))


@dataclass(frozen=True)
class TheatreLayout:
    rows: tuple[tuple[Section, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.rows)
        if not rows or not all(rows):
            raise ValueError("a layout needs at least one row and every row at least one section")
        object.__setattr__(self, "rows", rows)

    def sections(self):
        """Sections in row-major order."""
        for row in self.rows:
            yield from row

    @property
    def total_seats(self) -> int:
        return sum(s.seats for s in self.sections())

    def to_dict(self) -> dict:
        return {"rows": [[{"seats": s.seats, "entrances": s.entrances.value} for s in row]
                         for row in self.rows]}

    @classmethod
    def from_dict(cls, data: dict) -> "TheatreLayout":
        try:
            rows = data["rows"]
            return cls(tuple(tuple(Section(int(s["seats"]), s["entrances"]) for s in row)
                             for row in rows))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed layout: {exc}") from None

    @classmethod
    def load(cls, path) -> "TheatreLayout":
        return cls.from_dict(json.loads(Path(path).read_text()))


def lipari_layout(n: int) -> TheatreLayout:
    """Twelve rows, each with two one-entrance and three two-entrance sections of n seats."""
    one, two = Section(n, Entrances.ONE), Section(n, Entrances.TWO)
    return TheatreLayout(tuple((one, two, two, two, one) for _ in range(12)))


def parse_layout(text: str) -> TheatreLayout:
    """``lipari:N`` or a path to a JSON layout file."""
    if text.startswith("lipari:"):
        try:
            n = int(text.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad lipari layout {text!r}; expected lipari:N") from None
        return lipari_layout(n)
    return TheatreLayout.load(text)


def _row_spec(section: Section, p: float, dist) -> RowSpec:
    return RowSpec(section.seats, section.entrances, dist, p)


def expected_theatre(layout: TheatreLayout, p: float, dist=SeatDistribution.UNIFORM) -> float:
    cache: dict[RowSpec, float] = {}
    total = 0.0
    for section in layout.sections():
        spec = _row_spec(section, p, dist)
        if spec not in cache:
            cache[spec] = exact_table(spec).value
        total += cache[spec]
    return total


def lipari_leading_order(n: int, p: float) -> float:
    """Leading-order total for the twelve-row, three-aisle layout (0 < p < 1)."""
    if not 0.0 < p < 1.0:
        raise ValueError("the estimate needs 0 < p < 1")
    return -36.0 / (1.0 - p) + 96.0 * (harmonic(n) + math.log1p(-p)) / (1.0 - p)


def theatre_trials(layout: TheatreLayout, p: float, dist, trials: int, seed: int) -> np.ndarray:
    total = np.zeros(trials, dtype=np.int64)
    for i, section in enumerate(layout.sections()):
        spec = _row_spec(section, p, dist)
        total += simulate_trials(spec, trials, rng.derive_seed(seed, i), Semantics.MODEL)
    return total


def simulate_theatre(layout: TheatreLayout, p: float, dist=SeatDistribution.UNIFORM,
                     trials: int = 10_000, seed: int = 0) -> SimulationSummary:
    values = theatre_trials(layout, p, SeatDistribution.parse(dist), trials, seed)
    return _summary(values, None, seed, Semantics.MODEL)
