"""Expected seat occupancy for rows of courteous and selfish theatregoers."""

from .core import (
    Entrances,
    RowSpec,
    SeatDistribution,
    harmonic,
    sample_seat,
    seat_pmf,
)
from .exact import ExpectationTable, UnsupportedRowError, exact_table, expected_occupancy
from .montecarlo import Semantics, SimulationSummary, simulate, simulate_model, simulate_physical, summarize
from .poly import PolynomialInP, eval_polynomial, zipf_right_polynomial
from .theatre import TheatreLayout, expected_theatre, lipari_layout, simulate_theatre

__version__ = "0.1.0"

__all__ = [
    "Entrances", "RowSpec", "SeatDistribution", "harmonic", "sample_seat", "seat_pmf",
    "ExpectationTable", "UnsupportedRowError", "exact_table", "expected_occupancy",
    "Semantics", "SimulationSummary", "simulate", "simulate_model", "simulate_physical", "summarize",
    "PolynomialInP", "eval_polynomial", "zipf_right_polynomial",
    "TheatreLayout", "expected_theatre", "lipari_layout", "simulate_theatre",
]
