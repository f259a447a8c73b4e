"""Ocean-heat driven climate damages and social cost of greenhouse gases."""

from .scenarios import ScenarioSpec, enumerate_scenarios, parse_scenario
from .series import YearSeries

__all__ = ["ScenarioSpec", "YearSeries", "enumerate_scenarios", "parse_scenario"]
__version__ = "0.1.0"
