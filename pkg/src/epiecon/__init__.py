"""Agent-based simulator of a closed society under an epidemic.

People, households, businesses, a government and a healthcare system
share a finite grid. Hourly routines move people around, proximity
spreads infection, and every monetary operation is a transfer, so total
wealth is conserved. Policy scenarios (lockdowns, isolation, masks) are
data-driven overrides on top of the same engine.
"""

from .core import Position, ResponseRecord, Severity, Status, distance
from .params import Parameters
from .runner import (
    BatchResult,
    SimulationConfig,
    compute_metrics,
    infection_peak,
    run_batch,
    run_scenarios,
    run_simulation,
    wealth_delta,
)
from .scenarios import SCENARIO_IDS, ScenarioPolicy, make_scenario
from .world import World, build_world

__all__ = [
    "BatchResult",
    "Parameters",
    "Position",
    "ResponseRecord",
    "SCENARIO_IDS",
    "ScenarioPolicy",
    "Severity",
    "SimulationConfig",
    "Status",
    "World",
    "build_world",
    "compute_metrics",
    "distance",
    "infection_peak",
    "make_scenario",
    "run_batch",
    "run_scenarios",
    "run_simulation",
    "wealth_delta",
]

__version__ = "0.1.0"
