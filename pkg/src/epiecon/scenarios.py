"""Intervention policies as data: who is confined, when, and what changes.

A policy never touches the engine directly; it only overrides the
contagion threshold, the transmission probability, the free-walk
amplitude, and flags agents as isolated. The engine consults
``policy_active`` every hour, so conditional policies can switch on and
off as the infected share crosses the threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .core import Severity, Status
from .params import Parameters


class Trigger(Enum):
    NEVER = "never"
    ALWAYS = "always"
    INFECTED_THRESHOLD = "infected-threshold"


class IsolationKind(Enum):
    NONE = "none"
    PARTIAL = "partial"       # fixed random subset, drawn at start
    VERTICAL = "vertical"     # age and symptom predicate, re-checked hourly


SCENARIO_IDS = (
    "baseline",
    "do-nothing",
    "lockdown",
    "conditional-lockdown",
    "vertical",
    "partial",
    "masks",
    "masks-partial",
)

VERTICAL_MIN_AGE = 65.0
VERTICAL_MAX_AGE = 18.0
CONDITIONAL_THRESHOLD = 0.05
MASK_CONTAGION_DISTANCE = 0.5
MASK_CONTAGION_PROBABILITY = 0.3
DEFAULT_ISOLATION_LEVEL = 0.5
LOCKDOWN_MOBILITY = 1.0


@dataclass(frozen=True)
class ScenarioPolicy:
    id: str
    contagion_distance_override: float | None = None
    contagion_probability_override: float | None = None
    mobility_override: float | None = None
    lockdown_restrictions: bool = False
    isolation_level: float = 0.0
    isolation_kind: IsolationKind = IsolationKind.NONE
    trigger: Trigger = Trigger.NEVER
    threshold: float = 0.0
    seeds_epidemic: bool = True

    def __post_init__(self):
        if not 0.0 <= self.isolation_level <= 1.0:
            raise ValueError("isolation level must lie in [0, 1]")
        if self.trigger is Trigger.INFECTED_THRESHOLD and not (
                0.0 < self.threshold < 1.0):
            raise ValueError("conditional trigger threshold must lie in (0, 1)")


def make_scenario(scenario_id: str,
                  isolation_level: float | None = None) -> ScenarioPolicy:
    """Build one of the named policies. ``isolation_level`` overrides the
    partial-isolation adherence for the partial and masks-partial
    scenarios (and the sweep family built on them)."""
    il = DEFAULT_ISOLATION_LEVEL if isolation_level is None else isolation_level
    if scenario_id == "baseline":
        return ScenarioPolicy(id=scenario_id, seeds_epidemic=False)
    if scenario_id == "do-nothing":
        return ScenarioPolicy(id=scenario_id)
    if scenario_id == "lockdown":
        return ScenarioPolicy(
            id=scenario_id,
            lockdown_restrictions=True,
            mobility_override=LOCKDOWN_MOBILITY,
            trigger=Trigger.ALWAYS,
        )
    if scenario_id == "conditional-lockdown":
        return ScenarioPolicy(
            id=scenario_id,
            lockdown_restrictions=True,
            mobility_override=LOCKDOWN_MOBILITY,
            trigger=Trigger.INFECTED_THRESHOLD,
            threshold=CONDITIONAL_THRESHOLD,
        )
    if scenario_id == "vertical":
        return ScenarioPolicy(
            id=scenario_id, isolation_kind=IsolationKind.VERTICAL
        )
    if scenario_id == "partial":
        return ScenarioPolicy(
            id=scenario_id,
            isolation_kind=IsolationKind.PARTIAL,
            isolation_level=il,
        )
    if scenario_id == "masks":
        return ScenarioPolicy(
            id=scenario_id,
            contagion_distance_override=MASK_CONTAGION_DISTANCE,
            contagion_probability_override=MASK_CONTAGION_PROBABILITY,
        )
    if scenario_id == "masks-partial":
        return ScenarioPolicy(
            id=scenario_id,
            contagion_distance_override=MASK_CONTAGION_DISTANCE,
            contagion_probability_override=MASK_CONTAGION_PROBABILITY,
            isolation_kind=IsolationKind.PARTIAL,
            isolation_level=il,
        )
    raise ValueError(f"unknown scenario id: {scenario_id!r}")


def params_for(policy: ScenarioPolicy, params: Parameters) -> Parameters:
    """Parameters the run should actually use under this policy. The
    baseline empties the epidemic seeding so only the economy runs."""
    if policy.seeds_epidemic:
        return params
    return replace(params, initial_infected_rate=0.0, initial_immune_rate=1.0)


def infected_share(world) -> float:
    return float((world.status == Status.INFECTED).sum()) / world.n_people


def policy_active(policy: ScenarioPolicy, world, t: int = 0) -> bool:
    """Whether the policy's mobility restrictions apply this hour. A
    conditional trigger activates at or above its threshold and releases
    strictly below it."""
    if policy.trigger is Trigger.ALWAYS:
        return True
    if policy.trigger is Trigger.INFECTED_THRESHOLD:
        return infected_share(world) >= policy.threshold
    return False


def vertical_isolation_mask(world) -> np.ndarray:
    """Who the vertical policy confines right now: minors, the elderly,
    and anyone symptomatic, meaning a drawn condition of hospitalized or
    worse. Mild and incubating cases keep circulating."""
    symptomatic = (world.status == Status.INFECTED) & (
        world.severity >= Severity.HOSPITALIZED
    )
    return (
        (world.age < VERTICAL_MAX_AGE)
        | (world.age > VERTICAL_MIN_AGE)
        | symptomatic
    )


def is_isolated(world, i: int, policy: ScenarioPolicy) -> bool:
    """Whether agent ``i`` is confined under the policy at this moment.
    Partial isolation reads the flag drawn at initialization; vertical
    isolation evaluates its predicate fresh."""
    if policy.isolation_kind is IsolationKind.VERTICAL:
        return bool(vertical_isolation_mask(world)[i])
    if policy.isolation_kind is IsolationKind.PARTIAL:
        return bool(world.isolated[i])
    return False


def apply_initial_isolation(world, policy: ScenarioPolicy,
                            rng: np.random.Generator) -> None:
    """Draw the fixed stay-home subset for partial isolation. The subset
    is decided once per run and never re-rolled."""
    if policy.isolation_kind is IsolationKind.PARTIAL:
        world.isolated = rng.random(world.n_people) < policy.isolation_level
    else:
        world.isolated = np.zeros(world.n_people, dtype=bool)
