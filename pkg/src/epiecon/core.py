"""Shared domain types: positions, epidemic states, per-tick response records."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import NamedTuple


class Position(NamedTuple):
    x: float
    y: float


def distance(p, q) -> float:
    """Euclidean distance between two positions (anything indexable as
    (x, y))."""
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return math.sqrt(dx * dx + dy * dy)


def clamp_position(p, max_x: float, max_y: float) -> Position:
    """Clip a position into the rectangle [0, max_x] x [0, max_y]."""
    if max_x <= 0 or max_y <= 0:
        raise ValueError("bounds must be positive")
    return Position(min(max(p[0], 0.0), max_x), min(max(p[1], 0.0), max_y))


class Status(IntEnum):
    SUSCEPTIBLE = 0
    INFECTED = 1
    RECOVERED = 2
    DEAD = 3


class Phase(IntEnum):
    """Stage of an active infection. NONE for anyone not infected."""

    NONE = 0
    INCUBATING = 1
    CONTAGIOUS = 2
    POST_CONTAGIOUS = 3   # still infected, no longer transmitting


class Severity(IntEnum):
    """Medical condition of an infected agent, assigned when incubation
    ends. Ordered so escalation is a simple max."""

    UNASSIGNED = 0
    ASYMPTOMATIC = 1
    HOSPITALIZED = 2
    SEVERE = 3


@dataclass(frozen=True)
class ResponseRecord:
    """One tick of observable output.

    Epidemic variables are carried as integer head counts so population
    accounting is exact; the fraction accessors divide by the population.
    Wealth shares are fractions of the total money stock under the
    reporting attribution: households count with people, the healthcare
    agent counts with government.
    """

    population: int
    susceptible_n: int
    infected_asymptomatic_n: int
    infected_hospitalized_n: int
    infected_severe_n: int
    recovered_n: int
    dead_n: int
    w_people: float
    w_business: float
    w_government: float

    @property
    def infected_n(self) -> int:
        return (
            self.infected_asymptomatic_n
            + self.infected_hospitalized_n
            + self.infected_severe_n
        )

    @property
    def s(self) -> float:
        return self.susceptible_n / self.population

    @property
    def i(self) -> float:
        return self.infected_n / self.population

    @property
    def i_a(self) -> float:
        return self.infected_asymptomatic_n / self.population

    @property
    def i_h(self) -> float:
        return self.infected_hospitalized_n / self.population

    @property
    def i_s(self) -> float:
        return self.infected_severe_n / self.population

    @property
    def r(self) -> float:
        return self.recovered_n / self.population

    @property
    def d(self) -> float:
        return self.dead_n / self.population

    def counts_sum(self) -> int:
        return (
            self.susceptible_n + self.infected_n + self.recovered_n + self.dead_n
        )

    def as_row(self) -> list[float]:
        """The ten response variables in canonical column order."""
        return [
            self.s, self.i, self.i_a, self.i_h, self.i_s, self.r, self.d,
            self.w_people, self.w_business, self.w_government,
        ]


# Canonical column order shared by exports, aggregates and plots.
RESPONSE_COLUMNS = (
    "S", "I", "I_A", "I_H", "I_S", "R", "D", "W_A1", "W_A3", "W_A4",
)
