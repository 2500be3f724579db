"""Model parameters: the full knob set of the simulator plus validation.

Every quantity the simulation consumes lives here, grouped the way the
model uses them: the spatial/demographic layout of the society, the
disease process, the economy, and a handful of plumbing constants that
glue the transfer formulas together. All fields are plain values so a
``Parameters`` instance can be shared freely between runs and processes.

Defaults describe a small desk-scale society: 300 people on a 500x500
grid (one grid unit is roughly 7 m), 100 households, 126 businesses,
one government and one healthcare agent, and a closed money stock of
1,000,000 currency units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields

# Age-bracket rate tables, one entry per decade of age (80+ shares the
# last bracket). Values are probabilities, not percentages.
HOSPITALIZATION_RATES = (
    0.001, 0.003, 0.012, 0.032, 0.049, 0.102, 0.166, 0.243, 0.273,
)
SEVERE_CASE_RATES = (
    0.050, 0.050, 0.050, 0.050, 0.063, 0.122, 0.274, 0.432, 0.709,
)
FATALITY_RATES = (
    0.00002, 0.00006, 0.0003, 0.0008, 0.0015, 0.006, 0.022, 0.051, 0.093,
)

# Quintile shares of total wealth, poorest to richest. They must sum to
# exactly 1; the middle quintile is the reference class for the expense
# and spending formulas, the bottom quintile for the wage formula.
INCOME_SHARES = (0.0362, 0.0788, 0.1267, 0.1971, 0.5612)

NUM_AGE_BRACKETS = 9
NUM_STRATA = 5


class ParameterError(ValueError):
    """Raised when a parameter set fails validation."""


@dataclass(frozen=True)
class Parameters:
    # Social and demographic
    height: float = 500.0              # grid extent of the x coordinate
    width: float = 500.0               # grid extent of the y coordinate
    population_size: int = 300
    age_shape_a: float = 2.0           # Beta shape pair for the age draw
    age_shape_b: float = 4.0
    family_size: int = 3               # average household size
    mobility_amplitude: float = 10.0   # free-walk step scale, grid units
    homeless_rate: float = 0.0005

    # Epidemiological
    contagion_distance: float = 1.0    # max separation for transmission
    contagion_probability: float = 0.9
    incubation_days_min: int = 5
    incubation_days_max: int = 6
    transmission_days_min: int = 8
    transmission_days_max: int = 10
    recovering_days: int = 20          # infection resolves this many days in
    hospitalization_rates: tuple = HOSPITALIZATION_RATES
    severe_rates: tuple = SEVERE_CASE_RATES
    fatality_rates: tuple = FATALITY_RATES
    initial_infected_rate: float = 0.01
    initial_immune_rate: float = 0.01
    critical_limit: float = 0.05       # bed capacity as a population share

    # Economical
    income_shares: tuple = INCOME_SHARES
    formal_business_rate: float = 0.01875
    total_gdp: float = 1_000_000.0
    public_gdp_share: float = 0.01
    business_gdp_share: float = 0.05
    minimum_income: float = 900.0      # monthly wage of the poorest stratum
    minimum_expense: float = 600.0     # monthly fixed expense, middle stratum
    unemployment_rate: float = 0.12
    informal_business_rate: float = 0.40
    eap_age_min: float = 16.0          # working age band, exclusive bounds
    eap_age_max: float = 65.0

    # Movement noise for targeted moves (go home / to work / to hospital)
    position_noise: float = 0.01

    # Plumbing constants. These are the calibration surface of the model:
    # the structural formulas are fixed and these scale them. Defaults are
    # calibrated so that with no epidemic the business sector floats near
    # its initial wealth share while people slowly lose wealth, and a full
    # lockdown costs the business sector about a fifth of its share over
    # two months. venue_contact_rate is the hourly probability that two
    # customers of the same business pass within transmission range of
    # each other; it carries the crowd-mixing contagion channel that
    # shopping creates on top of household and workplace proximity.
    tax_rate: float = 0.10
    spend_per_contact_factor: float = 0.052
    salary_scale: float = 0.246
    business_contact_radius: float = 25.0
    venue_contact_rate: float = 0.02
    hospital_cost_per_patient_day: float = 30.0
    capacity_fatality_multiplier: float = 10.0
    contact_threshold: float | None = None   # None: use contagion_distance
    healthcare_fixed_expense: float = 0.0

    @property
    def personal_gdp_share(self) -> float:
        """Personal share of total wealth, the remainder after the public
        and business slices."""
        return 1.0 - self.public_gdp_share - self.business_gdp_share

    @property
    def effective_contact_threshold(self) -> float:
        """Contact threshold for transmission; defaults to the
        contagion distance when not set explicitly."""
        if self.contact_threshold is None:
            return self.contagion_distance
        return self.contact_threshold

    def validate(self) -> "Parameters":
        """Check every invariant, raising ParameterError on the first set
        of violations found. Returns self so calls can be chained."""
        problems: list[str] = []

        if self.height <= 0 or self.width <= 0:
            problems.append("grid dimensions must be positive")
        if self.population_size < 1:
            problems.append("population_size must be at least 1")
        if self.family_size < 1:
            problems.append("family_size must be at least 1")
        if self.age_shape_a <= 0 or self.age_shape_b <= 0:
            problems.append("age shape parameters must be positive")
        if self.mobility_amplitude < 0:
            problems.append("mobility_amplitude must be non-negative")
        if self.position_noise < 0:
            problems.append("position_noise must be non-negative")

        for name in (
            "homeless_rate",
            "contagion_probability",
            "initial_infected_rate",
            "initial_immune_rate",
            "critical_limit",
            "unemployment_rate",
            "public_gdp_share",
            "business_gdp_share",
            "tax_rate",
            "venue_contact_rate",
        ):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                problems.append(f"{name} must lie in [0, 1], got {value}")

        if self.initial_infected_rate + self.initial_immune_rate > 1.0:
            problems.append(
                "initial_infected_rate + initial_immune_rate exceeds 1"
            )
        if self.public_gdp_share + self.business_gdp_share > 1.0:
            problems.append("public and business wealth shares exceed 1")

        if self.incubation_days_min > self.incubation_days_max:
            problems.append("incubation day interval has min > max")
        if self.transmission_days_min > self.transmission_days_max:
            problems.append("transmission day interval has min > max")
        if self.incubation_days_min < 0 or self.transmission_days_min < 0:
            problems.append("disease duration intervals must be non-negative")
        if self.recovering_days < 1:
            problems.append("recovering_days must be at least 1")

        for name in ("hospitalization_rates", "severe_rates", "fatality_rates"):
            table = getattr(self, name)
            if len(table) != NUM_AGE_BRACKETS:
                problems.append(f"{name} must have {NUM_AGE_BRACKETS} entries")
            elif not all(0.0 <= v <= 1.0 for v in table):
                problems.append(f"{name} entries must lie in [0, 1]")

        shares = self.income_shares
        if len(shares) != NUM_STRATA:
            problems.append(f"income_shares must have {NUM_STRATA} entries")
        else:
            if any(s <= 0 for s in shares):
                problems.append("income_shares must be strictly positive")
            if abs(sum(shares) - 1.0) > 1e-9:
                problems.append(
                    f"income_shares must sum to 1, got {sum(shares)!r}"
                )

        if self.formal_business_rate < 0 or self.informal_business_rate < 0:
            problems.append("business proportions must be non-negative")
        if self.total_gdp <= 0:
            problems.append("total_gdp must be positive")
        if self.minimum_income < 0 or self.minimum_expense < 0:
            problems.append("minimum income and expense must be non-negative")
        if not self.eap_age_min < self.eap_age_max:
            problems.append("working age band must have min < max")

        if self.contagion_distance < 0:
            problems.append("contagion_distance must be non-negative")
        if self.contact_threshold is not None and self.contact_threshold < 0:
            problems.append("contact_threshold must be non-negative")
        if self.business_contact_radius < 0:
            problems.append("business_contact_radius must be non-negative")
        if self.spend_per_contact_factor < 0:
            problems.append("spend_per_contact_factor must be non-negative")
        if self.salary_scale < 0:
            problems.append("salary_scale must be non-negative")
        if self.hospital_cost_per_patient_day < 0:
            problems.append("hospital_cost_per_patient_day must be non-negative")
        if self.capacity_fatality_multiplier < 1:
            problems.append("capacity_fatality_multiplier must be at least 1")
        if self.healthcare_fixed_expense < 0:
            problems.append("healthcare_fixed_expense must be non-negative")

        if problems:
            raise ParameterError("; ".join(problems))
        return self

    def income_ratio_to_middle(self, stratum: int) -> float:
        """Quintile share relative to the middle quintile. Scales expenses
        and per-contact spending by social stratum (1..5)."""
        return self.income_shares[stratum - 1] / self.income_shares[2]

    def income_ratio_to_bottom(self, stratum: int) -> float:
        """Quintile share relative to the bottom quintile. Scales wages by
        social stratum (1..5)."""
        return self.income_shares[stratum - 1] / self.income_shares[0]


def field_names() -> list[str]:
    """Names of every configurable parameter, in declaration order."""
    return [f.name for f in fields(Parameters)]


def count_houses(population_size: int, family_size: int) -> int:
    """Number of households: population over average family size, rounded
    up so everyone can be housed."""
    if family_size < 1:
        raise ParameterError("family_size must be at least 1")
    return math.ceil(population_size / family_size)


def count_businesses(
    population_size: int, formal_rate: float, informal_rate: float
) -> int:
    """Number of businesses implied by the formal and informal business
    proportions of the population."""
    if formal_rate < 0 or informal_rate < 0:
        raise ParameterError("business proportions must be non-negative")
    return math.ceil(
        population_size * formal_rate + population_size * informal_rate
    )
