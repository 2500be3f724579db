"""World construction: agents, placement, jobs, epidemic seeding, wealth.

The world is stored struct-of-arrays: one numpy array per person
attribute plus small arrays for houses and businesses. This keeps the
hot loops (movement, contact search, contagion) fully vectorized while
leaving the per-agent contract functions trivially expressible as array
indexing.

Construction is a pure function of (parameters, seed): the same inputs
always produce the same world, byte for byte, which ``state_digest``
makes checkable.
"""

from __future__ import annotations

import hashlib
import math

import numpy as np

from .core import Phase, Severity, Status
from .params import ParameterError, Parameters, count_businesses, count_houses


def sample_age(rng: np.random.Generator, shape_a: float = 2.0,
               shape_b: float = 4.0) -> float:
    """One age draw in years: 100 times a Beta(shape_a, shape_b) sample."""
    return 100.0 * float(rng.beta(shape_a, shape_b))


class World:
    """Complete simulation state for one run."""

    def __init__(self, params: Parameters, rng: np.random.Generator):
        self.params = params
        self.rng = rng
        n = params.population_size
        nh = count_houses(n, params.family_size)
        nb = count_businesses(
            n, params.formal_business_rate, params.informal_business_rate
        )
        self.n_people = n
        self.n_houses = nh
        self.n_businesses = nb

        # People
        self.px = np.zeros(n)
        self.py = np.zeros(n)
        self.age = np.zeros(n)
        self.stratum = np.zeros(n, dtype=np.int8)
        self.house_idx = np.full(n, -1, dtype=np.int32)
        self.employer_idx = np.full(n, -1, dtype=np.int32)
        self.person_wealth = np.zeros(n)
        self.status = np.full(n, Status.SUSCEPTIBLE, dtype=np.int8)
        self.phase = np.full(n, Phase.NONE, dtype=np.int8)
        self.severity = np.full(n, Severity.UNASSIGNED, dtype=np.int8)
        self.infection_day = np.full(n, -1, dtype=np.int32)
        self.incubation_len = np.zeros(n, dtype=np.int16)
        self.contagious_len = np.zeros(n, dtype=np.int16)
        self.unserved = np.zeros(n, dtype=bool)
        self.isolated = np.zeros(n, dtype=bool)
        self.admitted = np.zeros(n, dtype=bool)

        # Houses
        self.hx = np.zeros(nh)
        self.hy = np.zeros(nh)
        self.house_stratum = np.zeros(nh, dtype=np.int8)
        self.house_wealth = np.zeros(nh)
        self.house_income_accum = np.zeros(nh)
        self.house_supplier_escrow = np.zeros(nh)

        # Businesses
        self.bx = np.zeros(nb)
        self.by = np.zeros(nb)
        self.business_stratum = np.zeros(nb, dtype=np.int8)
        self.business_wealth = np.zeros(nb)
        self.business_income_accum = np.zeros(nb)

        # Singletons
        self.gov_pos = (0.0, 0.0)
        self.health_pos = (0.0, 0.0)
        self.gov_wealth = 0.0
        self.health_wealth = 0.0

        # Clock and counters
        self.day = 0
        self.monthly_patient_days = 0

    # Derived masks -------------------------------------------------------

    def alive(self) -> np.ndarray:
        return self.status != Status.DEAD

    def homeless(self) -> np.ndarray:
        return self.house_idx < 0

    def employed(self) -> np.ndarray:
        return self.employer_idx >= 0

    def eap(self) -> np.ndarray:
        return (self.age > self.params.eap_age_min) & (
            self.age < self.params.eap_age_max
        )

    def needs_hospital(self) -> np.ndarray:
        return (
            self.alive()
            & (self.status == Status.INFECTED)
            & (self.severity >= Severity.HOSPITALIZED)
        )

    def total_wealth(self) -> float:
        """System-wide money, including household supplier escrow still in
        transit to businesses. Constant over a run by construction."""
        return float(
            self.person_wealth.sum()
            + self.house_wealth.sum()
            + self.house_supplier_escrow.sum()
            + self.business_wealth.sum()
            + self.gov_wealth
            + self.health_wealth
        )

    def living_members_per_house(self) -> np.ndarray:
        mask = self.alive() & ~self.homeless()
        return np.bincount(
            self.house_idx[mask], minlength=self.n_houses
        ).astype(np.int64)

    def living_employees_per_business(self) -> np.ndarray:
        mask = self.alive() & self.employed()
        return np.bincount(
            self.employer_idx[mask], minlength=self.n_businesses
        ).astype(np.int64)

    def state_digest(self) -> str:
        """SHA-256 over the full state, for determinism checks."""
        h = hashlib.sha256()
        for arr in (
            self.px, self.py, self.age, self.stratum, self.house_idx,
            self.employer_idx, self.person_wealth, self.status, self.phase,
            self.severity, self.infection_day, self.incubation_len,
            self.contagious_len, self.unserved, self.isolated, self.admitted,
            self.hx, self.hy, self.house_stratum, self.house_wealth,
            self.house_income_accum, self.house_supplier_escrow,
            self.bx, self.by, self.business_stratum, self.business_wealth,
            self.business_income_accum,
        ):
            h.update(np.ascontiguousarray(arr).tobytes())
        h.update(repr((
            self.gov_pos, self.health_pos, self.gov_wealth,
            self.health_wealth, self.day, self.monthly_patient_days,
        )).encode())
        return h.hexdigest()


def build_world(params: Parameters, seed) -> World:
    """Construct the initial world from parameters and a seed.

    The seed is required: there is no ambient-entropy fallback. An
    integer builds a fresh generator; passing a Generator lets a caller
    keep consuming the same stream for the run that follows.
    """
    params.validate()
    if seed is None:
        raise ParameterError("a seed is required to build a world")
    rng = seed if isinstance(seed, np.random.Generator) else (
        np.random.default_rng(seed)
    )
    world = World(params, rng)
    n, nh, nb = world.n_people, world.n_houses, world.n_businesses

    # Static agents: uniform placement, uniform strata.
    world.hx = rng.uniform(0.0, params.height, nh)
    world.hy = rng.uniform(0.0, params.width, nh)
    world.house_stratum = rng.integers(1, 6, nh).astype(np.int8)
    world.bx = rng.uniform(0.0, params.height, nb)
    world.by = rng.uniform(0.0, params.width, nb)
    world.business_stratum = rng.integers(1, 6, nb).astype(np.int8)
    world.gov_pos = (
        float(rng.uniform(0.0, params.height)),
        float(rng.uniform(0.0, params.width)),
    )
    world.health_pos = (
        float(rng.uniform(0.0, params.height)),
        float(rng.uniform(0.0, params.width)),
    )

    # People: ages, strata, housing, employment.
    world.age = 100.0 * rng.beta(params.age_shape_a, params.age_shape_b, n)
    world.stratum = rng.integers(1, 6, n).astype(np.int8)

    homeless = rng.random(n) < params.homeless_rate
    house_pick = rng.integers(0, nh, n).astype(np.int32)
    world.house_idx = np.where(homeless, np.int32(-1), house_pick)

    # The homeless are treated as outside the labor force.
    unemployed_draw = rng.random(n) < params.unemployment_rate
    employer_pick = rng.integers(0, nb, n).astype(np.int32)
    works = world.eap() & ~unemployed_draw & ~homeless
    world.employer_idx = np.where(works, employer_pick, np.int32(-1))

    # Positions: household members near their house, the homeless anywhere.
    noise = rng.normal(0.0, params.position_noise, (n, 2))
    ux = rng.uniform(0.0, params.height, n)
    uy = rng.uniform(0.0, params.width, n)
    hx_of = world.hx[np.maximum(world.house_idx, 0)]
    hy_of = world.hy[np.maximum(world.house_idx, 0)]
    world.px = np.clip(
        np.where(homeless, ux, hx_of + noise[:, 0]), 0.0, params.height
    )
    world.py = np.clip(
        np.where(homeless, uy, hy_of + noise[:, 1]), 0.0, params.width
    )

    _seed_epidemic(world, rng)
    distribute_wealth(world)
    return world


def _seed_epidemic(world: World, rng: np.random.Generator) -> None:
    params = world.params
    n = world.n_people
    if params.initial_infected_rate + params.initial_immune_rate > 1.0:
        raise ParameterError(
            "initial infected and immune rates must not sum beyond 1"
        )
    n_inf = math.ceil(params.initial_infected_rate * n)
    n_imm = min(math.ceil(params.initial_immune_rate * n), n - n_inf)
    total = n_inf + n_imm
    if total == 0:
        return
    picked = rng.choice(n, size=total, replace=False)
    infected = picked[:n_inf]
    immune = picked[n_inf:]
    if n_inf:
        world.status[infected] = Status.INFECTED
        world.phase[infected] = Phase.INCUBATING
        world.infection_day[infected] = 0
        world.incubation_len[infected] = rng.integers(
            params.incubation_days_min, params.incubation_days_max + 1, n_inf
        )
        world.contagious_len[infected] = rng.integers(
            params.transmission_days_min, params.transmission_days_max + 1,
            n_inf,
        )
    if n_imm:
        world.status[immune] = Status.RECOVERED


def _quintile_pots(shares, present: np.ndarray, pot: float) -> np.ndarray:
    """Split a pot across the five strata by income share, reassigning the
    share of any stratum with no recipients proportionally to the rest."""
    weights = np.asarray(shares, dtype=np.float64).copy()
    weights[~present] = 0.0
    total = weights.sum()
    if total == 0.0:
        return np.zeros(5)
    return pot * weights / total


def distribute_wealth(world: World) -> World:
    """Allocate the total money stock across agents.

    The public slice goes to government, the business slice is split
    across strata by income share and equally within a stratum, and the
    personal slice is split across strata by income share and then per
    capita within a stratum: each household collects one capita-slice per
    member, each homeless person collects their own slice directly. The
    healthcare agent starts at zero and is funded monthly by government.
    """
    params = world.params
    world.gov_wealth = params.public_gdp_share * params.total_gdp
    world.health_wealth = 0.0

    # Business slice.
    business_pot = params.business_gdp_share * params.total_gdp
    biz_per_stratum = np.bincount(world.business_stratum, minlength=6)[1:6]
    pots = _quintile_pots(params.income_shares, biz_per_stratum > 0,
                          business_pot)
    world.business_wealth = np.where(
        biz_per_stratum[world.business_stratum - 1] > 0,
        pots[world.business_stratum - 1]
        / np.maximum(biz_per_stratum[world.business_stratum - 1], 1),
        0.0,
    )

    # Personal slice: capita weights per stratum.
    personal_pot = params.personal_gdp_share * params.total_gdp
    members = world.living_members_per_house()
    homeless = world.homeless()
    capita = np.zeros(5)
    for q in range(1, 6):
        capita[q - 1] = members[world.house_stratum == q].sum() + int(
            (homeless & (world.stratum == q)).sum()
        )
    pots = _quintile_pots(params.income_shares, capita > 0, personal_pot)
    per_capita = np.divide(pots, capita, out=np.zeros(5),
                           where=capita > 0)
    world.house_wealth = members * per_capita[world.house_stratum - 1]
    world.person_wealth = np.where(
        homeless, per_capita[world.stratum - 1], 0.0
    )
    return world
