"""The simulation loop, Monte Carlo batching, and summary metrics.

One run is strictly sequential: build the world from a per-run stream,
then advance 1,440 hourly ticks (60 days, two accounting cycles at the
default horizon). Runs are independent: each gets its own random stream
derived from (base seed, run index), never from the scenario, so the
same run index sees the same society under every policy and wealth
deltas compare like with like. Batches may execute runs in parallel;
results are identical to sequential execution.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import economy, epidemic, scenarios
from .core import RESPONSE_COLUMNS, Phase, ResponseRecord, Severity, Status
from .neighbors import StaticBinIndex, grid_pairs
from .params import ParameterError, Parameters
from .scenarios import IsolationKind, ScenarioPolicy
from .world import World, build_world

HOURS_PER_DAY = 24
ACCOUNTING_PERIOD = 720
DEFAULT_HORIZON = 1440
DEFAULT_RUNS = 35


class MetricError(ValueError):
    """Raised when a metric is undefined for the given inputs."""


@dataclass(frozen=True)
class SimulationConfig:
    params: Parameters = field(default_factory=Parameters)
    scenario_id: str = "do-nothing"
    isolation_level: float | None = None
    horizon: int = DEFAULT_HORIZON      # hourly ticks
    runs: int = DEFAULT_RUNS
    base_seed: int = 1
    workers: int | None = None          # None: one per CPU

    def validate(self) -> "SimulationConfig":
        if self.horizon < ACCOUNTING_PERIOD:
            raise ParameterError(
                f"horizon must cover at least one accounting cycle "
                f"({ACCOUNTING_PERIOD} ticks), got {self.horizon}"
            )
        if self.horizon % HOURS_PER_DAY != 0:
            raise ParameterError("horizon must be a whole number of days")
        if self.runs < 1:
            raise ParameterError("runs must be at least 1")
        self.params.validate()
        return self

    @property
    def days(self) -> int:
        return self.horizon // HOURS_PER_DAY


@dataclass(frozen=True)
class MetricSummary:
    infection_peak: float
    day_of_peak: int
    final_deaths: float
    delta_w: dict[str, float]

    def validate(self, days: int) -> "MetricSummary":
        if not 0.0 <= self.infection_peak <= 1.0:
            raise MetricError(
                f"infection peak {self.infection_peak} outside [0, 1]"
            )
        if not 1 <= self.day_of_peak <= days:
            raise MetricError(
                f"day of peak {self.day_of_peak} outside 1..{days}"
            )
        return self

    def as_dict(self) -> dict:
        return {
            "infection_peak": self.infection_peak,
            "day_of_peak": self.day_of_peak,
            "final_deaths": self.final_deaths,
            "delta_w": dict(self.delta_w),
        }


def run_stream(base_seed: int, run_index: int) -> np.random.Generator:
    """The dedicated random stream for one run of one batch."""
    return np.random.default_rng(
        np.random.SeedSequence(entropy=base_seed, spawn_key=(run_index,))
    )


def summarize(world: World) -> ResponseRecord:
    """Head counts and wealth shares for the current tick. Households
    (and their escrowed supplier money) report with people; the
    healthcare agent reports with government."""
    params = world.params
    status = world.status
    infected = status == Status.INFECTED
    sev = world.severity
    ih = int((infected & (sev == Severity.HOSPITALIZED)).sum())
    is_ = int((infected & (sev == Severity.SEVERE)).sum())
    ia = int((infected & (sev < Severity.HOSPITALIZED)).sum())
    gdp = params.total_gdp
    return ResponseRecord(
        population=world.n_people,
        susceptible_n=int((status == Status.SUSCEPTIBLE).sum()),
        infected_asymptomatic_n=ia,
        infected_hospitalized_n=ih,
        infected_severe_n=is_,
        recovered_n=int((status == Status.RECOVERED).sum()),
        dead_n=int((status == Status.DEAD).sum()),
        w_people=(
            world.person_wealth.sum() + world.house_wealth.sum()
            + world.house_supplier_escrow.sum()
        ) / gdp,
        w_business=world.business_wealth.sum() / gdp,
        w_government=(world.gov_wealth + world.health_wealth) / gdp,
    )


def step(world: World, t: int, policy: ScenarioPolicy,
         rng: np.random.Generator) -> World:
    """Advance exactly one hour.

    Hour-zero ticks run the daily block first (hospital triage, disease
    progression, fixed expenses) and, every 720th tick, the monthly
    accounting. Every tick then moves all agents, detects contacts, and
    resolves contagion and purchases.
    """
    params = world.params
    active = scenarios.policy_active(policy, world, t)
    if policy.isolation_kind is IsolationKind.VERTICAL:
        world.isolated = scenarios.vertical_isolation_mask(world)
    hour = t % HOURS_PER_DAY

    if hour == 0:
        world.day += 1
        ledger = epidemic.update_hospital_capacity(world)
        world.monthly_patient_days += len(ledger.admitted)
        epidemic.advance_all_disease(world, rng)
        economy.daily_expenses(world, rng)
        if t % ACCOUNTING_PERIOD == 0:
            economy.monthly_accounting(world, rng)

    actions = epidemic.select_actions(world, hour, policy, active)
    amplitude = params.mobility_amplitude
    if active and policy.mobility_override is not None:
        amplitude = policy.mobility_override
    epidemic.move_all(world, actions, rng, amplitude)

    # Person-to-person transmission. Only pairs with exactly one
    # contagious and one susceptible member can transmit, so the pair
    # search runs over just those two groups; with nobody contagious
    # (the no-epidemic baseline in particular) it is skipped outright.
    contagious = (world.status == Status.INFECTED) & (
        world.phase == Phase.CONTAGIOUS
    )
    any_contagious = bool(contagious.any())
    beta2 = policy.contagion_probability_override
    if beta2 is None:
        beta2 = params.contagion_probability
    if any_contagious:
        r_epi = policy.contagion_distance_override
        if r_epi is None:
            r_epi = params.effective_contact_threshold
        relevant = np.flatnonzero(
            contagious | (world.status == Status.SUSCEPTIBLE)
        )
        pairs = grid_pairs(world.px[relevant], world.py[relevant], r_epi)
        if len(pairs):
            epidemic.spread_all(world, relevant[pairs], beta2, rng)

    # Shopping by whoever is out walking this hour: each contact is a
    # purchase, and customers sharing a venue may pass close enough to
    # transmit. Business positions are static, so their cell bins are
    # built once per run and reused.
    walkers = np.flatnonzero(
        (actions == epidemic.ACTION_WALK) & world.alive()
    )
    if len(walkers) and params.business_contact_radius > 0:
        index = getattr(world, "_business_index", None)
        if index is None or index.radius != params.business_contact_radius:
            index = StaticBinIndex(
                world.bx, world.by, params.business_contact_radius
            )
            world._business_index = index
        pb = index.query(world.px[walkers], world.py[walkers])
        if len(pb):
            pairs = np.stack(
                [walkers[pb[:, 0]], pb[:, 1]], axis=1
            )
            economy.resolve_purchases(world, pairs)
            if any_contagious and params.venue_contact_rate > 0:
                venue_pairs = epidemic.co_shopper_pairs(pairs)
                if len(venue_pairs):
                    epidemic.spread_all(
                        world, venue_pairs,
                        params.venue_contact_rate * beta2, rng,
                    )
    return world


@dataclass
class RunResult:
    hourly: np.ndarray   # (horizon, 10) response variables per tick
    daily: np.ndarray    # (days, 10), each a 24-tick mean, rounded to 6 dp
    counts_ok: bool      # population accounting held at every tick
    wealth_error: float  # max relative total-wealth drift over the run


def run_simulation(config: SimulationConfig, run_index: int) -> RunResult:
    """Execute one full run and return its hourly and daily series.

    Daily series are quantized to the CSV precision (six decimals) so
    files on disk and in-memory results agree exactly.
    """
    config.validate()
    policy = scenarios.make_scenario(config.scenario_id,
                                     config.isolation_level)
    params = scenarios.params_for(policy, config.params)
    rng = run_stream(config.base_seed, run_index)
    world = build_world(params, rng)
    scenarios.apply_initial_isolation(world, policy, rng)

    gdp = params.total_gdp
    hourly = np.empty((config.horizon, 10))
    counts_ok = True
    wealth_error = 0.0
    for t in range(1, config.horizon + 1):
        step(world, t, policy, rng)
        rec = summarize(world)
        hourly[t - 1] = rec.as_row()
        if rec.counts_sum() != world.n_people or rec.infected_n != int(
            (world.status == Status.INFECTED).sum()
        ):
            counts_ok = False
        wealth_error = max(
            wealth_error, abs(world.total_wealth() - gdp) / gdp
        )
    daily = np.round(
        hourly.reshape(config.days, HOURS_PER_DAY, 10).mean(axis=1), 6
    )
    return RunResult(hourly, daily, counts_ok, wealth_error)


def _run_daily(config: SimulationConfig, run_index: int):
    res = run_simulation(config, run_index)
    return run_index, res.daily, res.counts_ok, res.wealth_error


@dataclass
class BatchResult:
    scenario_id: str
    daily: np.ndarray          # (runs, days, 10), 6-dp quantized
    counts_ok: bool
    wealth_error: float

    @property
    def runs(self) -> int:
        return self.daily.shape[0]

    @property
    def days(self) -> int:
        return self.daily.shape[1]

    def mean(self) -> np.ndarray:
        return self.daily.mean(axis=0)

    def std(self) -> np.ndarray:
        return self.daily.std(axis=0)


def run_batch(config: SimulationConfig) -> BatchResult:
    """Execute all runs of one scenario. Results are keyed by run index,
    so parallel execution is indistinguishable from sequential."""
    config.validate()
    workers = config.workers if config.workers is not None else (
        os.cpu_count() or 1
    )
    workers = max(1, min(workers, config.runs))
    results: list = [None] * config.runs
    counts_ok = True
    wealth_error = 0.0
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = pool.map(
                _run_daily, [config] * config.runs, range(config.runs)
            )
            for idx, daily, ok, werr in outcomes:
                results[idx] = daily
                counts_ok &= ok
                wealth_error = max(wealth_error, werr)
    else:
        for r in range(config.runs):
            idx, daily, ok, werr = _run_daily(config, r)
            results[idx] = daily
            counts_ok &= ok
            wealth_error = max(wealth_error, werr)
    return BatchResult(
        config.scenario_id, np.stack(results), counts_ok, wealth_error
    )


def run_scenarios(config: SimulationConfig, scenario_ids,
                  isolation_levels: dict[str, float] | None = None,
                  ) -> dict[str, BatchResult]:
    """Run a batch per scenario with paired seeding: run index k uses the
    same stream in every scenario."""
    out: dict[str, BatchResult] = {}
    for sid in scenario_ids:
        il = (isolation_levels or {}).get(sid)
        if il is None:
            il = sweep_levels(sid)
        cfg = replace(config, scenario_id=_base_scenario_id(sid),
                      isolation_level=il)
        out[sid] = replace_batch_id(run_batch(cfg), sid)
    return out


def replace_batch_id(batch: BatchResult, sid: str) -> BatchResult:
    return BatchResult(sid, batch.daily, batch.counts_ok, batch.wealth_error)


def _base_scenario_id(sid: str) -> str:
    """Sweep members are named partial-<level>; they run the partial
    scenario with that isolation level."""
    if sid.startswith("partial-"):
        return "partial"
    return sid


def sweep_levels(sid: str) -> float | None:
    if sid.startswith("partial-"):
        return float(sid.split("-", 1)[1])
    return None


# Metrics ------------------------------------------------------------------

I_COLUMN = RESPONSE_COLUMNS.index("I")
D_COLUMN = RESPONSE_COLUMNS.index("D")
W_COLUMNS = {
    "a1": RESPONSE_COLUMNS.index("W_A1"),
    "a3": RESPONSE_COLUMNS.index("W_A3"),
    "a4": RESPONSE_COLUMNS.index("W_A4"),
}


def infection_peak(series) -> tuple[float, int]:
    """Peak of an infected-share series and the earliest 1-based day that
    attains it."""
    values = np.asarray(series, dtype=np.float64)
    if values.size == 0:
        raise MetricError("infection series is empty")
    peak = float(values.max())
    day = int(np.flatnonzero(values == peak)[0]) + 1
    return peak, day


def wealth_delta(scenario_final: float, baseline_final: float) -> float:
    """Relative wealth change of a group versus the no-epidemic baseline
    at the end of the horizon."""
    if baseline_final == 0.0:
        raise MetricError(
            "baseline final wealth share is zero; wealth delta undefined"
        )
    return (scenario_final - baseline_final) / baseline_final


def compute_metrics(batches: dict[str, BatchResult],
                    baseline_id: str = "baseline") -> dict[str, dict]:
    """Per-scenario summary: peak and timing of the mean infected curve,
    mean final deaths, and wealth deltas of the mean final shares against
    the baseline batch."""
    if baseline_id not in batches:
        raise MetricError(
            f"metrics need a {baseline_id!r} batch for wealth deltas"
        )
    base_mean = batches[baseline_id].mean()
    out: dict[str, dict] = {}
    for sid, batch in batches.items():
        mean = batch.mean()
        peak, day = infection_peak(mean[:, I_COLUMN])
        deltas = {
            group: wealth_delta(
                float(mean[-1, col]), float(base_mean[-1, col])
            )
            for group, col in W_COLUMNS.items()
        }
        summary = MetricSummary(
            infection_peak=peak,
            day_of_peak=day,
            final_deaths=float(mean[-1, D_COLUMN]),
            delta_w=deltas,
        ).validate(batch.days)
        out[sid] = summary.as_dict()
    return out
