import math

import numpy as np
import pytest
from scipy import stats

from epiecon.core import Phase, Status
from epiecon.params import ParameterError, Parameters, count_businesses, count_houses
from epiecon.world import build_world, distribute_wealth, sample_age


def test_house_count_defaults():
    assert count_houses(300, 3) == 100


def test_house_count_minimal():
    assert count_houses(1, 1) == 1


def test_house_count_rounds_up():
    assert count_houses(301, 3) == 101


def test_house_count_rejects_zero_family():
    with pytest.raises(ParameterError):
        count_houses(300, 0)


def test_business_count_defaults():
    # ceil(300 * 0.01875 + 300 * 0.40) = ceil(125.625)
    assert count_businesses(300, 0.01875, 0.40) == 126


def test_business_count_empty_population():
    assert count_businesses(0, 0.5, 0.9) == 0


def test_business_count_direct_formula():
    assert count_businesses(100, 0.01875, 0.40) == 42


def test_sample_age_support():
    rng = np.random.default_rng(3)
    ages = [sample_age(rng) for _ in range(2000)]
    assert all(0.0 <= a <= 100.0 for a in ages)


def test_sample_age_mean_matches_analytic():
    rng = np.random.default_rng(4)
    draws = 100.0 * rng.beta(2.0, 4.0, 100_000)
    # analytic mean of the age distribution: 100 * 2 / (2 + 4)
    assert abs(draws.mean() - 100 * 2 / 6) < 1.0


def test_sample_age_uniform_special_case():
    rng = np.random.default_rng(5)
    draws = np.array([sample_age(rng, 1.0, 1.0) for _ in range(20_000)])
    res = stats.kstest(draws / 100.0, "uniform")
    assert res.pvalue > 0.01


def test_build_world_agent_counts():
    w = build_world(Parameters(), 1)
    assert w.n_people == 300
    assert w.n_houses == 100
    assert w.n_businesses == 126
    # one government, one healthcare agent
    assert isinstance(w.gov_wealth, float) and isinstance(w.health_wealth, float)


def test_build_world_initial_epidemic_counts():
    w = build_world(Parameters(), 1)
    assert int((w.status == Status.INFECTED).sum()) == 3
    assert int((w.status == Status.RECOVERED).sum()) == 3
    assert (w.phase[w.status == Status.INFECTED] == Phase.INCUBATING).all()
    assert (w.infection_day[w.status == Status.INFECTED] == 0).all()


def test_build_world_baseline_seeding():
    p = Parameters(initial_infected_rate=0.0, initial_immune_rate=1.0)
    w = build_world(p, 1)
    assert int((w.status == Status.INFECTED).sum()) == 0
    assert int((w.status == Status.RECOVERED).sum()) == 300


def test_build_world_requires_seed():
    with pytest.raises(ParameterError):
        build_world(Parameters(), None)


def test_build_world_rejects_overfull_seeding():
    p = Parameters(initial_infected_rate=0.6, initial_immune_rate=0.6)
    with pytest.raises(ParameterError):
        build_world(p, 1)


def test_build_world_deterministic_digest():
    a = build_world(Parameters(), 99)
    b = build_world(Parameters(), 99)
    assert a.state_digest() == b.state_digest()
    c = build_world(Parameters(), 100)
    assert a.state_digest() != c.state_digest()


def test_everyone_is_housed_or_homeless_and_labor_partitioned():
    p = Parameters(population_size=2000, homeless_rate=0.05)
    w = build_world(p, 7)
    housed = w.house_idx >= 0
    homeless = w.homeless()
    assert bool(np.all(housed ^ homeless))
    employed = w.employed()
    # employment only within the working-age housed population
    assert bool(np.all(~employed | w.eap()))
    assert bool(np.all(~employed | ~homeless))
    # both residual categories exist at this size
    assert int((w.eap() & ~employed).sum()) > 0
    assert int((~w.eap()).sum()) > 0


def test_homeless_rate_statistics():
    p = Parameters(population_size=10_000, homeless_rate=0.02)
    w = build_world(p, 21)
    observed = int(w.homeless().sum())
    # binomial 99.9% interval around n*p
    spread = 3.3 * math.sqrt(10_000 * 0.02 * 0.98)
    assert abs(observed - 200) < spread


def test_initial_positions_near_houses():
    w = build_world(Parameters(), 13)
    housed = ~w.homeless()
    dx = w.px[housed] - w.hx[w.house_idx[housed]]
    dy = w.py[housed] - w.hy[w.house_idx[housed]]
    # positions sit within a few noise scales of home (boundary clamping
    # can only pull them closer)
    assert float(np.abs(dx).max()) < 0.1
    assert float(np.abs(dy).max()) < 0.1


def test_wealth_distribution_totals():
    p = Parameters()
    w = build_world(p, 17)
    assert w.gov_wealth == pytest.approx(10_000.0)
    assert w.health_wealth == 0.0
    assert float(w.business_wealth.sum()) == pytest.approx(50_000.0)
    personal = float(w.house_wealth.sum() + w.person_wealth.sum())
    assert personal == pytest.approx(940_000.0)
    assert w.total_wealth() == pytest.approx(p.total_gdp, rel=1e-9)


def test_wealth_distribution_top_quintile_share():
    p = Parameters()
    w = build_world(p, 17)
    q5_houses = w.house_stratum == 5
    members = w.living_members_per_house()
    q5 = float(w.house_wealth[q5_houses].sum()) + float(
        w.person_wealth[w.homeless() & (w.stratum == 5)].sum()
    )
    personal = float(w.house_wealth.sum() + w.person_wealth.sum())
    # the top stratum pot is its full income share when every stratum has
    # at least one recipient
    present = {int(q) for q in w.house_stratum[members > 0]}
    present |= {int(q) for q in w.stratum[w.homeless()]}
    if present == {1, 2, 3, 4, 5}:
        assert q5 / personal == pytest.approx(0.5612, rel=1e-9)


def test_empty_stratum_share_is_redistributed():
    p = Parameters(population_size=40, family_size=2)
    w = build_world(p, 3)
    # force every household and homeless person out of stratum 5
    w.house_stratum = np.where(w.house_stratum == 5, 1, w.house_stratum
                               ).astype(np.int8)
    w.stratum = np.where(w.stratum == 5, 1, w.stratum).astype(np.int8)
    w.business_stratum = np.where(w.business_stratum == 5, 1,
                                  w.business_stratum).astype(np.int8)
    distribute_wealth(w)
    assert w.total_wealth() == pytest.approx(p.total_gdp, rel=1e-9)


def test_homeless_receive_their_slice_directly():
    p = Parameters(population_size=400, homeless_rate=0.2)
    w = build_world(p, 29)
    assert float(w.person_wealth[w.homeless()].sum()) > 0
    assert float(w.person_wealth[~w.homeless()].sum()) == 0.0
