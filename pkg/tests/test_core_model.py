import math
from dataclasses import fields

import pytest
from hypothesis import given, strategies as st

from epiecon.core import ResponseRecord, clamp_position, distance
from epiecon.params import ParameterError, Parameters

coord = st.floats(-1e6, 1e6, allow_nan=False)


def test_distance_pythagorean_triple():
    assert distance((0, 0), (3, 4)) == 5.0


def test_distance_identity():
    assert distance((7, 7), (7, 7)) == 0.0


def test_distance_unit_contact_at_default_threshold():
    p = Parameters()
    assert distance((0, 0), (1, 0)) == 1.0 == p.contagion_distance


@given(st.tuples(coord, coord), st.tuples(coord, coord))
def test_distance_symmetric(p, q):
    assert distance(p, q) == distance(q, p)


@given(st.tuples(coord, coord), st.tuples(coord, coord),
       st.tuples(coord, coord))
def test_distance_triangle_inequality(a, b, c):
    assert distance(a, c) <= distance(a, b) + distance(b, c) + 1e-6


def test_clamp_lower():
    assert clamp_position((-3, 250), 500, 500) == (0, 250)


def test_clamp_upper():
    assert clamp_position((501, 501), 500, 500) == (500, 500)


def test_clamp_interior_fixed_point():
    assert clamp_position((10, 10), 500, 500) == (10, 10)


@given(st.tuples(coord, coord))
def test_clamp_always_inside(p):
    cx, cy = clamp_position(p, 500, 400)
    assert 0 <= cx <= 500 and 0 <= cy <= 400


def test_clamp_rejects_bad_bounds():
    with pytest.raises(ValueError):
        clamp_position((1, 1), 0, 10)


def test_default_parameters_validate():
    Parameters().validate()


def test_parameter_symbols_all_present():
    # Every model quantity is a real field: the social/demographic set,
    # the epidemiological set, the economical set, and the plumbing.
    names = {f.name for f in fields(Parameters)}
    expected = {
        "height", "width", "population_size", "age_shape_a", "age_shape_b",
        "family_size", "mobility_amplitude", "homeless_rate",
        "contagion_distance", "contagion_probability",
        "incubation_days_min", "incubation_days_max",
        "transmission_days_min", "transmission_days_max", "recovering_days",
        "hospitalization_rates", "severe_rates", "fatality_rates",
        "initial_infected_rate", "initial_immune_rate", "critical_limit",
        "income_shares", "formal_business_rate", "total_gdp",
        "public_gdp_share", "business_gdp_share", "minimum_income",
        "minimum_expense", "unemployment_rate", "informal_business_rate",
        "eap_age_min", "eap_age_max", "position_noise",
        "tax_rate", "spend_per_contact_factor", "salary_scale",
        "business_contact_radius", "venue_contact_rate",
        "hospital_cost_per_patient_day", "capacity_fatality_multiplier",
        "contact_threshold", "healthcare_fixed_expense",
    }
    assert expected <= names


def test_income_shares_sum_to_one():
    p = Parameters()
    assert abs(sum(p.income_shares) - 1.0) < 1e-9
    assert all(s > 0 for s in p.income_shares)


def test_wealth_shares_partition():
    p = Parameters()
    assert p.public_gdp_share + p.business_gdp_share + p.personal_gdp_share \
        == pytest.approx(1.0, abs=1e-12)
    assert p.personal_gdp_share == pytest.approx(0.94)


def test_rate_tables_have_nine_brackets():
    p = Parameters()
    for table in (p.hospitalization_rates, p.severe_rates, p.fatality_rates):
        assert len(table) == 9
        assert all(0.0 <= v <= 1.0 for v in table)


def test_disease_intervals_ordered():
    p = Parameters()
    assert p.incubation_days_min <= p.incubation_days_max
    assert p.transmission_days_min <= p.transmission_days_max


@pytest.mark.parametrize("bad", [
    {"population_size": 0},
    {"income_shares": (0.2, 0.2, 0.2, 0.2, 0.3)},
    {"income_shares": (0.5, 0.5, 0.0, 0.0, 0.0)},
    {"contagion_probability": 1.5},
    {"incubation_days_min": 7, "incubation_days_max": 5},
    {"initial_infected_rate": 0.6, "initial_immune_rate": 0.6},
    {"family_size": 0},
    {"capacity_fatality_multiplier": 0.5},
])
def test_invalid_parameters_rejected(bad):
    with pytest.raises(ParameterError):
        Parameters(**bad).validate()


def test_contact_threshold_defaults_to_contagion_distance():
    assert Parameters().effective_contact_threshold == 1.0
    assert Parameters(contact_threshold=2.5).effective_contact_threshold == 2.5


def make_record(s, ia, ih, isv, r, d, w=(0.94, 0.05, 0.01)):
    return ResponseRecord(
        population=s + ia + ih + isv + r + d,
        susceptible_n=s,
        infected_asymptomatic_n=ia,
        infected_hospitalized_n=ih,
        infected_severe_n=isv,
        recovered_n=r,
        dead_n=d,
        w_people=w[0],
        w_business=w[1],
        w_government=w[2],
    )


def test_response_record_counts_are_exact():
    rec = make_record(s=250, ia=20, ih=5, isv=2, r=20, d=3)
    assert rec.counts_sum() == rec.population
    assert rec.infected_n == 27


@given(st.lists(st.integers(0, 10_000), min_size=6, max_size=6))
def test_response_fractions_from_any_counts(counts):
    s, ia, ih, isv, r, d = counts
    if s + ia + ih + isv + r + d == 0:
        return
    rec = make_record(s, ia, ih, isv, r, d)
    # The exactness claim lives in the integer domain: the heads always
    # partition the population.
    assert rec.counts_sum() == rec.population
    assert rec.s + rec.i + rec.r + rec.d == pytest.approx(1.0, abs=1e-12)
    assert rec.i == pytest.approx(rec.i_a + rec.i_h + rec.i_s, abs=1e-12)


def test_response_row_order():
    rec = make_record(s=299, ia=1, ih=0, isv=0, r=0, d=0)
    row = rec.as_row()
    assert len(row) == 10
    assert row[0] == rec.s and row[6] == rec.d and row[7] == rec.w_people
