import dataclasses

import numpy as np
import pytest

from epiecon.core import Severity, Status
from epiecon.params import Parameters
from epiecon.scenarios import (
    SCENARIO_IDS,
    IsolationKind,
    ScenarioPolicy,
    Trigger,
    apply_initial_isolation,
    is_isolated,
    make_scenario,
    params_for,
    policy_active,
    vertical_isolation_mask,
)
from epiecon.world import build_world


def world_of(pop=100, seed=2):
    params = Parameters(population_size=pop, initial_infected_rate=0.0,
                        initial_immune_rate=0.0)
    return build_world(params, seed)


def test_all_ids_resolve():
    for sid in SCENARIO_IDS:
        assert make_scenario(sid).id == sid


def test_unknown_id_rejected():
    with pytest.raises(ValueError):
        make_scenario("quarantine")


def test_masks_overrides():
    p = make_scenario("masks")
    assert p.contagion_distance_override == 0.5
    assert p.contagion_probability_override == 0.3
    assert p.isolation_level == 0.0 or p.isolation_kind is IsolationKind.NONE
    assert not p.lockdown_restrictions


def test_lockdown_mobility_override():
    p = make_scenario("lockdown")
    assert p.mobility_override == 1.0
    assert p.lockdown_restrictions
    assert p.trigger is Trigger.ALWAYS


def test_baseline_seeds_nothing():
    p = make_scenario("baseline")
    assert not p.seeds_epidemic
    eff = params_for(p, Parameters())
    assert eff.initial_infected_rate == 0.0
    assert eff.initial_immune_rate == 1.0


def test_conditional_threshold():
    p = make_scenario("conditional-lockdown")
    assert p.trigger is Trigger.INFECTED_THRESHOLD
    assert p.threshold == 0.05


def test_partial_default_level_and_override():
    assert make_scenario("partial").isolation_level == 0.5
    assert make_scenario("partial", 0.7).isolation_level == 0.7


def test_masks_partial_composition_identities():
    mp0 = make_scenario("masks-partial", isolation_level=0.0)
    masks = make_scenario("masks")
    assert mp0.contagion_distance_override == masks.contagion_distance_override
    assert (mp0.contagion_probability_override
            == masks.contagion_probability_override)
    assert mp0.isolation_level == 0.0
    # with the contagion overrides removed, what is left is partial isolation
    stripped = dataclasses.replace(
        make_scenario("masks-partial"),
        contagion_distance_override=None,
        contagion_probability_override=None,
        id="partial",
    )
    assert stripped == make_scenario("partial")


def test_policy_validation():
    with pytest.raises(ValueError):
        ScenarioPolicy(id="x", isolation_level=1.5)
    with pytest.raises(ValueError):
        ScenarioPolicy(id="x", trigger=Trigger.INFECTED_THRESHOLD,
                       threshold=0.0)


def infect_fraction(world, fraction):
    k = int(round(fraction * world.n_people))
    world.status[:k] = Status.INFECTED
    return world


def test_policy_active_threshold_crossings():
    policy = make_scenario("conditional-lockdown")
    w = infect_fraction(world_of(), 0.06)
    assert policy_active(policy, w, 1)
    w = infect_fraction(world_of(), 0.04)
    assert not policy_active(policy, w, 1)


def test_policy_active_at_exact_threshold():
    policy = make_scenario("conditional-lockdown")
    w = infect_fraction(world_of(), 0.05)
    assert policy_active(policy, w, 1)


def test_do_nothing_never_active():
    policy = make_scenario("do-nothing")
    w = infect_fraction(world_of(), 0.99)
    assert not policy_active(policy, w, 1)


def test_lockdown_always_active():
    policy = make_scenario("lockdown")
    assert policy_active(policy, world_of(), 1)


def test_tiny_threshold_locks_whenever_anyone_is_infected():
    # the conditional trigger degenerates to an unconditional lockdown as
    # the threshold approaches zero, for any nonzero infected share
    policy = dataclasses.replace(
        make_scenario("conditional-lockdown"), threshold=1e-12
    )
    w = infect_fraction(world_of(), 0.01)
    assert policy_active(policy, w, 1)
    assert not policy_active(policy, world_of(), 1)


def test_vertical_predicate():
    w = world_of()
    policy = make_scenario("vertical")
    w.age[0] = 70.0
    w.age[1] = 30.0
    w.age[2] = 12.0
    w.status[1] = Status.INFECTED
    w.severity[1] = Severity.ASYMPTOMATIC
    assert is_isolated(w, 0, policy)
    assert not is_isolated(w, 1, policy)  # mild cases circulate
    assert is_isolated(w, 2, policy)
    w.severity[1] = Severity.SEVERE
    assert is_isolated(w, 1, policy)


def test_vertical_mask_matches_predicate():
    w = world_of()
    w.status[:10] = Status.INFECTED
    w.severity[:5] = Severity.HOSPITALIZED
    policy = make_scenario("vertical")
    mask = vertical_isolation_mask(w)
    for i in range(w.n_people):
        assert mask[i] == is_isolated(w, i, policy)


def test_partial_flags_fixed_at_init():
    w = world_of(pop=4000)
    policy = make_scenario("partial", isolation_level=1.0)
    apply_initial_isolation(w, policy, np.random.default_rng(0))
    assert bool(w.isolated.all())
    policy = make_scenario("partial", isolation_level=0.5)
    apply_initial_isolation(w, policy, np.random.default_rng(0))
    frac = float(w.isolated.mean())
    assert abs(frac - 0.5) < 0.03
    snapshot = w.isolated.copy()
    for i in range(w.n_people):
        assert is_isolated(w, i, policy) == bool(snapshot[i])


def test_non_isolating_policies_flag_nobody():
    w = world_of()
    policy = make_scenario("masks")
    apply_initial_isolation(w, policy, np.random.default_rng(0))
    assert not w.isolated.any()
