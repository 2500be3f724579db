"""Hourly movement, contact detection, contagion, and disease progression.

The per-agent functions (``routine_action``, ``apply_movement``,
``attempt_contagion``, ``draw_severity``, ``advance_disease``) state the
behavioral contract one agent at a time. The engine applies the same
rules to the whole population at once through the ``*_all`` functions;
action selection is bit-identical between the two layers (tested), while
the vectorized movement and contagion consume randomness in batched
order for speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import neighbors
from .core import Phase, Severity, Status, distance
from .scenarios import ScenarioPolicy
from .world import World


class MovementAction(Enum):
    GO_HOME = 0
    GO_TO_WORK = 1
    WALK_FREELY = 2
    GO_TO_HOSPITAL = 3
    STAY_STILL = 4


WORK_HOURS = ((8, 12), (14, 18))


def _in_work_hours(hour: int) -> bool:
    return any(lo <= hour < hi for lo, hi in WORK_HOURS)


def routine_action(world: World, i: int, hour: int,
                   policy: ScenarioPolicy | None = None,
                   active: bool = False) -> MovementAction:
    """Movement decision for one agent at one hour of the day.

    Dead agents stay still; anyone whose condition requires a hospital
    goes there regardless of hour or policy; an active lockdown or an
    isolation flag confines the housed to home while the homeless keep
    pacing nearby; otherwise the daily routine applies: rest at home
    until 8, work blocks at 8-12 and 14-18 for the employed, free
    movement at lunch and in the evening.
    """
    if world.status[i] == Status.DEAD:
        return MovementAction.STAY_STILL
    if (world.status[i] == Status.INFECTED
            and world.severity[i] >= Severity.HOSPITALIZED):
        return MovementAction.GO_TO_HOSPITAL
    homeless = world.house_idx[i] < 0
    restricted = bool(world.isolated[i]) or (
        active and policy is not None and policy.lockdown_restrictions
    )
    if restricted:
        return MovementAction.WALK_FREELY if homeless else MovementAction.GO_HOME
    if hour < 8:
        return MovementAction.WALK_FREELY if homeless else MovementAction.GO_HOME
    if _in_work_hours(hour) and world.employer_idx[i] >= 0:
        return MovementAction.GO_TO_WORK
    return MovementAction.WALK_FREELY


def apply_movement(world: World, i: int, action: MovementAction,
                   rng: np.random.Generator,
                   walk_amplitude: float | None = None) -> tuple[float, float]:
    """Execute one agent's movement and return the new position.

    Targeted moves land at the destination plus small Gaussian noise;
    free walking is a Gaussian step around the current position with the
    mobility amplitude as scale. Results are clipped to the grid. The
    dead sit at the origin.
    """
    p = world.params
    if action is MovementAction.STAY_STILL:
        world.px[i] = 0.0
        world.py[i] = 0.0
        return 0.0, 0.0
    if action is MovementAction.GO_HOME:
        tx, ty = world.hx[world.house_idx[i]], world.hy[world.house_idx[i]]
        sigma = p.position_noise
    elif action is MovementAction.GO_TO_WORK:
        tx, ty = world.bx[world.employer_idx[i]], world.by[world.employer_idx[i]]
        sigma = p.position_noise
    elif action is MovementAction.GO_TO_HOSPITAL:
        tx, ty = world.health_pos
        sigma = p.position_noise
    else:
        tx, ty = world.px[i], world.py[i]
        sigma = p.mobility_amplitude if walk_amplitude is None else walk_amplitude
    nx = tx + sigma * rng.standard_normal()
    ny = ty + sigma * rng.standard_normal()
    nx = min(max(nx, 0.0), p.height)
    ny = min(max(ny, 0.0), p.width)
    world.px[i] = nx
    world.py[i] = ny
    return nx, ny


# Integer codes mirroring MovementAction for the vectorized path.
ACTION_HOME, ACTION_WORK, ACTION_WALK, ACTION_HOSPITAL, ACTION_STILL = (
    0, 1, 2, 3, 4,
)
_HOME, _WORK, _WALK, _HOSP, _STILL = (
    ACTION_HOME, ACTION_WORK, ACTION_WALK, ACTION_HOSPITAL, ACTION_STILL,
)


def select_actions(world: World, hour: int, policy: ScenarioPolicy | None,
                   active: bool) -> np.ndarray:
    """Vectorized movement decision for the whole population. Matches
    ``routine_action`` agent for agent."""
    n = world.n_people
    homeless = world.homeless()
    if hour < 8:
        actions = np.where(homeless, _WALK, _HOME)
    elif _in_work_hours(hour):
        actions = np.where(world.employed(), _WORK, _WALK)
    else:
        actions = np.full(n, _WALK)

    restricted = world.isolated.copy()
    if active and policy is not None and policy.lockdown_restrictions:
        restricted[:] = True
    actions = np.where(restricted, np.where(homeless, _WALK, _HOME), actions)

    hosp = world.needs_hospital()
    actions = np.where(hosp, _HOSP, actions)
    actions = np.where(world.status == Status.DEAD, _STILL, actions)
    return actions.astype(np.int8)


def move_all(world: World, actions: np.ndarray, rng: np.random.Generator,
             mobility_amplitude: float) -> None:
    """Apply one hour of movement to every agent at once.

    One batched normal draw per tick keeps stream consumption in fixed
    program order. Isolated walkers (the homeless under restrictions)
    pace with unit amplitude, matching the per-agent contract.
    """
    p = world.params
    n = world.n_people
    hx_of = world.hx[np.maximum(world.house_idx, 0)]
    hy_of = world.hy[np.maximum(world.house_idx, 0)]
    bx_of = world.bx[np.maximum(world.employer_idx, 0)]
    by_of = world.by[np.maximum(world.employer_idx, 0)]

    tx = world.px.copy()
    ty = world.py.copy()
    np.copyto(tx, hx_of, where=actions == _HOME)
    np.copyto(ty, hy_of, where=actions == _HOME)
    np.copyto(tx, bx_of, where=actions == _WORK)
    np.copyto(ty, by_of, where=actions == _WORK)
    tx[actions == _HOSP] = world.health_pos[0]
    ty[actions == _HOSP] = world.health_pos[1]

    sigma = np.full(n, p.position_noise)
    walk_amp = np.where(world.isolated, 1.0, mobility_amplitude)
    walking = actions == _WALK
    sigma[walking] = walk_amp[walking]
    sigma[actions == _STILL] = 0.0

    noise = rng.standard_normal((n, 2))
    nx = np.clip(tx + sigma * noise[:, 0], 0.0, p.height)
    ny = np.clip(ty + sigma * noise[:, 1], 0.0, p.width)
    still = actions == _STILL
    nx[still] = 0.0
    ny[still] = 0.0
    world.px = nx
    world.py = ny


# Contact detection ------------------------------------------------------

PERSON = "A1"
BUSINESS = "A3"


def find_contacts(world: World, delta: float) -> set:
    """Every contact pair at threshold ``delta``: unordered person-person
    pairs and person-business pairs, excluding dead agents. Uses the grid
    kernels; ``naive_find_contacts`` is the reference scan."""
    alive = np.flatnonzero(world.alive())
    pairs = set()
    pp = neighbors.grid_pairs(world.px[alive], world.py[alive], delta,
                              force_grid=True)
    for a, b in pp:
        pairs.add(((PERSON, int(alive[a])), (PERSON, int(alive[b]))))
    pb = neighbors.grid_pairs_between(
        world.px[alive], world.py[alive], world.bx, world.by, delta,
        force_grid=True,
    )
    for a, b in pb:
        pairs.add(((PERSON, int(alive[a])), (BUSINESS, int(b))))
    return pairs


def naive_find_contacts(world: World, delta: float) -> set:
    """Reference O(n^2) contact scan over the same agents, written without
    the grid machinery."""
    alive = [int(i) for i in np.flatnonzero(world.alive())]
    pairs = set()
    for ai in range(len(alive)):
        i = alive[ai]
        pi = (float(world.px[i]), float(world.py[i]))
        for aj in range(ai + 1, len(alive)):
            j = alive[aj]
            if distance(pi, (world.px[j], world.py[j])) <= delta:
                pairs.add(((PERSON, i), (PERSON, j)))
        for b in range(world.n_businesses):
            if distance(pi, (world.bx[b], world.by[b])) <= delta:
                pairs.add(((PERSON, i), (BUSINESS, b)))
    return pairs


# Contagion --------------------------------------------------------------

def attempt_contagion(world: World, i: int, j: int, probability: float,
                      rng: np.random.Generator) -> bool:
    """Resolve one contact between two people. Transmission happens only
    from a contagious-phase agent to a susceptible one, with the given
    probability; incubating and post-contagious agents do not transmit.
    Returns True when a new infection occurred."""
    si, sj = world.status[i], world.status[j]
    ci = si == Status.INFECTED and world.phase[i] == Phase.CONTAGIOUS
    cj = sj == Status.INFECTED and world.phase[j] == Phase.CONTAGIOUS
    if ci and sj == Status.SUSCEPTIBLE:
        target = j
    elif cj and si == Status.SUSCEPTIBLE:
        target = i
    else:
        return False
    if probability <= 0.0 or rng.random() >= probability:
        return False
    _infect(world, np.array([target]), rng)
    return True


def _infect(world: World, targets: np.ndarray, rng: np.random.Generator) -> None:
    p = world.params
    k = len(targets)
    world.status[targets] = Status.INFECTED
    world.phase[targets] = Phase.INCUBATING
    world.severity[targets] = Severity.UNASSIGNED
    world.infection_day[targets] = world.day
    world.incubation_len[targets] = rng.integers(
        p.incubation_days_min, p.incubation_days_max + 1, k
    )
    world.contagious_len[targets] = rng.integers(
        p.transmission_days_min, p.transmission_days_max + 1, k
    )


def co_shopper_pairs(contact_pairs: np.ndarray) -> np.ndarray:
    """Person-person pairs of customers sharing a business this hour.

    Input is (person, business) contact pairs; output is every unordered
    pair of distinct persons appearing with the same business. A pair of
    people jointly visiting two businesses yields two entries, one
    encounter opportunity per venue.
    """
    if len(contact_pairs) < 2:
        return np.empty((0, 2), dtype=np.int64)
    order = np.argsort(contact_pairs[:, 1], kind="stable")
    people = contact_pairs[order, 0]
    sellers = contact_pairs[order, 1]
    boundaries = np.flatnonzero(np.diff(sellers)) + 1
    starts = np.concatenate(([0], boundaries))
    counts = np.diff(np.concatenate((starts, [len(sellers)])))
    chunks = []
    for c in np.unique(counts):
        if c < 2:
            continue
        seg_starts = starts[counts == c]
        a, b = np.triu_indices(int(c), k=1)
        ia = people[(seg_starts[:, None] + a[None, :]).ravel()]
        ib = people[(seg_starts[:, None] + b[None, :]).ravel()]
        chunks.append(np.stack([ia, ib], axis=1))
    if not chunks:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(chunks, axis=0)


def spread_all(world: World, pairs: np.ndarray, probability: float,
               rng: np.random.Generator) -> int:
    """Resolve contagion over a batch of person-person contact pairs.

    Each qualifying pair is an independent exposure with the given
    probability; a susceptible agent touched by several contagious agents
    in the same hour is infected if any exposure fires. Matches
    sequential pair-by-pair resolution because infection is idempotent
    within the hour and new infections start incubating (non-transmitting).
    """
    if probability <= 0.0 or len(pairs) == 0:
        return 0
    a = pairs[:, 0]
    b = pairs[:, 1]
    contagious = (world.status == Status.INFECTED) & (
        world.phase == Phase.CONTAGIOUS
    )
    susceptible = world.status == Status.SUSCEPTIBLE
    a_to_b = contagious[a] & susceptible[b]
    b_to_a = contagious[b] & susceptible[a]
    cand = a_to_b | b_to_a
    if not cand.any():
        return 0
    targets = np.where(a_to_b[cand], b[cand], a[cand])
    draws = rng.random(len(targets))
    hit = np.unique(targets[draws < probability])
    if len(hit):
        _infect(world, hit, rng)
    return len(hit)


# Severity and disease progression ----------------------------------------

def age_bracket(age: float) -> int:
    """Decade bracket index 0..8; ages 80 and over share the last one."""
    return min(int(age // 10), 8)


def draw_severity(age: float, hospitalization_rates, severe_rates,
                  rng: np.random.Generator) -> Severity:
    """Draw a medical condition for one agent: hospitalized with the
    age-bracket rate, severe with the conditional severe rate, otherwise
    asymptomatic. Always consumes two uniforms."""
    b = age_bracket(age)
    u_hosp = rng.random()
    u_sev = rng.random()
    if u_hosp < hospitalization_rates[b]:
        if u_sev < severe_rates[b]:
            return Severity.SEVERE
        return Severity.HOSPITALIZED
    return Severity.ASYMPTOMATIC


def _draw_severity_batch(world: World, idx: np.ndarray,
                         rng: np.random.Generator) -> np.ndarray:
    p = world.params
    br = np.minimum((world.age[idx] // 10).astype(np.int64), 8)
    hosp = np.asarray(p.hospitalization_rates)[br]
    sev = np.asarray(p.severe_rates)[br]
    u = rng.random((len(idx), 2))
    out = np.full(len(idx), Severity.ASYMPTOMATIC, dtype=np.int8)
    hit = u[:, 0] < hosp
    out[hit] = np.where(u[hit, 1] < sev[hit], Severity.SEVERE,
                        Severity.HOSPITALIZED)
    return out


@dataclass
class HospitalLedger:
    """Bed occupancy for one day: capacity and who holds a bed."""

    capacity: int
    admitted: np.ndarray   # person indices, at most ``capacity`` of them


def update_hospital_capacity(world: World) -> HospitalLedger:
    """Recompute daily admissions.

    Capacity is the critical-limit share of the population, floored.
    Those needing care are ranked severe first, then by earlier infection
    day, then by agent index; the ranking fills the beds and everyone
    left over is flagged unserved, stickily.
    """
    p = world.params
    capacity = int(p.critical_limit * p.population_size)
    need = np.flatnonzero(world.needs_hospital())
    world.admitted[:] = False
    if len(need) == 0:
        return HospitalLedger(capacity, need)
    order = np.lexsort((
        need,
        world.infection_day[need],
        -world.severity[need].astype(np.int64),
    ))
    ranked = need[order]
    taken = ranked[:capacity]
    world.admitted[taken] = True
    world.unserved[ranked[capacity:]] = True
    return HospitalLedger(capacity, taken)


def advance_disease(world: World, i: int, current_day: int,
                    rng: np.random.Generator) -> None:
    """One day of disease progression for one infected agent.

    At the end of incubation the agent turns contagious and a condition
    is drawn. While contagious, an agent who is not yet severe re-draws
    daily so the condition can escalate (never improve). After the
    transmission window the agent stays infected but no longer spreads.
    At the recovery horizon a terminal draw resolves the infection: death
    with the age-bracket fatality rate, multiplied by the capacity
    penalty (capped at certainty) if the agent ever went unserved,
    recovery otherwise.
    """
    p = world.params
    if world.status[i] != Status.INFECTED:
        return
    since = current_day - world.infection_day[i]
    if since >= p.recovering_days:
        b = age_bracket(world.age[i])
        rate = p.fatality_rates[b]
        if world.unserved[i]:
            rate = min(rate * p.capacity_fatality_multiplier, 1.0)
        if rng.random() < rate:
            world.status[i] = Status.DEAD
            world.px[i] = 0.0
            world.py[i] = 0.0
        else:
            world.status[i] = Status.RECOVERED
        world.admitted[i] = False
        return
    if world.phase[i] == Phase.CONTAGIOUS and (
            world.severity[i] < Severity.SEVERE):
        redraw = draw_severity(
            world.age[i], p.hospitalization_rates, p.severe_rates, rng
        )
        world.severity[i] = max(world.severity[i], redraw)
    if world.phase[i] == Phase.INCUBATING and since >= world.incubation_len[i]:
        world.phase[i] = Phase.CONTAGIOUS
        world.severity[i] = draw_severity(
            world.age[i], p.hospitalization_rates, p.severe_rates, rng
        )
    elif world.phase[i] == Phase.CONTAGIOUS and (
            since >= world.incubation_len[i] + world.contagious_len[i]):
        world.phase[i] = Phase.POST_CONTAGIOUS
    return


def advance_all_disease(world: World, rng: np.random.Generator) -> None:
    """Daily disease progression, whole population at once.

    Order matters and mirrors the per-agent contract: terminal
    resolutions first, then escalation re-draws for agents already
    contagious, then incubation-to-contagious flips with the first
    condition draw, then transmission-window expiry.
    """
    p = world.params
    day = world.day
    infected = world.status == Status.INFECTED
    if not infected.any():
        return
    since = day - world.infection_day

    terminal = np.flatnonzero(infected & (since >= p.recovering_days))
    if len(terminal):
        br = np.minimum((world.age[terminal] // 10).astype(np.int64), 8)
        rate = np.asarray(p.fatality_rates)[br]
        rate = np.where(
            world.unserved[terminal],
            np.minimum(rate * p.capacity_fatality_multiplier, 1.0),
            rate,
        )
        dies = rng.random(len(terminal)) < rate
        dead = terminal[dies]
        world.status[dead] = Status.DEAD
        world.px[dead] = 0.0
        world.py[dead] = 0.0
        world.status[terminal[~dies]] = Status.RECOVERED
        world.admitted[terminal] = False
        infected = world.status == Status.INFECTED

    escalate = np.flatnonzero(
        infected
        & (world.phase == Phase.CONTAGIOUS)
        & (world.severity < Severity.SEVERE)
    )
    if len(escalate):
        redraw = _draw_severity_batch(world, escalate, rng)
        world.severity[escalate] = np.maximum(world.severity[escalate], redraw)

    flip = np.flatnonzero(
        infected
        & (world.phase == Phase.INCUBATING)
        & (since >= world.incubation_len)
    )
    if len(flip):
        world.phase[flip] = Phase.CONTAGIOUS
        world.severity[flip] = _draw_severity_batch(world, flip, rng)

    done = (
        infected
        & (world.phase == Phase.CONTAGIOUS)
        & (since >= world.incubation_len.astype(np.int64)
           + world.contagious_len.astype(np.int64))
    )
    done[flip] = False
    world.phase[np.flatnonzero(done)] = Phase.POST_CONTAGIOUS
