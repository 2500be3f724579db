"""Wealth transfers. Every operation moves money between agents, never
creates or destroys it, so total wealth is invariant over a run.

Three cadences:

* hourly: shoppers out walking buy from businesses in range
* daily: homemate check-ins fund the household, fixed expenses accrue
  (households escrow theirs for month-end supplier payment, businesses
  pay theirs to a random peer immediately)
* monthly: taxes, wages, household supplier payments, healthcare
  funding, welfare aid

Monthly accounting lands on the 30th simulated day of each month, i.e.
every 720 hourly ticks.
"""

from __future__ import annotations

import numpy as np

from .world import World

HOURS_PER_MONTH = 720
DAYS_PER_MONTH = 30


def spend_amount(params, stratum: int) -> float:
    """Money one shopper of the given stratum hands over per business
    contact: the hourly slice of the monthly minimum expense, scaled by
    the spending factor and the stratum's income ratio to the middle
    class."""
    return (
        params.spend_per_contact_factor
        * (params.minimum_expense / HOURS_PER_MONTH)
        * params.income_ratio_to_middle(stratum)
    )


def salary_amount(params, stratum: int) -> float:
    """Monthly wage for an employee of the given stratum: the minimum
    income scaled by the stratum's income ratio to the bottom quintile,
    times the wage calibration scale."""
    return (
        params.salary_scale
        * params.minimum_income
        * params.income_ratio_to_bottom(stratum)
    )


def house_daily_expense(params, living_members: int, stratum: int) -> float:
    """A household's fixed daily expense: each living member owes the
    daily slice of the minimum expense at the household's stratum ratio."""
    return (
        living_members
        * params.minimum_expense
        * params.income_ratio_to_middle(stratum)
        / DAYS_PER_MONTH
    )


def business_daily_expense(params, living_employees: int, stratum: int) -> float:
    return (
        living_employees
        * params.minimum_expense
        * params.income_ratio_to_middle(stratum)
        / DAYS_PER_MONTH
    )


def business_contact(world: World, buyer: int, seller: int) -> float:
    """One purchase: the buyer pays the stratum-scaled amount to the
    business, drawing from personal wealth first and the household's
    wealth for any remainder. If the two together cannot cover the full
    amount, nothing moves. Returns the amount transferred."""
    params = world.params
    amount = spend_amount(params, int(world.stratum[buyer]))
    personal = float(world.person_wealth[buyer])
    h = int(world.house_idx[buyer])
    house_funds = float(world.house_wealth[h]) if h >= 0 else 0.0
    if personal + house_funds < amount or amount <= 0.0:
        return 0.0
    from_personal = min(personal, amount)
    world.person_wealth[buyer] = personal - from_personal
    rest = amount - from_personal
    if rest > 0.0:
        world.house_wealth[h] = house_funds - rest
    world.business_wealth[seller] += amount
    world.business_income_accum[seller] += amount
    return amount


def resolve_purchases(world: World, pairs: np.ndarray) -> float:
    """Apply a batch of buyer-business contacts in canonical pair order.

    The common cases settle vectorized: buyers whose personal wealth
    covers everything they owe this hour, and buyers whose household can
    absorb every member's shortfall at once. Only buyers競 competing for
    the last of a nearly empty household purse fall back to sequential
    resolution, so the outcome is exactly what repeated
    ``business_contact`` calls in pair order would produce.
    """
    if len(pairs) == 0:
        return 0.0
    params = world.params
    buyers = pairs[:, 0]
    sellers = pairs[:, 1]
    amounts = (
        params.spend_per_contact_factor
        * (params.minimum_expense / HOURS_PER_MONTH)
        * np.asarray(params.income_shares)[world.stratum[buyers] - 1]
        / params.income_shares[2]
    )
    owed = np.zeros(world.n_people)
    np.add.at(owed, buyers, amounts)

    personal = world.person_wealth
    shortfall_per_buyer = np.maximum(owed - personal, 0.0)
    houses = world.house_idx
    house_claim = np.zeros(world.n_houses)
    claimed = (shortfall_per_buyer > 0) & (houses >= 0) & (owed > 0)
    np.add.at(house_claim, houses[claimed], shortfall_per_buyer[claimed])

    covered_personally = personal[buyers] >= owed[buyers]
    house_ok = (houses[buyers] >= 0) & (
        world.house_wealth[np.maximum(houses[buyers], 0)]
        >= house_claim[np.maximum(houses[buyers], 0)]
    )
    easy = covered_personally | house_ok

    total = 0.0
    if easy.any():
        eb = buyers[easy]
        ea = amounts[easy]
        np.add.at(world.business_wealth, sellers[easy], ea)
        np.add.at(world.business_income_accum, sellers[easy], ea)
        total += float(ea.sum())
        # Settle each easy buyer once: personal wealth first, household
        # for the remainder.
        uniq = np.unique(eb)
        take_personal = np.minimum(personal[uniq], owed[uniq])
        world.person_wealth[uniq] -= take_personal
        rest = owed[uniq] - take_personal
        has_rest = rest > 0
        np.add.at(
            world.house_wealth, houses[uniq[has_rest]], -rest[has_rest]
        )
    hard = ~easy
    if hard.any():
        for a, b in pairs[hard]:
            total += business_contact(world, int(a), int(b))
    return total


def daily_expenses(world: World, rng: np.random.Generator) -> None:
    """One day of fixed costs.

    Homemates first transfer their equal share of the household's daily
    expense from personal wealth into the house (clipped at what they
    have; people do not go into debt). The house then accrues the full
    expense into its supplier escrow, and each business pays its own
    daily expense straight to a uniformly chosen business. Houses and
    businesses may go negative: that is debt, not money destruction.
    """
    params = world.params
    ratio = (np.asarray(params.income_shares) / params.income_shares[2])

    members = world.living_members_per_house()
    house_exp = (
        members * params.minimum_expense
        * ratio[world.house_stratum - 1] / DAYS_PER_MONTH
    )

    # Homemate check-in: per-member share, clipped at personal wealth.
    alive_housed = world.alive() & ~world.homeless()
    idx = np.flatnonzero(alive_housed)
    if len(idx):
        share = (
            params.minimum_expense
            * ratio[world.house_stratum[world.house_idx[idx]] - 1]
            / DAYS_PER_MONTH
        )
        paid = np.minimum(share, world.person_wealth[idx])
        world.person_wealth[idx] -= paid
        np.add.at(world.house_wealth, world.house_idx[idx], paid)
        np.add.at(world.house_income_accum, world.house_idx[idx], paid)

    # House fixed expense, escrowed for the month-end supplier payment.
    world.house_wealth -= house_exp
    world.house_supplier_escrow += house_exp

    # Business fixed expense, paid immediately to a random peer.
    employees = world.living_employees_per_business()
    biz_exp = (
        employees * params.minimum_expense
        * ratio[world.business_stratum - 1] / DAYS_PER_MONTH
    )
    dest = rng.integers(0, world.n_businesses, world.n_businesses)
    world.business_wealth -= biz_exp
    np.add.at(world.business_wealth, dest, biz_exp)
    np.add.at(world.business_income_accum, dest, biz_exp)


def monthly_accounting(world: World, rng: np.random.Generator) -> None:
    """Month-end settlement, in fixed order: taxes on gross income, wages,
    household supplier payments, healthcare funding, welfare aid."""
    params = world.params

    # 1. Taxes on the month's gross income, then reset the accumulators.
    house_tax = params.tax_rate * world.house_income_accum
    world.house_wealth -= house_tax
    world.gov_wealth += float(house_tax.sum())
    world.house_income_accum[:] = 0.0
    biz_tax = params.tax_rate * world.business_income_accum
    world.business_wealth -= biz_tax
    world.gov_wealth += float(biz_tax.sum())
    world.business_income_accum[:] = 0.0

    # 2. Wages to every living employee.
    workers = np.flatnonzero(world.alive() & world.employed())
    if len(workers):
        pay = (
            params.salary_scale * params.minimum_income
            * np.asarray(params.income_shares)[world.stratum[workers] - 1]
            / params.income_shares[0]
        )
        world.person_wealth[workers] += pay
        np.add.at(world.business_wealth, world.employer_idx[workers], -pay)

    # 3. Household supplier payments: the escrowed expenses go to one
    # uniformly chosen business per house.
    dest = rng.integers(0, world.n_businesses, world.n_houses)
    np.add.at(world.business_wealth, dest, world.house_supplier_escrow)
    np.add.at(world.business_income_accum, dest, world.house_supplier_escrow)
    world.house_supplier_escrow[:] = 0.0

    # 4. Government funds the healthcare system: fixed expense plus the
    # month's bed occupancy cost.
    health_bill = (
        params.healthcare_fixed_expense
        + params.hospital_cost_per_patient_day * world.monthly_patient_days
    )
    world.gov_wealth -= health_bill
    world.health_wealth += health_bill
    world.monthly_patient_days = 0

    # 5. Aid to the unemployed working-age and the homeless.
    aided = np.flatnonzero(
        world.alive() & (world.homeless() | (world.eap() & ~world.employed()))
    )
    if len(aided):
        world.person_wealth[aided] += params.minimum_income
        world.gov_wealth -= params.minimum_income * len(aided)
