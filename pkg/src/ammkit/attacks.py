"""Front-running (sandwich) simulation across curve families.

The attacker brackets a victim order with two trades of their own: buy ahead
of the victim with a fixed budget, let the victim's order push the price
further, then buy the budget back.  The attacker's in-token position ends
flat, so any profit is denominated in the out-token, and the victim's
shortfall against a quiet market is the slippage.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import curves, engine
from .errors import (
    AmmError,
    DomainError,
    InfeasibleAttack,
)


@dataclass(frozen=True)
class VictimOrder:
    token_in: int
    coins_in: float

    def __post_init__(self) -> None:
        if self.coins_in < 0:
            raise DomainError("victim order must be nonnegative")


@dataclass(frozen=True)
class FrontRunReport:
    attacker_budget: float
    attacker_bought: float
    attacker_sold: float
    attacker_profit: float
    victim_received: float
    victim_baseline: float
    victim_slippage: float

    def as_dict(self) -> dict:
        return {
            "attacker_budget": self.attacker_budget,
            "attacker_bought": self.attacker_bought,
            "attacker_sold": self.attacker_sold,
            "attacker_profit": self.attacker_profit,
            "victim_received": self.victim_received,
            "victim_baseline": self.victim_baseline,
            "victim_slippage": self.victim_slippage,
        }


@dataclass(frozen=True)
class FamilyOutcome:
    """One family's result in a comparison: a report, or the error that
    stopped the simulation."""

    family: str
    report: FrontRunReport | None
    error: str | None

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "report": self.report.as_dict() if self.report else None,
            "error": self.error,
        }


def simulate_frontrun(
    m: engine.MarketState, victim: VictimOrder, budget: float
) -> FrontRunReport:
    """Run the three-leg sandwich on a scratch copy of the market.

    Leg 1: attacker swaps `budget` coins of the victim's in-token.
    Leg 2: the victim's order executes at the shifted price.
    Leg 3: attacker buys back exactly `budget` coins of the in-token.

    The original market is never modified.
    """
    if budget < 0:
        raise DomainError("attacker budget must be nonnegative")
    token_in = victim.token_in
    baseline = engine.quote(m, token_in, victim.coins_in).coins_out
    try:
        state, front = engine.execute(m, token_in, budget)
        state, victim_fill = engine.execute(state, token_in, victim.coins_in)
        state, back = engine.execute_exact_out(state, token_in, budget)
    except AmmError as exc:
        raise InfeasibleAttack(f"sandwich leg failed: {exc}") from exc
    bought = front.coins_out
    sold = back.coins_in
    received = victim_fill.coins_out
    return FrontRunReport(
        attacker_budget=budget,
        attacker_bought=bought,
        attacker_sold=sold,
        attacker_profit=bought - sold,
        victim_received=received,
        victim_baseline=baseline,
        victim_slippage=baseline - received,
    )


def compare_families(
    specs: Sequence[curves.CurveSpec],
    deposits: Sequence[float],
    victim: VictimOrder,
    budget: float,
    scales: Sequence[float] | None = None,
) -> list[FamilyOutcome]:
    """Run the same sandwich against each curve on identical deposits.

    A family whose simulation fails is recorded with its error instead of
    aborting the comparison.
    """
    outcomes = []
    for spec in specs:
        market = engine.create_market(spec, deposits, scales)
        try:
            report = simulate_frontrun(market, victim, budget)
            outcomes.append(FamilyOutcome(family=spec.family, report=report, error=None))
        except InfeasibleAttack as exc:
            outcomes.append(FamilyOutcome(family=spec.family, report=None, error=str(exc)))
    return outcomes
