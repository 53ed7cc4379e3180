"""Market lifecycle: creation, quoting, execution, and liquidity rebase.

The engine stores reserves as internal shares plus a per-token scale factor
(coins per share).  Coins exist only at the interface boundary; the curve
math always sees shares.  That split is what makes the rebase procedure
possible: changing a token's scale re-maps shares to coins without touching
the curve, and a deposit tops the pool up to the symmetric target state.

States are immutable snapshots; execute and apply_rebase return new states.
Trading operations are two-token.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

from . import curves, solver
from .errors import (
    CostDrift,
    DomainError,
    GeometryError,
    NegativeReserveRejected,
    StalePlan,
)

# Post-trade drift allowed between the cached cost value and a recomputation.
COST_DRIFT_TOL = 1e-9


@dataclass(frozen=True)
class MarketState:
    spec: curves.CurveSpec
    shares: tuple[float, ...]
    scales: tuple[float, ...]
    cost_value: float

    def coins(self, token: int) -> float:
        """Coins currently held for one token (shares times scale)."""
        return self.shares[token] * self.scales[token]


@dataclass(frozen=True)
class TradeReceipt:
    """Record of one swap, in both coin and share units."""

    token_in: int
    token_out: int
    coins_in: float
    coins_out: float
    shares_in: float
    shares_out: float
    cost_before: float
    cost_after: float
    average_price: float | None  # coins_in / coins_out; None for a zero payout

    def as_dict(self) -> dict:
        return {
            "token_in": self.token_in,
            "token_out": self.token_out,
            "coins_in": self.coins_in,
            "coins_out": self.coins_out,
            "shares_in": self.shares_in,
            "shares_out": self.shares_out,
            "cost_before": self.cost_before,
            "cost_after": self.cost_after,
            "average_price": self.average_price,
        }


@dataclass(frozen=True)
class RebasePlan:
    """A pending rebase: target shares, new scales, and the required deposit.

    basis_shares snapshots the state the plan was computed against so a stale
    plan is refused at apply time.
    """

    target_shares: tuple[float, ...]
    new_scales: tuple[float, ...]
    deposit_coins: tuple[float, ...]
    basis_shares: tuple[float, ...]

    def as_dict(self) -> dict:
        return {
            "target_shares": list(self.target_shares),
            "new_scales": list(self.new_scales),
            "deposit_coins": list(self.deposit_coins),
        }


def create_market(
    spec: curves.CurveSpec,
    coin_deposits: Sequence[float],
    scales: Sequence[float] | None = None,
) -> MarketState:
    """Open a market by depositing coins; shares are deposits divided by scales."""
    deposits = tuple(float(c) for c in coin_deposits)
    if len(deposits) < 2:
        raise DomainError("a market needs at least two tokens")
    if any(not c > 0 for c in deposits):
        raise DomainError("every initial deposit must be strictly positive")
    if scales is None:
        sc = (1.0,) * len(deposits)
    else:
        sc = tuple(float(s) for s in scales)
    if len(sc) != len(deposits):
        raise DomainError("scales length must match deposits length")
    if any(not s > 0 for s in sc):
        raise DomainError("scales must be strictly positive")
    shares = tuple(c / s for c, s in zip(deposits, sc))
    cost_value = curves.cost(spec, shares)
    if spec.family == curves.ELLIPSE:
        _check_ellipse_geometry(spec, shares, cost_value)
    return MarketState(spec=spec, shares=shares, scales=sc, cost_value=cost_value)


def _check_ellipse_geometry(
    spec: curves.CurveSpec, shares: tuple[float, ...], cost_value: float
) -> None:
    """The initial state must sit on the configured arc.

    For each coordinate the quadratic in the other coordinate has two roots;
    the lower arc is where the state is at or below the root midpoint in both
    coordinates, the upper arc where it is at or above.  The first-quadrant
    requirement is implied by the strictly positive deposits.
    """
    if len(shares) != 2:
        raise GeometryError("ellipse trading is two-token")
    for i in (0, 1):
        other = 1 - i
        mid = 0.5 * (2.0 * spec.center_a - spec.cross_b * shares[i])
        eps = 1e-9 * max(1.0, abs(mid))
        below = shares[other] <= mid + eps
        above = shares[other] >= mid - eps
        if spec.branch == curves.CONVEX_LOWER and not below:
            raise GeometryError("initial state is not on the lower (convex) arc")
        if spec.branch == curves.CONCAVE_UPPER and not above:
            raise GeometryError("initial state is not on the upper (concave) arc")


def _require_pair(m: MarketState) -> None:
    if len(m.shares) != 2:
        raise DomainError("trading operations are two-token")


def _receipt(m, token_in, token_out, shares_in, shares_out) -> TradeReceipt:
    coins_in = shares_in * m.scales[token_in]
    coins_out = shares_out * m.scales[token_out]
    new_shares = _apply_shares(m, token_in, token_out, shares_in, shares_out)
    cost_after = curves.cost(m.spec, new_shares)
    return TradeReceipt(
        token_in=token_in,
        token_out=token_out,
        coins_in=coins_in,
        coins_out=coins_out,
        shares_in=shares_in,
        shares_out=shares_out,
        cost_before=m.cost_value,
        cost_after=cost_after,
        average_price=(coins_in / coins_out) if coins_out > 0 else None,
    )


def _apply_shares(m, token_in, token_out, shares_in, shares_out) -> tuple[float, ...]:
    out = list(m.shares)
    out[token_in] += shares_in
    out[token_out] -= shares_out
    return tuple(out)


def quote(
    m: MarketState,
    token_in: int,
    coins_in: float,
    cfg: solver.SolverConfig = solver.DEFAULT_CONFIG,
) -> TradeReceipt:
    """Preview a swap of coins_in without touching the market."""
    _require_pair(m)
    if token_in not in (0, 1):
        raise DomainError(f"token index {token_in} out of range")
    if not (math.isfinite(coins_in) and coins_in >= 0):
        raise DomainError("coins_in must be finite and nonnegative")
    token_out = 1 - token_in
    shares_in = coins_in / m.scales[token_in]
    problem = solver.SwapProblem(
        spec=m.spec, q=m.shares, token_in=token_in, token_out=token_out, amount_in=shares_in
    )
    shares_out = solver.swap_exact_in(problem, cfg)
    return _receipt(m, token_in, token_out, shares_in, shares_out)


def quote_exact_out(
    m: MarketState,
    token_out: int,
    coins_out: float,
    cfg: solver.SolverConfig = solver.DEFAULT_CONFIG,
) -> TradeReceipt:
    """Preview the payment needed for an exact payout (the back-run primitive)."""
    _require_pair(m)
    if token_out not in (0, 1):
        raise DomainError(f"token index {token_out} out of range")
    if not (math.isfinite(coins_out) and coins_out >= 0):
        raise DomainError("coins_out must be finite and nonnegative")
    token_in = 1 - token_out
    shares_out = coins_out / m.scales[token_out]
    problem = solver.SwapProblem(
        spec=m.spec, q=m.shares, token_in=token_in, token_out=token_out, amount_out=shares_out
    )
    shares_in = solver.swap_exact_out(problem, cfg)
    return _receipt(m, token_in, token_out, shares_in, shares_out)


def _commit(m: MarketState, receipt: TradeReceipt) -> tuple[MarketState, TradeReceipt]:
    new_shares = _apply_shares(
        m, receipt.token_in, receipt.token_out, receipt.shares_in, receipt.shares_out
    )
    if any(s < 0 for s in new_shares):
        raise NegativeReserveRejected("trade would leave a negative reserve")
    if abs(receipt.cost_after - m.cost_value) > COST_DRIFT_TOL * max(1.0, abs(m.cost_value)):
        raise CostDrift(
            f"cost moved from {m.cost_value!r} to {receipt.cost_after!r} in one trade"
        )
    return replace(m, shares=new_shares), receipt


def execute(
    m: MarketState,
    token_in: int,
    coins_in: float,
    cfg: solver.SolverConfig = solver.DEFAULT_CONFIG,
) -> tuple[MarketState, TradeReceipt]:
    """Apply a swap of coins_in; returns the new state and its receipt."""
    return _commit(m, quote(m, token_in, coins_in, cfg))


def execute_exact_out(
    m: MarketState,
    token_out: int,
    coins_out: float,
    cfg: solver.SolverConfig = solver.DEFAULT_CONFIG,
) -> tuple[MarketState, TradeReceipt]:
    """Apply a swap that pays out exactly coins_out."""
    return _commit(m, quote_exact_out(m, token_out, coins_out, cfg))


def plan_rebase(m: MarketState, token: int, reference_price_ratio: float) -> RebasePlan:
    """Plan the liquidity top-up that symmetrizes the pool around one token.

    The named token is the deficient one.  Its share count is raised to match
    the other token's, and its scale is reset to

        new_scale = P_other(q) / (R * P_token(q))

    where R = reference_price_ratio is the external market rate in coins of
    the other token per coin of the rebased token.  The other token keeps its
    scale: the numeraire is never touched.  deposit_coins is what the patron
    must add; a plan that would extract funds is refused.
    """
    _require_pair(m)
    if token not in (0, 1):
        raise DomainError(f"token index {token} out of range")
    if not reference_price_ratio > 0:
        raise DomainError("reference_price_ratio must be positive")
    other = 1 - token
    g = curves.gradient(m.spec, m.shares)
    if g[token] == 0.0:
        raise DomainError("rebased token has zero marginal price")
    new_scale = g[other] / (reference_price_ratio * g[token])
    if not new_scale > 0:
        raise DomainError("price signs disagree; no positive scale exists")
    target = m.shares[other]
    target_shares = tuple(target if i == token else m.shares[i] for i in (0, 1))
    deposit = new_scale * target - m.coins(token)
    if abs(deposit) <= 1e-9 * max(1.0, m.coins(token)):
        deposit = 0.0
    if deposit < 0.0:
        raise DomainError("rebase would extract funds; token is not deficient")
    deposits = tuple(deposit if i == token else 0.0 for i in (0, 1))
    new_scales = tuple(new_scale if i == token else m.scales[i] for i in (0, 1))
    return RebasePlan(
        target_shares=target_shares,
        new_scales=new_scales,
        deposit_coins=deposits,
        basis_shares=m.shares,
    )


def apply_rebase(m: MarketState, plan: RebasePlan) -> MarketState:
    """Apply a plan made against the market's current state."""
    if plan.basis_shares != m.shares:
        raise StalePlan("market state changed since the plan was generated")
    cost_value = curves.cost(m.spec, plan.target_shares)
    return MarketState(
        spec=m.spec,
        shares=plan.target_shares,
        scales=plan.new_scales,
        cost_value=cost_value,
    )
