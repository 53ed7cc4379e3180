"""Derived quantities: price-ratio intervals, locus sampling, scoring rules.

profile() condenses a two-token market into its cost level and the closed
interval of attainable price ratios (and tangent slopes) along the trading
locus.  Interval ends that are open or unbounded are explicit string markers,
never sentinel floats: "0+", "0-", "inf", "-inf".

sample_curve() walks a constant-cost locus on a uniform x grid for export,
and the scoring-rule helpers cover the reward and expected-profit formulas
used to reason about market-maker subsidies.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Sequence, Union

from . import curves, engine, solver
from .errors import DomainError, SingularSlope

ZERO_PLUS = "0+"
ZERO_MINUS = "0-"
INF = "inf"
NEG_INF = "-inf"

Endpoint = Union[float, str]

_NEGATE = {ZERO_PLUS: ZERO_MINUS, ZERO_MINUS: ZERO_PLUS, INF: NEG_INF, NEG_INF: INF}

# On-locus tolerance for sampled points, relative to max(1, |cost|).
LOCUS_TOL = 1e-9


def negate_endpoint(e: Endpoint) -> Endpoint:
    if isinstance(e, str):
        return _NEGATE[e]
    return -e


def _endpoint_key(e: Endpoint) -> float:
    if e == ZERO_PLUS or e == NEG_INF:
        return -math.inf
    if e == INF or e == ZERO_MINUS:
        return math.inf
    return float(e)  # type: ignore[arg-type]


@dataclass(frozen=True)
class MarketProfile:
    """Cost level plus ratio and slope intervals for one market."""

    market_cost: float
    ratio_interval: tuple[Endpoint, Endpoint]
    slope_interval: tuple[Endpoint, Endpoint]

    def as_dict(self) -> dict:
        return {
            "market_cost": self.market_cost,
            "ratio_interval": list(self.ratio_interval),
            "slope_interval": list(self.slope_interval),
        }


@dataclass(frozen=True)
class CurveSample:
    """Ordered (x, y) points on one constant-cost locus."""

    points: tuple[tuple[float, float], ...]
    cost_value: float

    def to_csv(self, path: str) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "y"])
            for x, y in self.points:
                writer.writerow([format(x, ".12g"), format(y, ".12g")])


@dataclass(frozen=True)
class ProbabilityEstimate:
    """A finite probability vector; validated on construction."""

    p: tuple[float, ...]

    def __post_init__(self) -> None:
        pt = tuple(float(v) for v in self.p)
        object.__setattr__(self, "p", pt)
        if len(pt) < 2:
            raise DomainError("a probability estimate needs at least two outcomes")
        if any(v < 0 for v in pt):
            raise DomainError("probabilities must be nonnegative")
        if abs(math.fsum(pt) - 1.0) > 1e-12:
            raise DomainError("probabilities must sum to 1")


def _ratio_at(spec: curves.CurveSpec, state: Sequence[float]) -> Endpoint:
    """price_ratio with under/overflow mapped to interval markers."""
    try:
        r = curves.price_ratio(spec, state)
    except SingularSlope:
        return INF
    if r == 0.0:
        return ZERO_PLUS
    return r


def _drained_state(m: engine.MarketState, token_out: int) -> tuple[float, float]:
    """The locus endpoint where token_out's reserve is exactly zero."""
    token_in = 1 - token_out
    problem = solver.SwapProblem(
        spec=m.spec,
        q=m.shares,  # type: ignore[arg-type]
        token_in=token_in,
        token_out=token_out,
        amount_out=m.shares[token_out],
    )
    paid = solver.swap_exact_out(problem)
    state = [0.0, 0.0]
    state[token_in] = m.shares[token_in] + paid
    state[token_out] = 0.0
    return (state[0], state[1])


def profile(m: engine.MarketState) -> MarketProfile:
    """Cost level and price-ratio/slope intervals of a two-token market.

    Ratio intervals come from evaluating the ratio at the two axis endpoints
    of the locus, found by draining each reserve in turn; the ratio is
    monotone along the locus for every supported family, so the endpoints
    are the extremes.  Families whose ratio is unbounded report the open
    interval (0+, inf); the constant-sum ratio is the single point 1.
    """
    if len(m.shares) != 2:
        raise DomainError("profiles are two-token")
    fam = m.spec.family
    if fam in (curves.CONSTANT_PRODUCT, curves.CONSTANT_MEAN):
        ratio: tuple[Endpoint, Endpoint] = (ZERO_PLUS, INF)
    elif fam == curves.CONSTANT_SUM:
        ratio = (1.0, 1.0)
    else:
        ends = [_ratio_at(m.spec, _drained_state(m, token)) for token in (0, 1)]
        ends.sort(key=_endpoint_key)
        ratio = (ends[0], ends[1])
    slope = (negate_endpoint(ratio[1]), negate_endpoint(ratio[0]))
    return MarketProfile(market_cost=m.cost_value, ratio_interval=ratio, slope_interval=slope)


def sample_curve(
    spec: curves.CurveSpec,
    cost_value: float,
    x_min: float,
    x_max: float,
    n_points: int,
    cfg: solver.SolverConfig = solver.DEFAULT_CONFIG,
) -> CurveSample:
    """Solve y on a uniform x grid so every point sits on cost = cost_value."""
    if n_points < 2:
        raise DomainError("need at least two sample points")
    if not x_max > x_min:
        raise DomainError("x_max must exceed x_min")
    tol = LOCUS_TOL * max(1.0, abs(cost_value))
    step = (x_max - x_min) / (n_points - 1)
    points = []
    for i in range(n_points):
        x = x_min + i * step
        y = solver.solve_on_locus(spec, cost_value, 0, x, cfg)
        if y < 0.0:
            # Accept an axis grazing that still sits on the locus; anything
            # further below the axis is outside the trading domain.
            if abs(curves.cost(spec, (x, 0.0)) - cost_value) <= tol:
                y = 0.0
            else:
                raise DomainError(f"x={x:g} is outside the first-quadrant locus")
        points.append((x, y))
    return CurveSample(points=tuple(points), cost_value=cost_value)


def scoring_reward(p: ProbabilityEstimate, outcome: int, b: float) -> float:
    """Reward b * ln(2 * p(outcome)) for reporting p when outcome occurs."""
    if not 0 <= outcome < len(p.p):
        raise DomainError(f"outcome index {outcome} out of range")
    value = p.p[outcome]
    if value == 0.0:
        raise DomainError("reported probability of the realized outcome is zero")
    return b * math.log(2.0 * value)


def expected_profit(p1: ProbabilityEstimate, p2: ProbabilityEstimate, b: float) -> float:
    """Expected profit b * KL(p2 || p1) of moving the market from p1 to p2."""
    if len(p1.p) != len(p2.p):
        raise DomainError("probability estimates must share an outcome space")
    total = 0.0
    for a, c in zip(p1.p, p2.p):
        if c == 0.0:
            continue
        if a == 0.0:
            raise DomainError("p2 puts mass where p1 has none")
        total += c * math.log(c / a)
    return b * total
