"""Swap solving on constant-cost loci.

A swap adds amount_in to one reserve and removes amount_out from the other so
that the cost value is unchanged.  Five families invert in closed form; the
liquidity-sensitive LMSR has no closed inverse and is solved by bisection,
which converges unconditionally on the bracket [0, reserve_out] and exceeds
double precision well inside the default iteration budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import curves
from .errors import DomainError, InsufficientLiquidity, NoConvergence


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances for cost-level root finding.

    abs_tol bounds the post-trade cost drift relative to max(1, |C|).
    drain_tol is the looser slack used only to accept a trade that empties the
    out-token reserve exactly: requests whose exact root overshoots the
    reserve by a cost residual within drain_tol * max(1, |C|) execute as a
    full drain instead of failing.
    """

    abs_tol: float = 1e-12
    max_iter: int = 200
    drain_tol: float = 1e-8

    def __post_init__(self) -> None:
        if not self.abs_tol > 0:
            raise DomainError("abs_tol must be positive")
        if self.max_iter < 1:
            raise DomainError("max_iter must be at least 1")
        if not self.drain_tol >= self.abs_tol:
            raise DomainError("drain_tol must be at least abs_tol")


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class SwapProblem:
    """A two-token swap request against a fixed curve and state.

    swap_exact_in reads amount_in; swap_exact_out reads amount_out.
    """

    spec: curves.CurveSpec
    q: tuple[float, float]
    token_in: int
    token_out: int
    amount_in: float = 0.0
    amount_out: float = 0.0

    def __post_init__(self) -> None:
        if len(self.q) != 2:
            raise DomainError("swaps are two-token only")
        object.__setattr__(self, "q", (float(self.q[0]), float(self.q[1])))
        for t in (self.token_in, self.token_out):
            if t not in (0, 1):
                raise DomainError(f"token index {t} out of range")
        if self.token_in == self.token_out:
            raise DomainError("token_in and token_out must differ")
        if self.amount_in < 0 or self.amount_out < 0:
            raise DomainError("swap amounts must be nonnegative")


class _OffLocus(Exception):
    """Internal: the requested coordinate has no point on the locus."""


def _state(q: tuple[float, float], idx: int, value: float) -> tuple[float, float]:
    return (value, q[1]) if idx == 0 else (q[0], value)


def _partner(
    spec: curves.CurveSpec,
    k: float,
    known: float,
    i_known: int,
    i_solve: int,
) -> float:
    """Closed-form complementary coordinate on cost = k, or raise _OffLocus.

    LS_LMSR has no closed form and is not handled here.
    """
    fam = spec.family
    if fam == curves.CONSTANT_PRODUCT:
        if known <= 0 or k <= 0:
            raise _OffLocus
        return k / known
    if fam == curves.CONSTANT_SUM:
        return k - known
    if fam == curves.CONSTANT_MEAN:
        assert spec.weights is not None
        if known <= 0 or k <= 0:
            raise _OffLocus
        w_known = spec.weights[i_known]
        w_solve = spec.weights[i_solve]
        return math.exp((math.log(k) - w_known * math.log(known)) / w_solve)
    if fam == curves.LMSR:
        # e^(y/b) = e^(k/b) - e^(x/b), evaluated as y = k + b*ln(1 - e^((x-k)/b))
        b = spec.b_liquidity
        t = (known - k) / b
        if t >= 0:
            raise _OffLocus
        e = math.exp(t)
        if e >= 1.0:
            raise _OffLocus
        return k + b * math.log1p(-e)
    if fam == curves.ELLIPSE:
        # y^2 + (b*x - 2a)y + ((x-a)^2 + a^2 - k) = 0; the lower branch takes
        # the smaller root, the upper branch the larger.  A discriminant that
        # is zero within rounding is accepted as a tangency.
        a = spec.center_a
        bq = spec.cross_b * known - 2.0 * a
        cq = (known - a) ** 2 + a * a - k
        disc = bq * bq - 4.0 * cq
        scale = max(1.0, bq * bq, abs(cq))
        if disc < 0.0:
            if disc < -1e-9 * scale:
                raise _OffLocus
            disc = 0.0
        root = math.sqrt(disc)
        if spec.branch == curves.CONVEX_LOWER:
            return 0.5 * (-bq - root)
        return 0.5 * (-bq + root)
    raise DomainError(f"no closed-form locus inverse for {fam}")


def solve_on_locus(
    spec: curves.CurveSpec,
    cost_value: float,
    known_index: int,
    known_value: float,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> float:
    """The other token's reserve at the given coordinate of a two-token locus.

    Used for curve sampling and endpoint work.  Raises DomainError when the
    locus has no point with that coordinate.
    """
    other = 1 - known_index
    if spec.family == curves.LS_LMSR:
        return _bisect_coordinate(spec, cost_value, known_index, known_value, cfg)
    try:
        return _partner(spec, cost_value, known_value, known_index, other)
    except _OffLocus:
        raise DomainError(f"no locus point with coordinate {known_value:g}") from None


def _bisect_coordinate(
    spec: curves.CurveSpec,
    k: float,
    known_index: int,
    known_value: float,
    cfg: SolverConfig,
) -> float:
    """Monotone bisection for the unknown coordinate (LS_LMSR path)."""
    other = 1 - known_index
    tol = cfg.abs_tol * max(1.0, abs(k))
    base = (0.0, 0.0)

    def f(y: float) -> float:
        state = _state(_state(base, known_index, known_value), other, y)
        return curves.cost(spec, state) - k

    try:
        flo = f(0.0)
    except DomainError:
        # known_value == 0 makes the state (0, 0); the cost limit there is 0
        flo = -k
    if flo > tol:
        raise DomainError(f"no locus point with coordinate {known_value:g}")
    if abs(flo) <= tol:
        return 0.0
    hi = max(1.0, known_value, abs(k))
    grow = 0
    while f(hi) < 0.0:
        hi *= 2.0
        grow += 1
        if grow > 200:
            raise NoConvergence("could not bracket the locus coordinate")
    lo = 0.0
    for _ in range(cfg.max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # the bracket is one ulp wide; no further progress possible
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    mid = 0.5 * (lo + hi)
    if abs(f(mid)) <= tol:
        return mid
    raise NoConvergence("bisection exhausted its iteration budget")


def swap_exact_in(p: SwapProblem, cfg: SolverConfig = DEFAULT_CONFIG) -> float:
    """Output amount for a given input amount at constant cost.

    Returns amount_out with 0 <= amount_out <= q[token_out]; a request whose
    exact root lies within the drain slack of the full reserve executes as a
    drain to exactly zero.
    """
    if p.amount_in == 0.0:
        return 0.0
    q = p.q
    k = curves.cost(p.spec, q)
    new_in = q[p.token_in] + p.amount_in
    if not math.isfinite(new_in):
        raise DomainError("post-trade reserve is not finite")
    r_out = q[p.token_out]
    tol = cfg.abs_tol * max(1.0, abs(k))
    if p.spec.family == curves.LS_LMSR:
        return _bisect_amount_out(p.spec, k, q, p.token_in, new_in, p.token_out, cfg)
    try:
        new_out = _partner(p.spec, k, new_in, p.token_in, p.token_out)
    except _OffLocus:
        raise InsufficientLiquidity("trade leaves the trading locus") from None
    amount_out = r_out - new_out
    if amount_out > r_out:
        return _accept_drain(p.spec, k, q, p.token_in, new_in, p.token_out, cfg)
    if amount_out < 0.0:
        if amount_out >= -tol * max(1.0, r_out):
            return 0.0
        raise InsufficientLiquidity("no nonnegative payout keeps the cost level")
    return amount_out


def _accept_drain(spec, k, q, t_in, new_in, t_out, cfg: SolverConfig) -> float:
    """Full drain if the cost residual at an empty out-reserve is in slack."""
    drained = _state(_state(q, t_in, new_in), t_out, 0.0)
    residual = abs(curves.cost(spec, drained) - k)
    if residual <= cfg.drain_tol * max(1.0, abs(k)):
        return q[t_out]
    raise InsufficientLiquidity("pool cannot cover the requested swap")


def _bisect_amount_out(spec, k, q, t_in, new_in, t_out, cfg: SolverConfig) -> float:
    r_out = q[t_out]
    tol = cfg.abs_tol * max(1.0, abs(k))

    def f(d: float) -> float:
        state = _state(_state(q, t_in, new_in), t_out, r_out - d)
        return curves.cost(spec, state) - k

    f_hi = f(r_out)
    if f_hi >= -tol:
        # The root sits at or beyond the reserve boundary; accept a drain only
        # within the slack, otherwise the pool cannot pay.
        if f_hi <= cfg.drain_tol * max(1.0, abs(k)):
            return r_out
        raise InsufficientLiquidity("pool cannot cover the requested swap")
    lo, hi = 0.0, r_out  # f(lo) >= 0 > f(hi): cost falls as the payout grows
    for _ in range(cfg.max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    mid = 0.5 * (lo + hi)
    if abs(f(mid)) <= tol:
        return mid
    raise NoConvergence("bisection exhausted its iteration budget")


def swap_exact_out(p: SwapProblem, cfg: SolverConfig = DEFAULT_CONFIG) -> float:
    """Input amount that pays for a desired output amount at constant cost."""
    if p.amount_out == 0.0:
        return 0.0
    q = p.q
    r_out = q[p.token_out]
    if p.amount_out > r_out:
        raise InsufficientLiquidity("requested more than the pool reserve")
    k = curves.cost(p.spec, q)
    new_out = r_out - p.amount_out
    tol = cfg.abs_tol * max(1.0, abs(k))
    if p.spec.family == curves.LS_LMSR:
        return _bisect_amount_in(p.spec, k, q, p.token_in, p.token_out, new_out, cfg)
    try:
        new_in = _partner(p.spec, k, new_out, p.token_out, p.token_in)
    except _OffLocus:
        raise InsufficientLiquidity("pool cannot price the requested payout") from None
    amount_in = new_in - q[p.token_in]
    if amount_in < 0.0:
        if amount_in >= -tol * max(1.0, q[p.token_in]):
            return 0.0
        raise InsufficientLiquidity("no nonnegative payment keeps the cost level")
    return amount_in


def _bisect_amount_in(spec, k, q, t_in, t_out, new_out, cfg: SolverConfig) -> float:
    tol = cfg.abs_tol * max(1.0, abs(k))
    base_in = q[t_in]

    def f(a: float) -> float:
        state = _state(_state(q, t_out, new_out), t_in, base_in + a)
        return curves.cost(spec, state) - k

    hi = max(1.0, q[t_out] - new_out)
    grow = 0
    while f(hi) < 0.0:  # cost rises with the payment, so expand until covered
        hi *= 2.0
        grow += 1
        if grow > 200:
            raise NoConvergence("could not bracket the payment")
    lo = 0.0
    for _ in range(cfg.max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    mid = 0.5 * (lo + hi)
    if abs(f(mid)) <= tol:
        return mid
    raise NoConvergence("bisection exhausted its iteration budget")
