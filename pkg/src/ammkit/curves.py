"""Cost, marginal price, and tangent slope for six AMM curve families.

A market's pricing rule is a scalar cost function C over the vector q of
per-token share counts; swaps move along a constant-cost locus and marginal
prices are the partial derivatives of C.  The families implemented here:

    LMSR              C(q) = b * ln(sum_i e^(q_i / b))
    LS_LMSR           C(q) = b(q) * ln(sum_i e^(q_i / b(q))), b(q) = alpha * sum_i q_i
    CONSTANT_PRODUCT  C(q) = prod_i q_i
    CONSTANT_MEAN     C(q) = prod_i q_i^(w_i)
    CONSTANT_SUM      C(q) = sum_i q_i
    ELLIPSE           C(q) = sum_i (q_i - a)^2 + b * sum_{i<j} q_i q_j

The ellipse cross term counts each unordered pair once.  The exponential
families are evaluated with shift-by-max stabilization so states as large as
q_i = 1e6 with b = 1 stay finite.

Prices are returned raw and signed.  On the lower (convex) arc of an ellipse
in the first quadrant both prices are negative; ratios and slopes, where sign
conventions cancel, are what consumers should compare.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, SingularSlope

LMSR = "LMSR"
LS_LMSR = "LS_LMSR"
CONSTANT_PRODUCT = "CONSTANT_PRODUCT"
CONSTANT_MEAN = "CONSTANT_MEAN"
CONSTANT_SUM = "CONSTANT_SUM"
ELLIPSE = "ELLIPSE"

FAMILIES = (LMSR, LS_LMSR, CONSTANT_PRODUCT, CONSTANT_MEAN, CONSTANT_SUM, ELLIPSE)

CONVEX_LOWER = "CONVEX_LOWER"
CONCAVE_UPPER = "CONCAVE_UPPER"
BRANCHES = (CONVEX_LOWER, CONCAVE_UPPER)


@dataclass(frozen=True)
class CurveSpec:
    """One curve family plus the parameters that family actually reads.

    Parameters not named by ``family`` are carried but ignored.  ``branch``
    selects which arc of an ellipse is the trading locus: CONVEX_LOWER takes
    the arc below the center, CONCAVE_UPPER the arc above it.
    """

    family: str
    b_liquidity: float = 1.0
    alpha: float = 1.0
    weights: tuple[float, ...] | None = None
    center_a: float = 0.0
    cross_b: float = 0.0
    branch: str = CONVEX_LOWER

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise DomainError(f"unknown curve family {self.family!r}")
        if self.family == LMSR and not self.b_liquidity > 0:
            raise DomainError("LMSR needs b_liquidity > 0")
        if self.family == LS_LMSR and not self.alpha > 0:
            raise DomainError("LS-LMSR needs alpha > 0")
        if self.family == CONSTANT_MEAN:
            if not self.weights:
                raise DomainError("constant mean needs a weights vector")
            object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
            if any(not w > 0 for w in self.weights):
                raise DomainError("constant-mean weights must be positive")
        if self.family == ELLIPSE and self.branch not in BRANCHES:
            raise DomainError(f"unknown ellipse branch {self.branch!r}")


def lmsr(b: float) -> CurveSpec:
    return CurveSpec(LMSR, b_liquidity=float(b))


def ls_lmsr(alpha: float) -> CurveSpec:
    return CurveSpec(LS_LMSR, alpha=float(alpha))


def constant_product() -> CurveSpec:
    return CurveSpec(CONSTANT_PRODUCT)


def constant_mean(weights: Sequence[float]) -> CurveSpec:
    return CurveSpec(CONSTANT_MEAN, weights=tuple(weights))


def constant_sum() -> CurveSpec:
    return CurveSpec(CONSTANT_SUM)


def ellipse(center_a: float, cross_b: float = 0.0, branch: str = CONVEX_LOWER) -> CurveSpec:
    return CurveSpec(ELLIPSE, center_a=float(center_a), cross_b=float(cross_b), branch=branch)


def _checked(spec: CurveSpec, q: Sequence[float]) -> tuple[float, ...]:
    if len(q) < 2:
        raise DomainError("a market state needs at least two tokens")
    qt = tuple(float(v) for v in q)
    if any(not math.isfinite(v) for v in qt):
        raise DomainError("market state must be finite")
    if spec.family == LS_LMSR and not sum(qt) > 0:
        raise DomainError("LS-LMSR needs sum(q) > 0")
    if spec.family == CONSTANT_MEAN:
        assert spec.weights is not None
        if len(spec.weights) != len(qt):
            raise DomainError("weights length must match the number of tokens")
        if any(v < 0 for v in qt):
            raise DomainError("constant mean is defined on nonnegative states")
    return qt


def _logsumexp_cost(q: tuple[float, ...], b: float) -> float:
    # b * ln(sum e^(q_i/b)) computed as m + b * ln(sum e^((q_i-m)/b))
    m = max(q)
    return m + b * math.log(math.fsum(math.exp((v - m) / b) for v in q))


def cost(spec: CurveSpec, q: Sequence[float]) -> float:
    """Evaluate the cost function C(q) for the given family."""
    qt = _checked(spec, q)
    fam = spec.family
    if fam == LMSR:
        return _logsumexp_cost(qt, spec.b_liquidity)
    if fam == LS_LMSR:
        return _logsumexp_cost(qt, spec.alpha * math.fsum(qt))
    if fam == CONSTANT_PRODUCT:
        out = 1.0
        for v in qt:
            out *= v
        return out
    if fam == CONSTANT_MEAN:
        assert spec.weights is not None
        out = 1.0
        for v, w in zip(qt, spec.weights):
            out *= v**w
        return out
    if fam == CONSTANT_SUM:
        return math.fsum(qt)
    # ELLIPSE; the pair sum over i<j equals ((sum q)^2 - sum q^2) / 2
    a = spec.center_a
    s = math.fsum(qt)
    sq = math.fsum(v * v for v in qt)
    return math.fsum((v - a) ** 2 for v in qt) + 0.5 * spec.cross_b * (s * s - sq)


def gradient(spec: CurveSpec, q: Sequence[float]) -> tuple[float, ...]:
    """All marginal prices at once: the vector of partials dC/dq_i, signed."""
    qt = _checked(spec, q)
    fam = spec.family
    if fam == LMSR:
        b = spec.b_liquidity
        m = max(qt)
        u = [math.exp((v - m) / b) for v in qt]
        t = math.fsum(u)
        return tuple(ui / t for ui in u)
    if fam == LS_LMSR:
        # Derivative of b(q) * ln(sum e^(q_j/b(q))) with b(q) = alpha * sum q,
        # by the product rule:
        #   P_i = alpha * ln(sum_j e^(q_j/b))
        #         + (e^(q_i/b) * sum_j q_j - sum_j q_j e^(q_j/b)) / (sum_j q_j * sum_j e^(q_j/b))
        # The shift by max(q) cancels inside the second term.
        s = math.fsum(qt)
        b = spec.alpha * s
        m = max(qt)
        u = [math.exp((v - m) / b) for v in qt]
        t = math.fsum(u)
        w = math.fsum(v * ui for v, ui in zip(qt, u))
        base = m / s + spec.alpha * math.log(t)
        return tuple(base + (ui * s - w) / (s * t) for ui in u)
    if fam == CONSTANT_PRODUCT:
        out = []
        for i in range(len(qt)):
            p = 1.0
            for j, v in enumerate(qt):
                if j != i:
                    p *= v
            out.append(p)
        return tuple(out)
    if fam == CONSTANT_MEAN:
        assert spec.weights is not None
        if any(v == 0 for v in qt):
            raise DomainError("constant-mean price needs strictly positive reserves")
        c = cost(spec, qt)
        return tuple(w * c / v for v, w in zip(qt, spec.weights))
    if fam == CONSTANT_SUM:
        return (1.0,) * len(qt)
    a = spec.center_a
    s = math.fsum(qt)
    return tuple(2.0 * (v - a) + spec.cross_b * (s - v) for v in qt)


def price(spec: CurveSpec, q: Sequence[float], i: int) -> float:
    """Marginal price of token i, the raw signed partial derivative dC/dq_i."""
    g = gradient(spec, q)
    if not 0 <= i < len(g):
        raise DomainError(f"token index {i} out of range for {len(g)} tokens")
    return g[i]


def price_magnitude(spec: CurveSpec, q: Sequence[float], i: int) -> float:
    """|price|, the quote-facing magnitude."""
    return abs(price(spec, q, i))


def tangent_slope(spec: CurveSpec, q: Sequence[float]) -> float:
    """Slope dy/dx = -P_x/P_y of the constant-cost curve at a two-token state."""
    if len(q) != 2:
        raise DomainError("tangent slope is defined for two-token states")
    gx, gy = gradient(spec, q)
    if gy == 0.0:
        raise SingularSlope("vertical tangent: P_y = 0")
    return -gx / gy


def price_ratio(spec: CurveSpec, q: Sequence[float]) -> float:
    """P_x/P_y at a two-token state; equals -tangent_slope(q) and is positive
    wherever both prices carry the same sign."""
    return -tangent_slope(spec, q)
