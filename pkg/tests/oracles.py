"""Independent oracles the tests check the solver and engine against.

Nothing here calls the solver.  Swap amounts are re-derived from cost
equality alone with a coarse grid scan followed by plain bisection run to
bracket exhaustion, and reference prices come from central finite
differences of the cost function.  Agreement between these and the library
is what the numeric assertions lean on.
"""

from __future__ import annotations

from ammkit import curves


def fd_price(spec: curves.CurveSpec, q, i: int) -> float:
    """Central-difference estimate of the marginal price of token i."""
    qi = q[i]
    h = max(1e-6 * abs(qi), 1e-6)
    up = list(q)
    dn = list(q)
    up[i] = qi + h
    dn[i] = qi - h
    return (curves.cost(spec, up) - curves.cost(spec, dn)) / (2.0 * h)


def oracle_swap_out(
    spec: curves.CurveSpec,
    q,
    token_in: int,
    token_out: int,
    amount_in: float,
    grid: int = 64,
    iters: int = 300,
) -> float:
    """Payout for a given payment, from cost equality by scan plus bisection."""
    k = curves.cost(spec, q)
    paid = list(q)
    paid[token_in] += amount_in
    reserve = q[token_out]

    def residual(d: float) -> float:
        state = list(paid)
        state[token_out] = reserve - d
        return curves.cost(spec, state) - k

    edges = [reserve * j / grid for j in range(grid + 1)]
    lo = hi = None
    for a, b in zip(edges, edges[1:]):
        if residual(a) >= 0.0 >= residual(b):
            lo, hi = a, b
            break
    if lo is None:
        raise AssertionError("oracle found no sign change on [0, reserve]")
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if residual(mid) >= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def oracle_swap_in(
    spec: curves.CurveSpec,
    q,
    token_in: int,
    token_out: int,
    amount_out: float,
    iters: int = 300,
) -> float:
    """Payment for a given payout, from cost equality by doubling plus bisection."""
    k = curves.cost(spec, q)
    reduced = list(q)
    reduced[token_out] -= amount_out

    def residual(a: float) -> float:
        state = list(reduced)
        state[token_in] = q[token_in] + a
        return curves.cost(spec, state) - k

    lo, hi = 0.0, max(1.0, amount_out)
    while residual(hi) < 0.0:
        hi *= 2.0
        if hi > 1e18:
            raise AssertionError("oracle could not bracket the payment")
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if residual(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
