"""Swap solving: worked trades, drain edge cases, and conservation laws.

The liquidity-sensitive LMSR has no closed-form inverse, so its swaps are
additionally checked against the grid-plus-bisection oracle in oracles.py.
Frozen oracle outputs appear as 17-digit literals.
"""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ammkit import curves, solver
from ammkit.errors import DomainError, InsufficientLiquidity
from oracles import oracle_swap_in, oracle_swap_out

LS = curves.ls_lmsr(1.0)
LMSR = curves.lmsr(1.0)
PRODUCT = curves.constant_product()
SUM = curves.constant_sum()
CIRCLE = curves.ellipse(6000.0)


def _swap_in(spec, q, token_in, token_out, amount_in):
    p = solver.SwapProblem(
        spec=spec, q=q, token_in=token_in, token_out=token_out, amount_in=amount_in
    )
    return solver.swap_exact_in(p)


def _swap_out(spec, q, token_in, token_out, amount_out):
    p = solver.SwapProblem(
        spec=spec, q=q, token_in=token_in, token_out=token_out, amount_out=amount_out
    )
    return solver.swap_exact_out(p)


# ---------------------------------------------------------------------------
# worked trades
# ---------------------------------------------------------------------------


class TestLsLmsrTrades:
    def test_small_buy(self):
        out = _swap_in(LS, (1000.0, 1000.0), 1, 0, 10.0)
        assert abs(out - 10.020996) <= 1e-5
        assert abs(out - oracle_swap_out(LS, (1000.0, 1000.0), 1, 0, 10.0)) <= 1e-8

    def test_large_buy(self):
        out = _swap_in(LS, (1000.0, 1000.0), 1, 0, 500.0)
        assert abs(out - 559.926783) <= 1e-5
        assert abs(out - oracle_swap_out(LS, (1000.0, 1000.0), 1, 0, 500.0)) <= 1e-8

    def test_drain_executes_to_exactly_zero(self):
        # 817.07452949 in empties the other reserve; the printed payment
        # overshoots the true drain point by ~1.4e-6 coins, which lands
        # inside the drain slack and executes as a full drain.
        out = _swap_in(LS, (1000.0, 1000.0), 1, 0, 817.07452949)
        assert out == 1000.0

    def test_beyond_drain_fails(self):
        with pytest.raises(InsufficientLiquidity):
            _swap_in(LS, (1000.0, 1000.0), 1, 0, 900.0)

    def test_one_coin_matches_frozen_oracle(self):
        # frozen: oracle_swap_out(LS, (1500, 440.073217), 0, 1, 1)
        frozen = 1.2606842910251714
        out = _swap_in(LS, (1500.0, 440.073217), 0, 1, 1.0)
        assert abs(out - frozen) <= 1e-8
        live = oracle_swap_out(LS, (1500.0, 440.073217), 0, 1, 1.0)
        assert abs(live - frozen) <= 1e-10
        # consistent with the marginal rate 1.260346709 quoted at this state
        assert abs(out - 1.260346709) <= 5e-4

    def test_exact_out_matches_oracle(self):
        paid = _swap_out(LS, (1000.0, 1000.0), 1, 0, 250.0)
        assert abs(paid - oracle_swap_in(LS, (1000.0, 1000.0), 1, 0, 250.0)) <= 1e-8


class TestConstantProductTrades:
    def test_small_buy(self):
        out = _swap_in(PRODUCT, (1000.0, 1000.0), 1, 0, 10.0)
        assert abs(out - 9.900990099) <= 1e-7

    def test_large_buy(self):
        out = _swap_in(PRODUCT, (1000.0, 1000.0), 1, 0, 500.0)
        assert abs(out - 333.3333333) <= 1e-7

    def test_exact_out(self):
        paid = _swap_out(PRODUCT, (1250.0, 800.0), 1, 0, 200.0)
        assert abs(paid - 152.380952) <= 1e-6

    def test_never_fully_drains(self):
        out = _swap_in(PRODUCT, (1000.0, 1000.0), 1, 0, 1e9)
        assert 0.0 < out < 1000.0


class TestCircleTrades:
    def test_drain_buy(self):
        out = _swap_in(CIRCLE, (1000.0, 1000.0), 1, 0, 1258.342613)
        assert abs(out - 1000.0) <= 1e-5

    def test_exact_out(self):
        paid = _swap_out(CIRCLE, (1250.0, 761.918290), 1, 0, 200.0)
        assert abs(paid - 188.576785) <= 1e-5

    def test_concave_branch_matches_oracle(self):
        spec = curves.ellipse(-6000.0, branch=curves.CONCAVE_UPPER)
        out = _swap_in(spec, (1000.0, 1000.0), 0, 1, 100.0)
        assert abs(out - oracle_swap_out(spec, (1000.0, 1000.0), 0, 1, 100.0)) <= 1e-8

    def test_request_beyond_circle_reach_fails(self):
        with pytest.raises(InsufficientLiquidity):
            _swap_in(CIRCLE, (1000.0, 1000.0), 1, 0, 50000.0)


class TestSumAndMeanTrades:
    def test_sum_swaps_one_for_one(self):
        assert _swap_in(SUM, (1000.0, 1000.0), 0, 1, 300.0) == 300.0

    def test_sum_drains_exactly(self):
        assert _swap_in(SUM, (1000.0, 1000.0), 0, 1, 1000.0) == 1000.0

    def test_sum_empty_reserve_cannot_sell(self):
        with pytest.raises(InsufficientLiquidity):
            _swap_in(SUM, (2000.0, 0.0), 0, 1, 1.0)
        with pytest.raises(InsufficientLiquidity):
            _swap_out(SUM, (2000.0, 0.0), 0, 1, 1.0)

    def test_equal_weight_mean_trades_like_product(self):
        mean = curves.constant_mean((0.5, 0.5))
        out_mean = _swap_in(mean, (1000.0, 1000.0), 1, 0, 500.0)
        out_prod = _swap_in(PRODUCT, (1000.0, 1000.0), 1, 0, 500.0)
        assert math.isclose(out_mean, out_prod, rel_tol=1e-12)

    def test_unequal_weight_mean_matches_oracle(self):
        mean = curves.constant_mean((0.3, 0.7))
        out = _swap_in(mean, (1000.0, 2000.0), 0, 1, 250.0)
        assert abs(out - oracle_swap_out(mean, (1000.0, 2000.0), 0, 1, 250.0)) <= 1e-8


class TestLmsrTrades:
    def test_small_buy_matches_oracle(self):
        out = _swap_in(LMSR, (1000.0, 1000.0), 1, 0, 0.3)
        assert abs(out - oracle_swap_out(LMSR, (1000.0, 1000.0), 1, 0, 0.3)) <= 1e-8

    def test_emptying_the_pool_costs_b_ln_two(self):
        paid = _swap_out(LMSR, (1000.0, 1000.0), 1, 0, 1000.0)
        assert math.isclose(paid, math.log(2.0), rel_tol=1e-9)

    def test_payment_beyond_capacity_fails(self):
        # from a symmetric state the pool can absorb at most b*ln(2) coins
        with pytest.raises(InsufficientLiquidity):
            _swap_in(LMSR, (1000.0, 1000.0), 1, 0, 1.0)


# ---------------------------------------------------------------------------
# locus solving and boundary behavior
# ---------------------------------------------------------------------------


class TestSolveOnLocus:
    def test_product_inverse(self):
        assert solver.solve_on_locus(PRODUCT, 1000000.0, 0, 2000.0) == 500.0

    def test_circle_inverse(self):
        y = solver.solve_on_locus(CIRCLE, 50000000.0, 0, 1000.0)
        assert math.isclose(y, 1000.0, rel_tol=1e-12)

    def test_circle_tangency_returns_the_midpoint(self):
        y = solver.solve_on_locus(CIRCLE, 25000000.0, 0, 1000.0)
        assert y == 6000.0

    def test_ls_lmsr_axis_endpoint(self):
        k = curves.cost(LS, (1000.0, 1000.0))
        y = solver.solve_on_locus(LS, k, 0, 0.0)
        assert abs(y - 1817.0745281006905) <= 1e-9 * 1817.0
        assert abs(y - 1817.07452949) <= 1e-5

    def test_off_locus_coordinates_rejected(self):
        with pytest.raises(DomainError):
            solver.solve_on_locus(PRODUCT, 1000000.0, 0, -5.0)
        with pytest.raises(DomainError):
            solver.solve_on_locus(LMSR, 1000.0 + math.log(2.0), 0, 2000.0)


class TestRequestValidation:
    def test_zero_amounts_are_identity(self):
        assert _swap_in(PRODUCT, (1000.0, 1000.0), 0, 1, 0.0) == 0.0
        assert _swap_out(PRODUCT, (1000.0, 1000.0), 0, 1, 0.0) == 0.0

    def test_exact_out_cannot_exceed_reserve(self):
        with pytest.raises(InsufficientLiquidity):
            _swap_out(PRODUCT, (1000.0, 1000.0), 1, 0, 1000.5)

    def test_problem_field_validation(self):
        with pytest.raises(DomainError):
            solver.SwapProblem(spec=PRODUCT, q=(1.0, 2.0), token_in=0, token_out=0)
        with pytest.raises(DomainError):
            solver.SwapProblem(spec=PRODUCT, q=(1.0, 2.0), token_in=0, token_out=3)
        with pytest.raises(DomainError):
            solver.SwapProblem(
                spec=PRODUCT, q=(1.0, 2.0), token_in=0, token_out=1, amount_in=-1.0
            )
        with pytest.raises(DomainError):
            solver.SwapProblem(spec=PRODUCT, q=(1.0, 2.0, 3.0), token_in=0, token_out=1)

    def test_config_validation(self):
        with pytest.raises(DomainError):
            solver.SolverConfig(abs_tol=0.0)
        with pytest.raises(DomainError):
            solver.SolverConfig(max_iter=0)
        with pytest.raises(DomainError):
            solver.SolverConfig(abs_tol=1e-6, drain_tol=1e-9)


# ---------------------------------------------------------------------------
# conservation properties
# ---------------------------------------------------------------------------

# family, reserve range, and a payment cap that keeps two successive swaps
# clear of the drain point everywhere in the range
PROP_CASES = [
    (curves.lmsr(500.0), 800.0, 1200.0, 80.0),
    (curves.ls_lmsr(1.0), 500.0, 2000.0, 150.0),
    (curves.constant_product(), 500.0, 2000.0, 250.0),
    (curves.constant_mean((0.3, 0.7)), 500.0, 2000.0, 250.0),
    (curves.constant_sum(), 500.0, 2000.0, 200.0),
    (curves.ellipse(6000.0), 500.0, 2000.0, 250.0),
    (curves.ellipse(-6000.0, branch=curves.CONCAVE_UPPER), 500.0, 2000.0, 150.0),
]


def _ids(cases):
    return [
        spec.family if spec.family != curves.ELLIPSE else f"{spec.family}_{spec.branch}"
        for spec, *_ in cases
    ]


@pytest.mark.parametrize("spec,lo,hi,cap", PROP_CASES, ids=_ids(PROP_CASES))
@settings(deadline=None, max_examples=50)
@given(data=st.data())
def test_swaps_conserve_the_cost_level(spec, lo, hi, cap, data):
    x = data.draw(st.floats(lo, hi))
    y = data.draw(st.floats(lo, hi))
    amount = data.draw(st.floats(0.001, cap))
    k = curves.cost(spec, (x, y))
    out = _swap_in(spec, (x, y), 0, 1, amount)
    after = curves.cost(spec, (x + amount, y - out))
    assert abs(after - k) <= 1e-9 * max(1.0, abs(k))


@pytest.mark.parametrize("spec,lo,hi,cap", PROP_CASES, ids=_ids(PROP_CASES))
@settings(deadline=None, max_examples=50)
@given(data=st.data())
def test_split_swaps_land_on_the_same_state(spec, lo, hi, cap, data):
    x = data.draw(st.floats(lo, hi))
    y = data.draw(st.floats(lo, hi))
    a = data.draw(st.floats(0.001, cap))
    b = data.draw(st.floats(0.001, cap))
    whole = _swap_in(spec, (x, y), 0, 1, a + b)
    first = _swap_in(spec, (x, y), 0, 1, a)
    second = _swap_in(spec, (x + a, y - first), 0, 1, b)
    end_split = (x + a + b, y - first - second)
    end_whole = (x + a + b, y - whole)
    for u, v in zip(end_whole, end_split):
        assert abs(u - v) <= 1e-9 * max(1.0, abs(u))


@pytest.mark.parametrize("spec,lo,hi,cap", PROP_CASES, ids=_ids(PROP_CASES))
@settings(deadline=None, max_examples=50)
@given(data=st.data())
def test_exact_out_inverts_exact_in(spec, lo, hi, cap, data):
    x = data.draw(st.floats(lo, hi))
    y = data.draw(st.floats(lo, hi))
    amount = data.draw(st.floats(0.01, cap))
    out = _swap_in(spec, (x, y), 0, 1, amount)
    back = _swap_out(spec, (x, y), 0, 1, out)
    assert abs(back - amount) <= 1e-8 * max(1.0, amount)


@pytest.mark.parametrize("spec,lo,hi,cap", PROP_CASES, ids=_ids(PROP_CASES))
def test_payout_grows_with_payment(spec, lo, hi, cap):
    q = (lo, hi)
    amounts = [cap * f for f in (0.05, 0.1, 0.25, 0.5, 0.75, 1.0)]
    outs = [_swap_in(spec, q, 0, 1, a) for a in amounts]
    assert all(b > a for a, b in zip(outs, outs[1:]))


@settings(deadline=None, max_examples=100)
@given(
    x=st.floats(500.0, 2000.0),
    y=st.floats(500.0, 2000.0),
    amount=st.floats(0.01, 150.0),
)
def test_ls_lmsr_swaps_agree_with_the_oracle(x, y, amount):
    got = _swap_in(LS, (x, y), 0, 1, amount)
    want = oracle_swap_out(LS, (x, y), 0, 1, amount)
    assert abs(got - want) <= 1e-8 * max(1.0, want)
