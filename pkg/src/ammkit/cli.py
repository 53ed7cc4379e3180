"""Command-line front door: scenario files in, JSON/CSV/PNG out.

Subcommands:

    run               execute a scenario file against one market
    table1            print the four-row reference comparison table
    sample            export one constant-cost locus to CSV (and optionally PNG)
    frontrun-compare  run the same sandwich attack across several curves

All numeric output is printed with 12 significant digits, and a given input
always produces a byte-identical stream.  Failures print one structured error
object and map to exit codes: parse errors 2, domain errors 3, liquidity
errors 4, convergence failures 5.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import analysis, attacks, curves, engine
from .errors import (
    AmmError,
    DomainError,
    InfeasibleAttack,
    InsufficientLiquidity,
    NegativeReserveRejected,
    NoConvergence,
    ParseError,
)

# Reference values for the table1 subcommand: per row, the expected cost and
# ratio interval of the standard (1000, 1000) market.  Interval endpoints are
# rounded outward to four decimals so the printed interval encloses the true
# one, which puts a cell up to one final-digit unit from the computed value.
_TABLE1_TOL = 1e-4
_TABLE1_ROWS = (
    ("LS-LMSR", curves.ls_lmsr(1.0), 2386.294362, (0.6481, 1.5430)),
    ("constant product", curves.constant_product(), 1000000.0, (analysis.ZERO_PLUS, analysis.INF)),
    ("constant sum", curves.constant_sum(), 2000.0, (1.0, 1.0)),
    ("constant circle", curves.ellipse(6000.0), 50000000.0, (0.6236, 1.6036)),
)


def _round12(value: Any) -> Any:
    """Round every float to 12 significant digits, recursively."""
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        return float(format(value, ".12g"))
    if isinstance(value, dict):
        return {k: _round12(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round12(v) for v in value]
    return value


def _emit(obj: dict) -> None:
    print(json.dumps(_round12(obj)))


# ---------------------------------------------------------------------------
# strict scenario parsing


def _require_keys(obj: dict, allowed: dict[str, bool], where: str) -> None:
    """allowed maps key -> required?  Unknown or missing keys are errors."""
    for key in obj:
        if key not in allowed:
            raise ParseError(f"unknown key '{key}' in {where}")
    for key, required in allowed.items():
        if required and key not in obj:
            raise ParseError(f"missing key '{key}' in {where}")


def _number(obj: dict, key: str, where: str) -> float:
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"'{key}' in {where} must be a number")
    return float(v)


def _integer(obj: dict, key: str, where: str) -> int:
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"'{key}' in {where} must be an integer")
    return v


def _string(obj: dict, key: str, where: str) -> str:
    v = obj[key]
    if not isinstance(v, str):
        raise ParseError(f"'{key}' in {where} must be a string")
    return v


def _number_list(obj: dict, key: str, where: str) -> list[float]:
    v = obj[key]
    if not isinstance(v, list) or not v:
        raise ParseError(f"'{key}' in {where} must be a nonempty array")
    out = []
    for item in v:
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise ParseError(f"'{key}' in {where} must contain numbers only")
        out.append(float(item))
    return out


_CURVE_KEYS: dict[str, dict[str, bool]] = {
    curves.LMSR: {"b_liquidity": True},
    curves.LS_LMSR: {"alpha": True},
    curves.CONSTANT_PRODUCT: {},
    curves.CONSTANT_MEAN: {"weights": True},
    curves.CONSTANT_SUM: {},
    curves.ELLIPSE: {"center_a": True, "cross_b": False, "branch": False},
}


def parse_curve(obj: Any, where: str = "curve") -> curves.CurveSpec:
    """Parse a curve object with a family discriminator, strictly."""
    if not isinstance(obj, dict):
        raise ParseError(f"{where} must be an object")
    if "family" not in obj:
        raise ParseError(f"missing key 'family' in {where}")
    family = _string(obj, "family", where)
    if family not in _CURVE_KEYS:
        raise ParseError(f"unknown curve family '{family}' in {where}")
    allowed = dict(_CURVE_KEYS[family])
    allowed["family"] = True
    _require_keys(obj, allowed, where)
    if family == curves.LMSR:
        return curves.lmsr(_number(obj, "b_liquidity", where))
    if family == curves.LS_LMSR:
        return curves.ls_lmsr(_number(obj, "alpha", where))
    if family == curves.CONSTANT_PRODUCT:
        return curves.constant_product()
    if family == curves.CONSTANT_MEAN:
        return curves.constant_mean(_number_list(obj, "weights", where))
    if family == curves.CONSTANT_SUM:
        return curves.constant_sum()
    cross = _number(obj, "cross_b", where) if "cross_b" in obj else 0.0
    branch = _string(obj, "branch", where) if "branch" in obj else curves.CONVEX_LOWER
    if branch not in curves.BRANCHES:
        raise ParseError(f"unknown branch '{branch}' in {where}")
    return curves.ellipse(_number(obj, "center_a", where), cross, branch)


_ACTION_KEYS: dict[str, dict[str, bool]] = {
    "swap": {"token_in": True, "coins_in": True},
    "quote": {"token_in": True, "coins_in": True},
    "frontrun": {"victim_token_in": True, "victim_coins_in": True, "budget": True},
    "rebase": {"token": True, "reference_price_ratio": True},
    "profile": {},
    "sample": {"x_min": True, "x_max": True, "points": True, "out": True, "plot": False},
}


def parse_scenario(obj: Any):
    """Validate a scenario document; returns (spec, deposits, scales, actions)."""
    if not isinstance(obj, dict):
        raise ParseError("scenario must be a JSON object")
    _require_keys(
        obj, {"curve": True, "deposits": True, "scales": False, "actions": True}, "scenario"
    )
    spec = parse_curve(obj["curve"])
    deposits = _number_list(obj, "deposits", "scenario")
    if "scales" in obj:
        scales = _number_list(obj, "scales", "scenario")
        if len(scales) != len(deposits):
            raise ParseError("'scales' and 'deposits' must have the same length")
    else:
        scales = [1.0] * len(deposits)
    raw_actions = obj["actions"]
    if not isinstance(raw_actions, list):
        raise ParseError("'actions' in scenario must be an array")
    actions = []
    for idx, action in enumerate(raw_actions):
        where = f"actions[{idx}]"
        if not isinstance(action, dict):
            raise ParseError(f"{where} must be an object")
        if "action" not in action:
            raise ParseError(f"missing key 'action' in {where}")
        name = _string(action, "action", where)
        if name not in _ACTION_KEYS:
            raise ParseError(f"unknown action '{name}' in {where}")
        allowed = dict(_ACTION_KEYS[name])
        allowed["action"] = True
        _require_keys(action, allowed, where)
        actions.append((name, action, where))
    return spec, deposits, scales, actions


# ---------------------------------------------------------------------------
# scenario execution


def _run_action(market: engine.MarketState, name: str, action: dict, where: str):
    """Execute one parsed action; returns (new market, output object)."""
    if name == "swap":
        market, receipt = engine.execute(
            market, _integer(action, "token_in", where), _number(action, "coins_in", where)
        )
        return market, {"action": "swap", **receipt.as_dict()}
    if name == "quote":
        receipt = engine.quote(
            market, _integer(action, "token_in", where), _number(action, "coins_in", where)
        )
        return market, {"action": "quote", **receipt.as_dict()}
    if name == "frontrun":
        victim = attacks.VictimOrder(
            token_in=_integer(action, "victim_token_in", where),
            coins_in=_number(action, "victim_coins_in", where),
        )
        report = attacks.simulate_frontrun(market, victim, _number(action, "budget", where))
        return market, {"action": "frontrun", **report.as_dict()}
    if name == "rebase":
        plan = engine.plan_rebase(
            market,
            _integer(action, "token", where),
            _number(action, "reference_price_ratio", where),
        )
        market = engine.apply_rebase(market, plan)
        return market, {"action": "rebase", **plan.as_dict(), "cost_value": market.cost_value}
    if name == "profile":
        prof = analysis.profile(market)
        return market, {"action": "profile", **prof.as_dict()}
    # sample
    out_path = _string(action, "out", where)
    sample = analysis.sample_curve(
        market.spec,
        market.cost_value,
        _number(action, "x_min", where),
        _number(action, "x_max", where),
        _integer(action, "points", where),
    )
    sample.to_csv(out_path)
    result = {
        "action": "sample",
        "out": out_path,
        "points": len(sample.points),
        "cost_value": sample.cost_value,
    }
    if "plot" in action:
        from . import plotting

        plot_path = _string(action, "plot", where)
        plotting.render_sample(sample, plot_path)
        result["plot"] = plot_path
    return market, result


def _exit_code(exc: AmmError) -> int:
    if isinstance(exc, ParseError):
        return 2
    if isinstance(exc, DomainError):
        return 3
    if isinstance(exc, (InsufficientLiquidity, NegativeReserveRejected, InfeasibleAttack)):
        return 4
    if isinstance(exc, NoConvergence):
        return 5
    return 1


def _fail(exc: AmmError) -> int:
    _emit({"error": {"type": type(exc).__name__, "message": str(exc)}})
    return _exit_code(exc)


def cmd_run(args: argparse.Namespace) -> int:
    try:
        with open(args.scenario) as fh:
            try:
                document = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc}") from exc
        spec, deposits, scales, actions = parse_scenario(document)
        market = engine.create_market(spec, deposits, scales)
        for name, action, where in actions:
            market, output = _run_action(market, name, action, where)
            _emit(output)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AmmError as exc:
        return _fail(exc)
    return 0


def cmd_table1(args: argparse.Namespace) -> int:
    rows = []
    for label, spec, want_cost, want_ratio in _TABLE1_ROWS:
        market = engine.create_market(spec, (1000.0, 1000.0))
        prof = analysis.profile(market)
        mismatches = []
        if abs(prof.market_cost - want_cost) > _TABLE1_TOL * max(1.0, abs(want_cost)):
            mismatches.append("cost")
        for got, want, side in zip(prof.ratio_interval, want_ratio, ("low", "high")):
            if isinstance(want, str) or isinstance(got, str):
                if got != want:
                    mismatches.append(f"ratio_{side}")
            elif abs(got - want) > _TABLE1_TOL:
                mismatches.append(f"ratio_{side}")
        rows.append((label, prof, want_cost, want_ratio, mismatches))
    if args.json:
        for label, prof, want_cost, want_ratio, mismatches in rows:
            _emit(
                {
                    "family": label,
                    **prof.as_dict(),
                    "expected_cost": want_cost,
                    "expected_ratio_interval": list(want_ratio),
                    "mismatches": mismatches,
                }
            )
        return 0
    header = f"{'family':<18} {'market cost':>14}  {'ratio interval':<28} {'slope interval':<28} check"
    print(header)
    print("-" * len(header))
    for label, prof, _, _, mismatches in rows:
        ratio = _format_interval(prof.ratio_interval)
        slope = _format_interval(prof.slope_interval)
        check = "ok" if not mismatches else "MISMATCH: " + ",".join(mismatches)
        print(f"{label:<18} {prof.market_cost:>14.10g}  {ratio:<28} {slope:<28} {check}")
    return 0


def _format_interval(interval: tuple) -> str:
    lo, hi = interval
    if lo == hi and not isinstance(lo, str):
        return f"{{{lo:.10g}}}"
    fmt = lambda e: e if isinstance(e, str) else f"{e:.10g}"
    return f"({fmt(lo)}, {fmt(hi)})"


def _add_curve_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--family", required=True, choices=curves.FAMILIES)
    sub.add_argument("--b-liquidity", type=float, default=1.0, help="LMSR depth b")
    sub.add_argument("--alpha", type=float, default=1.0, help="LS-LMSR liquidity coefficient")
    sub.add_argument("--weights", help="comma-separated constant-mean exponents")
    sub.add_argument("--center-a", type=float, default=0.0, help="ellipse center offset")
    sub.add_argument("--cross-b", type=float, default=0.0, help="ellipse cross-term coefficient")
    sub.add_argument("--branch", choices=curves.BRANCHES, default=curves.CONVEX_LOWER)


def _spec_from_flags(args: argparse.Namespace) -> curves.CurveSpec:
    weights = None
    if args.weights is not None:
        try:
            weights = tuple(float(w) for w in args.weights.split(","))
        except ValueError as exc:
            raise ParseError(f"bad --weights value: {args.weights!r}") from exc
    if args.family == curves.CONSTANT_MEAN and weights is None:
        raise ParseError("--weights is required for CONSTANT_MEAN")
    return curves.CurveSpec(
        family=args.family,
        b_liquidity=args.b_liquidity,
        alpha=args.alpha,
        weights=weights,
        center_a=args.center_a,
        cross_b=args.cross_b,
        branch=args.branch,
    )


def cmd_sample(args: argparse.Namespace) -> int:
    try:
        spec = _spec_from_flags(args)
        sample = analysis.sample_curve(spec, args.cost, args.xmin, args.xmax, args.points)
        sample.to_csv(args.out)
        result = {
            "out": args.out,
            "points": len(sample.points),
            "cost_value": sample.cost_value,
        }
        if args.plot:
            from . import plotting

            plotting.render_sample(sample, args.plot, title=f"{spec.family} locus")
            result["plot"] = args.plot
        _emit(result)
    except AmmError as exc:
        return _fail(exc)
    return 0


def cmd_frontrun_compare(args: argparse.Namespace) -> int:
    try:
        with open(args.config) as fh:
            try:
                document = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc}") from exc
        if not isinstance(document, dict):
            raise ParseError("comparison config must be a JSON object")
        _require_keys(
            document,
            {"curves": True, "deposits": True, "scales": False, "victim": True, "budget": True},
            "config",
        )
        raw_curves = document["curves"]
        if not isinstance(raw_curves, list) or not raw_curves:
            raise ParseError("'curves' in config must be a nonempty array")
        specs = [parse_curve(c, f"curves[{i}]") for i, c in enumerate(raw_curves)]
        deposits = _number_list(document, "deposits", "config")
        scales = _number_list(document, "scales", "config") if "scales" in document else None
        victim_obj = document["victim"]
        if not isinstance(victim_obj, dict):
            raise ParseError("'victim' in config must be an object")
        _require_keys(victim_obj, {"token_in": True, "coins_in": True}, "victim")
        victim = attacks.VictimOrder(
            token_in=_integer(victim_obj, "token_in", "victim"),
            coins_in=_number(victim_obj, "coins_in", "victim"),
        )
        budget = _number(document, "budget", "config")
        outcomes = attacks.compare_families(specs, deposits, victim, budget, scales)
        for outcome in outcomes:
            _emit(outcome.as_dict())
        if args.plot:
            from . import plotting

            plotting.render_profit_bars(outcomes, args.plot)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AmmError as exc:
        return _fail(exc)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ammkit",
        description="Simulate and compare automated-market-maker cost functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a JSON scenario file against one market")
    p_run.add_argument("scenario", help="path to the scenario JSON file")
    p_run.set_defaults(func=cmd_run)

    p_table = sub.add_parser("table1", help="print the four-row reference comparison table")
    p_table.add_argument("--json", action="store_true", help="machine-readable output")
    p_table.set_defaults(func=cmd_table1)

    p_sample = sub.add_parser("sample", help="export a constant-cost locus to CSV")
    _add_curve_flags(p_sample)
    p_sample.add_argument("--cost", type=float, required=True, help="cost level of the locus")
    p_sample.add_argument("--xmin", type=float, required=True)
    p_sample.add_argument("--xmax", type=float, required=True)
    p_sample.add_argument("--points", type=int, default=101)
    p_sample.add_argument("--out", required=True, help="CSV output path")
    p_sample.add_argument("--plot", help="also render the locus to this PNG path")
    p_sample.set_defaults(func=cmd_sample)

    p_cmp = sub.add_parser(
        "frontrun-compare", help="run one sandwich scenario across several curves"
    )
    p_cmp.add_argument("config", help="path to the comparison JSON file")
    p_cmp.add_argument("--plot", help="render per-family profits to this PNG path")
    p_cmp.set_defaults(func=cmd_frontrun_compare)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
