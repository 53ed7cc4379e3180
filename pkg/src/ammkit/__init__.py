"""Cost-function automated market makers: evaluation, swaps, and attacks.

Six curve families behind one interface: evaluate costs and marginal prices,
solve swaps on constant-cost loci, run stateful markets with share scaling
and liquidity rebase, profile price-ratio ranges, and simulate sandwich
attacks.  See the README for the CLI.
"""

from .analysis import (
    INF,
    NEG_INF,
    ZERO_MINUS,
    ZERO_PLUS,
    CurveSample,
    MarketProfile,
    ProbabilityEstimate,
    expected_profit,
    profile,
    sample_curve,
    scoring_reward,
)
from .attacks import (
    FamilyOutcome,
    FrontRunReport,
    VictimOrder,
    compare_families,
    simulate_frontrun,
)
from .curves import (
    BRANCHES,
    CONCAVE_UPPER,
    CONSTANT_MEAN,
    CONSTANT_PRODUCT,
    CONSTANT_SUM,
    CONVEX_LOWER,
    ELLIPSE,
    FAMILIES,
    LMSR,
    LS_LMSR,
    CurveSpec,
    constant_mean,
    constant_product,
    constant_sum,
    cost,
    ellipse,
    gradient,
    lmsr,
    ls_lmsr,
    price,
    price_magnitude,
    price_ratio,
    tangent_slope,
)
from .engine import (
    MarketState,
    RebasePlan,
    TradeReceipt,
    apply_rebase,
    create_market,
    execute,
    execute_exact_out,
    plan_rebase,
    quote,
    quote_exact_out,
)
from .errors import (
    AmmError,
    CostDrift,
    DomainError,
    GeometryError,
    InfeasibleAttack,
    InsufficientLiquidity,
    NegativeReserveRejected,
    NoConvergence,
    ParseError,
    SingularSlope,
    StalePlan,
)
from .solver import (
    DEFAULT_CONFIG,
    SolverConfig,
    SwapProblem,
    solve_on_locus,
    swap_exact_in,
    swap_exact_out,
)

__version__ = "0.1.0"
