"""Exception types shared across the package.

Everything raised on purpose derives from AmmError so callers can catch one
base class at the boundary (the CLI maps subclasses to exit codes).
"""

from __future__ import annotations


class AmmError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(AmmError):
    """Input is outside the mathematical domain of the requested operation."""


class GeometryError(DomainError):
    """An ellipse market's trading arc does not contain the initial state."""


class SingularSlope(AmmError):
    """Tangent slope undefined because the y-price vanishes."""


class InsufficientLiquidity(AmmError):
    """No feasible payout within the pool's reserves keeps the cost level."""


class NoConvergence(AmmError):
    """Iterative root finding exhausted its budget without meeting tolerance."""


class NegativeReserveRejected(AmmError):
    """Executing the trade would leave a negative reserve component."""


class StalePlan(AmmError):
    """A rebase plan was generated against a state the market has left."""


class CostDrift(AmmError):
    """The cached cost value and the recomputed cost disagree beyond tolerance."""


class InfeasibleAttack(AmmError):
    """One leg of a front-run simulation cannot execute."""


class ParseError(AmmError):
    """A scenario or config file violates the documented schema."""
