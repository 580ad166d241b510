"""Economic primitives of the two-agent price game.

Both agents sell a single item and face linear demand in the two prices and
a common observable shock.  Agent ``i``'s revenue is ``p_i * D_i`` and its
marginal utility is the derivative of that revenue with respect to its own
price.  These functions are shared by the simulator (which evaluates them at
the true parameters, optionally with an unmodeled noise term) and by the
estimator (which evaluates them at fitted parameters with no noise term).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


class ConfigError(ValueError):
    """Raised when a market or estimator configuration is invalid."""


@dataclass(frozen=True)
class PrivateInfo:
    """Demand parameters of one agent.

    ``demand = intercept + p1_coef * p1 + p2_coef * p2 + shock_coef * mu``.
    The own-price coefficient is ``p1_coef`` for agent 1 and ``p2_coef`` for
    agent 2.
    """

    intercept: float
    p1_coef: float
    p2_coef: float
    shock_coef: float

    def __post_init__(self) -> None:
        for name, v in self.as_tuple_named():
            if not math.isfinite(v):
                raise ConfigError(f"PrivateInfo.{name} must be finite, got {v!r}")

    def as_tuple_named(self):
        return (
            ("intercept", self.intercept),
            ("p1_coef", self.p1_coef),
            ("p2_coef", self.p2_coef),
            ("shock_coef", self.shock_coef),
        )

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.intercept, self.p1_coef, self.p2_coef, self.shock_coef)

    def own_price_coef(self, agent: int) -> float:
        _check_agent(agent)
        return self.p1_coef if agent == 1 else self.p2_coef

    def cross_price_coef(self, agent: int) -> float:
        _check_agent(agent)
        return self.p2_coef if agent == 1 else self.p1_coef


@dataclass(frozen=True)
class Observation:
    """One recorded round: both prices and the shock the regulator saw."""

    p1: float
    p2: float
    mu: float


def _check_agent(agent: int) -> None:
    if agent not in (1, 2):
        raise ValueError(f"agent must be 1 or 2, got {agent!r}")


# Parameters of the canonical simulation setup.  The defaults below drive
# every CLI command unless overridden.
_DEFAULT_THETA1 = PrivateInfo(10.0, -1.0, 0.5, 1.0)
_DEFAULT_THETA2 = PrivateInfo(8.0, 0.4, -3.0, 1.0)


@dataclass(frozen=True)
class MarketConfig:
    """True market parameters driving the simulator.

    ``gap_rate`` is the rate of the exponential distribution the equilibrium
    gaps are drawn from; ``math.inf`` makes every gap exactly zero (perfect
    equilibrium).  ``noise_std`` scales the per-round unmodeled demand term;
    it defaults to zero so that simulated prices are exact gap-equilibria of
    the linear demand system, which is the regime where the estimator can
    recover the gap distribution.  Nonzero values inject demand noise the
    fitted model cannot rationalize, which inflates the recovered residuals.
    """

    price_cap: float = 8.0
    theta1: PrivateInfo = field(default=_DEFAULT_THETA1)
    theta2: PrivateInfo = field(default=_DEFAULT_THETA2)
    shock_mean: float = 5.0
    shock_std: float = 1.0
    noise_std: float = 0.0
    gap_rate: float = 20.0

    def __post_init__(self) -> None:
        if not (self.price_cap > 0):
            raise ConfigError(f"price_cap must be > 0, got {self.price_cap}")
        if self.shock_std < 0:
            raise ConfigError(f"shock_std must be >= 0, got {self.shock_std}")
        if self.noise_std < 0:
            raise ConfigError(f"noise_std must be >= 0, got {self.noise_std}")
        if not (self.gap_rate > 0):
            raise ConfigError(f"gap_rate must be > 0, got {self.gap_rate}")


def demand(agent: int, p1: float, p2: float, mu: float,
           theta: PrivateInfo, eta: float = 0.0) -> float:
    """Quantity demanded from one agent at the given prices and shock.

    ``eta`` is the unmodeled demand term; the regulator's fitted demand is
    this expression with ``eta = 0``.
    """
    _check_agent(agent)
    return (theta.intercept + theta.p1_coef * p1 + theta.p2_coef * p2
            + theta.shock_coef * mu + eta)


def marginal_utility(agent: int, p1: float, p2: float, mu: float,
                     theta: PrivateInfo, eta: float = 0.0) -> float:
    """Derivative of agent ``i``'s revenue ``p_i * D_i`` in its own price.

    Equals ``D_i + p_i * own_price_coef`` because demand is linear.
    """
    own_price = p1 if agent == 1 else p2
    return (demand(agent, p1, p2, mu, theta, eta)
            + own_price * theta.own_price_coef(agent))


def joint_utility(p1: float, p2: float, mu: float,
                  theta1: PrivateInfo, theta2: PrivateInfo) -> float:
    """Combined revenue ``p1*D1 + p2*D2`` with no unmodeled noise."""
    return (p1 * demand(1, p1, p2, mu, theta1)
            + p2 * demand(2, p1, p2, mu, theta2))


def joint_utility_gradient(p1: float, p2: float, mu: float,
                           theta1: PrivateInfo,
                           theta2: PrivateInfo) -> tuple[float, float]:
    """Gradient of the combined revenue in (p1, p2)."""
    g1 = marginal_utility(1, p1, p2, mu, theta1) + theta2.p1_coef * p2
    g2 = marginal_utility(2, p1, p2, mu, theta2) + theta1.p2_coef * p1
    return g1, g2


def joint_utility_hessian(theta1: PrivateInfo,
                          theta2: PrivateInfo) -> tuple[tuple[float, float],
                                                        tuple[float, float]]:
    """Hessian of the combined revenue; constant because demand is linear."""
    off = theta1.p2_coef + theta2.p1_coef
    return ((2.0 * theta1.p1_coef, off), (off, 2.0 * theta2.p2_coef))
