"""Synthetic data generation for the two scenarios the screen is tested on.

Competitive rounds are gap-equilibria of the price game: a gap ``eps`` is
drawn, split randomly between the two agents, and prices are solved so that
each agent's weighted optimality slack matches its share (interior case) or
the price cap binds with a nonnegative multiplier (boundary case).  Draws
whose solution cannot be made feasible are rejected and redrawn.

Collusive rounds maximize the agents' combined revenue over the price box,
then step away from the maximizer along a random direction until the
combined revenue has dropped by the drawn gap, so collusive prices are
eps-optimal rather than exact maximizers.  With ``gap_rate = inf`` both
scenarios produce exact equilibria/maximizers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .market import (
    ConfigError,
    MarketConfig,
    Observation,
    joint_utility,
    joint_utility_gradient,
    joint_utility_hessian,
    marginal_utility,
)

NEWTON_TOL = 1e-10
NEWTON_MAX_ITER = 100

# Rejected draws in a row before dataset generation gives up.
STALL_WINDOW = 10_000


class GenerationStalledError(RuntimeError):
    """Raised when the accept/reject sampler stops accepting anything."""


class Scenario(enum.Enum):
    COMPETITIVE = "competitive"
    COLLUSIVE = "collusive"


class SampleStatus(enum.Enum):
    ACCEPTED = "accepted"
    REJECTED_NEGATIVE_PRICE = "rejected_negative_price"
    REJECTED_BOUNDARY_INFEASIBLE = "rejected_boundary_infeasible"
    REJECTED_NO_CONVERGENCE = "rejected_no_convergence"


@dataclass(frozen=True)
class SampleDraw:
    """Randomness consumed by one competitive sampling attempt.

    ``share`` is the fraction of the gap assigned to agent 1's optimality
    slack in the interior branch; the remainder goes to agent 2.
    """

    mu: float
    eta1: float
    eta2: float
    eps: float
    share: float = 0.5

    def __post_init__(self) -> None:
        if self.eps < 0:
            raise ValueError(f"gap must be >= 0, got {self.eps}")
        if not 0.0 <= self.share <= 1.0:
            raise ValueError(f"share must be in [0, 1], got {self.share}")


@dataclass(frozen=True)
class SampleOutcome:
    status: SampleStatus
    observation: Observation | None = None
    duals: tuple[float, float] | None = None


@dataclass(frozen=True)
class Dataset:
    observations: list[Observation]
    true_gaps: list[float]
    scenario: Scenario


def _intercepts(mu: float, eta1: float, eta2: float, cfg: MarketConfig):
    """Marginal-utility intercepts with the shock and noise folded in."""
    t1, t2 = cfg.theta1, cfg.theta2
    a1 = t1.intercept + t1.shock_coef * mu + eta1
    a2 = t2.intercept + t2.shock_coef * mu + eta2
    return a1, a2


def interior_linear_root(mu: float, eta1: float, eta2: float,
                         cfg: MarketConfig) -> tuple[float, float] | None:
    """Solve the zero-gap stationarity system (both marginals vanish).

    This linear 2x2 system is the gap -> 0 limit of the interior equilibrium
    and serves as the Newton starting point: it sits on the economically
    relevant solution branch, away from the spurious roots of the quadratic
    system (which have one or both prices near zero).
    """
    a1, a2 = _intercepts(mu, eta1, eta2, cfg)
    t1, t2 = cfg.theta1, cfg.theta2
    det = 4.0 * t1.p1_coef * t2.p2_coef - t1.p2_coef * t2.p1_coef
    if det == 0.0:
        return None
    p1 = (-2.0 * t2.p2_coef * a1 + t1.p2_coef * a2) / det
    p2 = (-2.0 * t1.p1_coef * a2 + t2.p1_coef * a1) / det
    return p1, p2


def _newton_pair(a1: float, a2: float, cfg: MarketConfig, gap1: float,
                 gap2: float, start: tuple[float, float]):
    """Newton iteration for p_i * m_i + gap_i = 0, i = 1, 2."""
    t1, t2 = cfg.theta1, cfg.theta2
    b1, c1 = t1.p1_coef, t1.p2_coef
    b2, c2 = t2.p2_coef, t2.p1_coef
    p1, p2 = start
    for _ in range(NEWTON_MAX_ITER):
        g1 = p1 * (a1 + b1 * p1 + c1 * p2) + b1 * p1 * p1 + gap1
        g2 = p2 * (a2 + b2 * p2 + c2 * p1) + b2 * p2 * p2 + gap2
        if max(abs(g1), abs(g2)) < NEWTON_TOL:
            return p1, p2
        j11 = a1 + 4.0 * b1 * p1 + c1 * p2
        j12 = c1 * p1
        j21 = c2 * p2
        j22 = a2 + 4.0 * b2 * p2 + c2 * p1
        det = j11 * j22 - j12 * j21
        if det == 0.0 or not math.isfinite(det):
            return None
        p1 -= (g1 * j22 - g2 * j12) / det
        p2 -= (g2 * j11 - g1 * j21) / det
    return None


def solve_interior(mu: float, eta1: float, eta2: float, eps: float,
                   cfg: MarketConfig, share: float = 0.5
                   ) -> tuple[float, float] | None:
    """Prices putting slack ``share*eps`` on agent 1 and the rest on agent 2.

    Solves ``p_i * m_i = -gap_i`` for both agents, where ``m_i`` is the
    marginal utility at the true parameters with the draw's noise folded in.
    Returns None when Newton fails to converge from the zero-gap root and
    from the fallback starting points.
    """
    a1, a2 = _intercepts(mu, eta1, eta2, cfg)
    gap1 = share * eps
    gap2 = (1.0 - share) * eps
    half = cfg.price_cap / 2.0
    starts = [interior_linear_root(mu, eta1, eta2, cfg), (half, half), (1.0, 1.0)]
    for start in starts:
        if start is None:
            continue
        sol = _newton_pair(a1, a2, cfg, gap1, gap2, start)
        if sol is not None:
            return sol
    return None


def _solve_clamped(clamped_agent: int, mu: float, eta1: float, eta2: float,
                   eps: float, cfg: MarketConfig) -> float | None:
    """Newton solve of the free agent's equation when the other is capped.

    With agent ``clamped_agent`` fixed at the cap and carrying the dual, the
    free agent ``j`` absorbs the whole gap: ``p_j * m_j = -eps``, a scalar
    quadratic solved by Newton from cap/2 (falling back to 1.0).
    """
    cap = cfg.price_cap
    free = 2 if clamped_agent == 1 else 1
    a1, a2 = _intercepts(mu, eta1, eta2, cfg)
    if free == 2:
        t = cfg.theta2
        const = a2 + t.p1_coef * cap
        own = t.p2_coef
    else:
        t = cfg.theta1
        const = a1 + t.p2_coef * cap
        own = t.p1_coef
    for start in (cap / 2.0, 1.0):
        p = start
        ok = False
        for _ in range(NEWTON_MAX_ITER):
            f = const * p + 2.0 * own * p * p + eps
            if abs(f) < NEWTON_TOL:
                ok = True
                break
            fp = const + 4.0 * own * p
            if fp == 0.0 or not math.isfinite(fp):
                break
            p -= f / fp
        if ok:
            return p
    return None


def sample_competitive(draw: SampleDraw, cfg: MarketConfig) -> SampleOutcome:
    """Accept or reject one competitive draw.

    Interior solutions inside the price box are accepted with zero duals.
    A solution with a negative price is rejected.  When exactly one price
    exceeds the cap, that price is clamped, its dual is set to the clamped
    agent's marginal utility, and the other price is re-solved to absorb the
    whole gap; the sample is accepted only if the re-solved price stays in
    the box and the dual is nonnegative (a negative multiplier would make
    the capped price inconsistent with optimal play against the cap).  Both
    prices above the cap is treated as infeasible and rejected.
    """
    cap = cfg.price_cap
    sol = solve_interior(draw.mu, draw.eta1, draw.eta2, draw.eps, cfg,
                         draw.share)
    if sol is None:
        return SampleOutcome(SampleStatus.REJECTED_NO_CONVERGENCE)
    p1, p2 = sol
    if p1 < 0.0 or p2 < 0.0:
        return SampleOutcome(SampleStatus.REJECTED_NEGATIVE_PRICE)
    if p1 <= cap and p2 <= cap:
        return SampleOutcome(SampleStatus.ACCEPTED,
                             Observation(p1, p2, draw.mu), (0.0, 0.0))
    if p1 > cap and p2 > cap:
        return SampleOutcome(SampleStatus.REJECTED_BOUNDARY_INFEASIBLE)
    clamped = 1 if p1 > cap else 2
    q = _solve_clamped(clamped, draw.mu, draw.eta1, draw.eta2, draw.eps, cfg)
    if q is None:
        return SampleOutcome(SampleStatus.REJECTED_NO_CONVERGENCE)
    if not 0.0 <= q <= cap:
        return SampleOutcome(SampleStatus.REJECTED_BOUNDARY_INFEASIBLE)
    if clamped == 1:
        obs = Observation(cap, q, draw.mu)
        y = marginal_utility(1, cap, q, draw.mu, cfg.theta1, draw.eta1)
        duals = (y, 0.0)
    else:
        obs = Observation(q, cap, draw.mu)
        y = marginal_utility(2, q, cap, draw.mu, cfg.theta2, draw.eta2)
        duals = (0.0, y)
    if y < 0.0:
        return SampleOutcome(SampleStatus.REJECTED_BOUNDARY_INFEASIBLE)
    return SampleOutcome(SampleStatus.ACCEPTED, obs, duals)


def collusive_optimum(mu: float, cfg: MarketConfig) -> tuple[float, float]:
    """Exact maximizer of the combined revenue over the price box.

    Enumerates the box's active-set candidates (interior stationary point,
    four edge-restricted stationary points, four corners) and returns the
    best feasible one; strict concavity makes it the unique global maximizer.
    """
    t1, t2 = cfg.theta1, cfg.theta2
    (h11, h12), (_, h22) = joint_utility_hessian(t1, t2)
    if not (h11 < 0.0 and h11 * h22 - h12 * h12 > 0.0):
        raise ConfigError("combined revenue is not strictly concave; the "
                          "collusive maximizer is not unique")
    cap = cfg.price_cap
    alpha1 = t1.intercept + t1.shock_coef * mu
    alpha2 = t2.intercept + t2.shock_coef * mu
    # gradient = (alpha1 + h11*p1 + h12*p2, alpha2 + h12*p1 + h22*p2)
    det = h11 * h22 - h12 * h12
    candidates = []
    p1 = (-alpha1 * h22 + h12 * alpha2) / det
    p2 = (-h11 * alpha2 + h12 * alpha1) / det
    if 0.0 <= p1 <= cap and 0.0 <= p2 <= cap:
        candidates.append((p1, p2))
    for v1 in (0.0, cap):
        p2 = -(alpha2 + h12 * v1) / h22
        if 0.0 <= p2 <= cap:
            candidates.append((v1, p2))
    for v2 in (0.0, cap):
        p1 = -(alpha1 + h12 * v2) / h11
        if 0.0 <= p1 <= cap:
            candidates.append((p1, v2))
    candidates.extend([(0.0, 0.0), (0.0, cap), (cap, 0.0), (cap, cap)])
    return max(candidates, key=lambda p: joint_utility(p[0], p[1], mu, t1, t2))


def collusive_observation(mu: float, eps: float, angle: float,
                          cfg: MarketConfig) -> Observation:
    """An eps-optimal collusive price pair.

    Starting from the exact maximizer, steps along the unit direction given
    by ``angle`` (reflected inward at active box bounds) until the combined
    revenue drops by ``eps``, then clips to the box.  ``eps = 0`` returns
    the exact maximizer.
    """
    t1, t2 = cfg.theta1, cfg.theta2
    cap = cfg.price_cap
    p1, p2 = collusive_optimum(mu, cfg)
    if eps == 0.0:
        return Observation(p1, p2, mu)
    d1, d2 = math.cos(angle), math.sin(angle)
    if p1 >= cap and d1 > 0.0:
        d1 = -d1
    if p1 <= 0.0 and d1 < 0.0:
        d1 = -d1
    if p2 >= cap and d2 > 0.0:
        d2 = -d2
    if p2 <= 0.0 and d2 < 0.0:
        d2 = -d2
    g1, g2 = joint_utility_gradient(p1, p2, mu, t1, t2)
    (h11, h12), (_, h22) = joint_utility_hessian(t1, t2)
    slope = g1 * d1 + g2 * d2
    curv = -0.5 * (h11 * d1 * d1 + 2.0 * h12 * d1 * d2 + h22 * d2 * d2)
    # revenue drop along r: -slope*r + curv*r^2, with slope <= 0 at the
    # optimum for inward directions and curv > 0 by strict concavity
    r = (slope + math.sqrt(slope * slope + 4.0 * curv * eps)) / (2.0 * curv)
    q1 = min(max(p1 + r * d1, 0.0), cap)
    q2 = min(max(p2 + r * d2, 0.0), cap)
    return Observation(q1, q2, mu)


def draw_competitive(rng: np.random.Generator, cfg: MarketConfig) -> SampleDraw:
    """One attempt's randomness, consumed in a fixed documented order:
    shock, agent-1 noise, agent-2 noise, gap, gap share."""
    mu = rng.normal(cfg.shock_mean, cfg.shock_std)
    eta1 = rng.normal(0.0, cfg.noise_std)
    eta2 = rng.normal(0.0, cfg.noise_std)
    eps = rng.exponential(_gap_scale(cfg))
    share = rng.uniform()
    return SampleDraw(mu, eta1, eta2, eps, share)


def _gap_scale(cfg: MarketConfig) -> float:
    return 0.0 if math.isinf(cfg.gap_rate) else 1.0 / cfg.gap_rate


def generate_dataset(scenario: Scenario, n: int, seed: int,
                     cfg: MarketConfig) -> Dataset:
    """Generate ``n`` observations; identical seeds give identical datasets.

    Competitive generation redraws until ``n`` acceptances and also returns
    the accepted draws' true gaps.  Collusive generation consumes, per
    observation, a shock, a gap and a perturbation angle (in that order).
    """
    if n < 1:
        raise ValueError(f"dataset size must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    observations: list[Observation] = []
    gaps: list[float] = []
    if scenario is Scenario.COLLUSIVE:
        for _ in range(n):
            mu = rng.normal(cfg.shock_mean, cfg.shock_std)
            eps = rng.exponential(_gap_scale(cfg))
            angle = rng.uniform(0.0, 2.0 * math.pi)
            observations.append(collusive_observation(mu, eps, angle, cfg))
            gaps.append(eps)
        return Dataset(observations, gaps, scenario)
    rejected_in_row = 0
    while len(observations) < n:
        draw = draw_competitive(rng, cfg)
        outcome = sample_competitive(draw, cfg)
        if outcome.status is SampleStatus.ACCEPTED:
            observations.append(outcome.observation)
            gaps.append(draw.eps)
            rejected_in_row = 0
        else:
            rejected_in_row += 1
            if rejected_in_row >= STALL_WINDOW:
                raise GenerationStalledError(
                    f"no accepted sample in {STALL_WINDOW} consecutive draws; "
                    "check that the configuration admits feasible equilibria")
    return Dataset(observations, gaps, Scenario.COMPETITIVE)
