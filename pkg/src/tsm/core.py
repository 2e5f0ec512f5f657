"""Core market model: parameters, derived coefficients, demand/supply curves, payoffs.

The market couples two Cobb-Douglas curves. Consumer demand reacts to the
service price and to the amount of infrastructure backing the service;
infrastructure supply reacts to the revenue share the platform collects, to
the service price, and back to consumer demand. Substituting one curve into
the other gives reduced forms in (price, share) alone, which every other
module builds on.

All power laws are evaluated in log space (exp of a sum of exponent*log
terms). The reduced-form exponents carry a 1/a2 factor that grows without
bound as the externality product approaches 1, so direct `x**y` chains would
overflow long before the model itself becomes degenerate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Validation cap on alpha*beta. The model needs alpha*beta < 1; we stop
# slightly short of it so the reduced-form exponent 1/a2 stays <= 1000.
ALPHA_BETA_CAP = 0.999


class DomainError(ValueError):
    """An input lies outside an operation's mathematical domain."""


class InfeasibilityError(ValueError):
    """A best-response formula was evaluated where its existence conditions fail."""


@dataclass(frozen=True)
class MarketParams:
    """Full parameterization of one provider/platform pair.

    Attributes
    ----------
    alpha : externality of infrastructure supply on consumer demand, in (0, 1).
    beta : externality of consumer demand on supply, in (0, 1/alpha).
    gamma : price elasticity of consumer demand, >= 0.
    psi : price elasticity of infrastructure supply, >= 0.
    phi : elasticity of supply w.r.t. the revenue share (subsidizing factor), >= 0.
    k1 : demand multiplier, > 0.
    k2 : supply multiplier, > 0.
    f_c : provider's cost per consumer access, USD/hour, >= 0.
    f_s : platform's cost per infrastructure unit, USD/hour, >= 0.
    p_s : pay-as-you-go rental rate, USD/hour, > 0.
    """

    alpha: float
    beta: float
    gamma: float
    psi: float
    phi: float
    k1: float
    f_c: float
    k2: float = 1.0
    f_s: float = 23.7
    p_s: float = 36.0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "psi", "phi", "k1", "k2", "f_c", "f_s", "p_s"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite, got {getattr(self, name)!r}")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.beta <= 0.0:
            raise DomainError(f"beta must be positive, got {self.beta}")
        if self.alpha * self.beta >= ALPHA_BETA_CAP:
            raise DomainError(
                f"alpha*beta = {self.alpha * self.beta:.6g} exceeds cap {ALPHA_BETA_CAP}"
            )
        if self.gamma < 0.0:
            raise DomainError(f"gamma must be >= 0, got {self.gamma}")
        if self.psi < 0.0:
            raise DomainError(f"psi must be >= 0, got {self.psi}")
        if self.phi < 0.0:
            raise DomainError(f"phi must be >= 0, got {self.phi}")
        if self.k1 <= 0.0:
            raise DomainError(f"k1 must be > 0, got {self.k1}")
        if self.k2 <= 0.0:
            raise DomainError(f"k2 must be > 0, got {self.k2}")
        if self.f_c < 0.0:
            raise DomainError(f"f_c must be >= 0, got {self.f_c}")
        if self.f_s < 0.0:
            raise DomainError(f"f_s must be >= 0, got {self.f_s}")
        if self.p_s <= 0.0:
            raise DomainError(f"p_s must be > 0, got {self.p_s}")


@dataclass(frozen=True)
class Coefficients:
    """Composite exponents derived from one MarketParams.

    a1 = gamma - alpha*psi
    a2 = 1 - alpha*beta          (in (0, 1) for any valid MarketParams)
    a3 = psi - gamma*beta
    a4 = alpha*phi
    share_exp_a = (a4 - phi)/a2 + 1   (exponent of chi in the share equation)
    share_exp_b = (a1 + a3)/a2 - 1    (exponent of 1-chi in the share equation)
    """

    a1: float
    a2: float
    a3: float
    a4: float
    share_exp_a: float
    share_exp_b: float


def derive_coefficients(params: MarketParams) -> Coefficients:
    """Compute the composite exponents. Pure; same params give identical values."""
    a1 = params.gamma - params.alpha * params.psi
    a2 = 1.0 - params.alpha * params.beta
    a3 = params.psi - params.gamma * params.beta
    a4 = params.alpha * params.phi
    return Coefficients(
        a1=a1,
        a2=a2,
        a3=a3,
        a4=a4,
        share_exp_a=(a4 - params.phi) / a2 + 1.0,
        share_exp_b=(a1 + a3) / a2 - 1.0,
    )


@dataclass(frozen=True)
class MarketState:
    """One evaluated operating point of a provider/platform pair."""

    price: float
    share: float
    demand: float
    supply: float

    def __post_init__(self):
        if self.price <= 0.0:
            raise DomainError(f"price must be > 0, got {self.price}")
        if not 0.0 < self.share < 1.0:
            raise DomainError(f"share must lie in (0, 1), got {self.share}")
        if self.demand < 0.0:
            raise DomainError(f"demand must be >= 0, got {self.demand}")
        if self.supply < 0.0:
            raise DomainError(f"supply must be >= 0, got {self.supply}")


@dataclass(frozen=True)
class FeasibilityReport:
    """Existence conditions for the closed-form best responses.

    f1_price_positive : a1/(a1 - a2) > 0, the optimal price is positive.
    f2_price_max      : a1/a2 > 1, the provider's stationary price is a maximum.
    f3_share_max      : a4 + a2 - phi < 0, the platform's stationary share is a maximum.
    """

    f1_price_positive: bool
    f2_price_max: bool
    f3_share_max: bool
    all_ok: bool


def check_feasibility(params: MarketParams) -> FeasibilityReport:
    """Evaluate the three best-response existence conditions."""
    c = derive_coefficients(params)
    # a1 == a2 would make the price formula divide by zero; treat as failed.
    f1 = c.a1 != c.a2 and c.a1 / (c.a1 - c.a2) > 0.0
    f2 = c.a1 / c.a2 > 1.0
    f3 = c.a4 + c.a2 - params.phi < 0.0
    return FeasibilityReport(
        f1_price_positive=f1,
        f2_price_max=f2,
        f3_share_max=f3,
        all_ok=f1 and f2 and f3,
    )


# ---------------------------------------------------------------------------
# Log-space curve evaluations. The private helpers accept numpy arrays and do
# no validation; the public operations validate scalar preconditions and
# delegate. Everything downstream (scenario engines, sweeps) reuses the same
# helpers so there is exactly one implementation of each formula.
# ---------------------------------------------------------------------------


def _log_demand_primitive(log_price, log_supply, params: MarketParams):
    return np.log(params.k1) - params.gamma * log_price + params.alpha * log_supply


def _log_supply_primitive(log_share, log_price, log_demand, params: MarketParams):
    return (
        np.log(params.k2)
        + params.phi * log_share
        + params.psi * log_price
        + params.beta * log_demand
    )


def _log_demand_reduced(log_price, log_share, params: MarketParams, c: Coefficients):
    return (
        np.log(params.k1) + params.alpha * np.log(params.k2)
        - c.a1 * log_price + c.a4 * log_share
    ) / c.a2


def _log_supply_reduced(log_price, log_share, params: MarketParams, c: Coefficients):
    return (
        np.log(params.k2) + params.beta * np.log(params.k1)
        + c.a3 * log_price + params.phi * log_share
    ) / c.a2


def _require(cond: bool, msg: str):
    if not cond:
        raise DomainError(msg)


def consumer_demand_primitive(price: float, supply: float, params: MarketParams) -> float:
    """Consumer demand k1 * price^(-gamma) * supply^alpha."""
    _require(price > 0.0, f"price must be > 0, got {price}")
    _require(supply > 0.0, f"supply must be > 0, got {supply}")
    return float(np.exp(_log_demand_primitive(np.log(price), np.log(supply), params)))


def supply_primitive(share: float, price: float, demand: float, params: MarketParams) -> float:
    """Infrastructure supply k2 * share^phi * price^psi * demand^beta."""
    _require(0.0 < share < 1.0, f"share must lie in (0, 1), got {share}")
    _require(price > 0.0, f"price must be > 0, got {price}")
    _require(demand > 0.0, f"demand must be > 0, got {demand}")
    return float(np.exp(
        _log_supply_primitive(np.log(share), np.log(price), np.log(demand), params)
    ))


def demand_reduced(price: float, share: float, params: MarketParams) -> float:
    """Consumer demand as a function of (price, share) only.

    (k1 * k2^alpha * price^(-a1) * share^a4) ** (1/a2)
    """
    _require(price > 0.0, f"price must be > 0, got {price}")
    _require(0.0 < share < 1.0, f"share must lie in (0, 1), got {share}")
    c = derive_coefficients(params)
    return float(np.exp(_log_demand_reduced(np.log(price), np.log(share), params, c)))


def supply_reduced(price: float, share: float, params: MarketParams) -> float:
    """Infrastructure supply as a function of (price, share) only.

    (k2 * k1^beta * price^a3 * share^phi) ** (1/a2)
    """
    _require(price > 0.0, f"price must be > 0, got {price}")
    _require(0.0 < share < 1.0, f"share must lie in (0, 1), got {share}")
    c = derive_coefficients(params)
    return float(np.exp(_log_supply_reduced(np.log(price), np.log(share), params, c)))


def provider_payoff(price: float, share: float, params: MarketParams) -> float:
    """Provider surplus (price*(1-share) - f_c) * demand. May be negative."""
    return (price * (1.0 - share) - params.f_c) * demand_reduced(price, share, params)


def cloud_payoff(price: float, share: float, params: MarketParams) -> float:
    """Platform surplus price*share*demand - f_s*supply. May be negative."""
    _require(price > 0.0, f"price must be > 0, got {price}")
    _require(0.0 < share < 1.0, f"share must lie in (0, 1), got {share}")
    c = derive_coefficients(params)
    log_price = np.log(price)
    log_share = np.log(share)
    revenue = np.exp(
        log_price + log_share + _log_demand_reduced(log_price, log_share, params, c)
    )
    if params.f_s == 0.0:
        return float(revenue)
    cost = np.exp(
        np.log(params.f_s) + _log_supply_reduced(log_price, log_share, params, c)
    )
    return float(revenue - cost)
