"""The three business-model runs over a population of providers.

* two_sided: the revenue-sharing game. In `equilibrium` mode each provider's
  game is solved by backward induction; in `declared-price` mode the
  provider's sampled list price is held fixed and the platform picks its
  share by numerical maximization of its payoff.
* fifty_fifty: the egalitarian split. The share is pinned at 0.5, the
  subsidizing factor at 1, and the provider prices against that split.
* pay_as_you_go: the incumbent rental model. The provider rents
  infrastructure at the flat rate p_s and keeps all service revenue; the
  rented amount is the provider's own optimum.

Every record keeps the exact parameter snapshot it was computed under, so
any downstream consumer can re-derive demand/supply/payoffs from the record
alone.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import (
    Coefficients,
    MarketParams,
    check_feasibility,
    consumer_demand_primitive,
    demand_reduced,
    supply_reduced,
)
from .core import cloud_payoff as _cloud_payoff_scalar
from .core import provider_payoff as _provider_payoff_scalar
from .equilibrium import _cloud_payoff_arr, _golden_max, provider_best_price, stackelberg_solve

TWO_SIDED = "two_sided"
FIFTY_FIFTY = "fifty_fifty"
PAY_AS_YOU_GO = "pay_as_you_go"
SCENARIOS = (TWO_SIDED, FIFTY_FIFTY, PAY_AS_YOU_GO)

MODE_EQUILIBRIUM = "equilibrium"
MODE_DECLARED_PRICE = "declared-price"
MODES = (MODE_EQUILIBRIUM, MODE_DECLARED_PRICE)

SHARE_TOL = 1e-8  # golden-section tolerance for the declared-price share


class PopulationMismatchError(ValueError):
    """Scenario record sets being compared came from different populations."""


@dataclass(frozen=True)
class Provider:
    """One data-service provider: stable id, parameters, and list price.

    The declared price is the price the provider would announce on its own
    (pay-as-you-go, and the declared-price variant of the two-sided run);
    the equilibrium runs replace it with a best response.
    """

    provider_id: int
    params: MarketParams
    declared_price: float


@dataclass(frozen=True)
class ScenarioRecord:
    """Per-provider outcome under one business model."""

    provider_id: int
    scenario: str
    params: MarketParams
    price: float | None
    share: float | None
    demand: float | None
    supply: float | None
    provider_payoff: float
    cloud_payoff: float
    feasible: bool


@dataclass(frozen=True)
class QuantityStats:
    mean: float
    median: float
    total: float


@dataclass(frozen=True)
class ScenarioStats:
    """Aggregates over the feasible records of one scenario."""

    scenario: str
    n: int
    n_feasible: int
    feasible_fraction: float
    provider_payoff: QuantityStats | None
    cloud_payoff: QuantityStats | None
    demand: QuantityStats | None
    supply: QuantityStats | None
    share: QuantityStats | None


def _infeasible_record(provider: Provider, scenario: str, params: MarketParams,
                       share: float | None = None) -> ScenarioRecord:
    # Infeasible draws are retained with zeroed payoffs so sweeps can count them.
    return ScenarioRecord(
        provider_id=provider.provider_id,
        scenario=scenario,
        params=params,
        price=None,
        share=share,
        demand=None,
        supply=None,
        provider_payoff=0.0,
        cloud_payoff=0.0,
        feasible=False,
    )


# ---------------------------------------------------------------------------
# Declared-price share maximization, vectorized across providers.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _ParamColumns:
    """Per-provider parameter vectors with the attribute names the core
    log-space helpers expect, so the scalar formulas broadcast unchanged."""

    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray
    psi: np.ndarray
    phi: np.ndarray
    k1: np.ndarray
    k2: np.ndarray
    f_c: np.ndarray
    f_s: np.ndarray

    @classmethod
    def from_params(cls, params: Sequence[MarketParams]) -> "_ParamColumns":
        cols = {
            name: np.array([getattr(p, name) for p in params], dtype=float)
            for name in ("alpha", "beta", "gamma", "psi", "phi", "k1", "k2", "f_c", "f_s")
        }
        return cls(**cols)

    def column_view(self) -> "_ParamColumns":
        return _ParamColumns(**{
            f.name: getattr(self, f.name)[:, None] for f in dataclasses.fields(self)
        })


def _coefficient_columns(cols: _ParamColumns) -> Coefficients:
    a1 = cols.gamma - cols.alpha * cols.psi
    a2 = 1.0 - cols.alpha * cols.beta
    a3 = cols.psi - cols.gamma * cols.beta
    a4 = cols.alpha * cols.phi
    return Coefficients(
        a1=a1, a2=a2, a3=a3, a4=a4,
        share_exp_a=(a4 - cols.phi) / a2 + 1.0,
        share_exp_b=(a1 + a3) / a2 - 1.0,
    )


_SHARE_SCAN = np.unique(np.concatenate([
    np.geomspace(1e-9, 0.5, 256),
    1.0 - np.geomspace(1e-9, 0.5, 256),
    np.linspace(1e-9, 1.0 - 1e-9, 256),
]))


def _declared_share_argmax(prices: np.ndarray, cols: _ParamColumns) -> np.ndarray:
    """Per provider, the share maximizing the platform payoff at a fixed price.

    Coarse scan over (eps, 1-eps) followed by golden-section refinement to
    SHARE_TOL inside the bracketing cells. The payoff is single-peaked or
    monotone in the share, so the scan cell around the coarse argmax always
    brackets the maximum.
    """
    coefs2 = _coefficient_columns(cols.column_view())
    pay = _cloud_payoff_arr(prices[:, None], _SHARE_SCAN[None, :],
                            cols.column_view(), coefs2)
    j = np.argmax(pay, axis=1)
    lo = _SHARE_SCAN[np.maximum(j - 1, 0)]
    hi = _SHARE_SCAN[np.minimum(j + 1, _SHARE_SCAN.size - 1)]

    coefs = _coefficient_columns(cols)

    def payoff(share):
        return _cloud_payoff_arr(prices, share, cols, coefs)

    refined = _golden_max(payoff, lo, hi, iters=48)
    coarse = _SHARE_SCAN[j]
    return np.where(payoff(refined) >= payoff(coarse), refined, coarse)


# ---------------------------------------------------------------------------
# Scenario runners.
# ---------------------------------------------------------------------------


def run_two_sided(providers: Sequence[Provider],
                  mode: str = MODE_EQUILIBRIUM) -> list[ScenarioRecord]:
    """Run the revenue-sharing model for every provider.

    equilibrium mode solves each provider's game in full; declared-price
    mode keeps the sampled price and lets the platform optimize its share
    against it. Records come back sorted by provider_id.
    """
    if not providers:
        raise ValueError("population must be non-empty")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    ordered = sorted(providers, key=lambda p: p.provider_id)

    records = []
    if mode == MODE_EQUILIBRIUM:
        for prov in ordered:
            res = stackelberg_solve(prov.params)
            if not res.feasible:
                records.append(_infeasible_record(prov, TWO_SIDED, prov.params))
                continue
            records.append(ScenarioRecord(
                provider_id=prov.provider_id,
                scenario=TWO_SIDED,
                params=prov.params,
                price=res.price_star,
                share=res.share_star,
                demand=res.demand,
                supply=res.supply,
                provider_payoff=res.provider_payoff,
                cloud_payoff=res.cloud_payoff,
                feasible=True,
            ))
        return records

    prices = np.array([p.declared_price for p in ordered], dtype=float)
    cols = _ParamColumns.from_params([p.params for p in ordered])
    shares = _declared_share_argmax(prices, cols)
    for prov, price, share in zip(ordered, prices, shares):
        share = float(share)
        records.append(ScenarioRecord(
            provider_id=prov.provider_id,
            scenario=TWO_SIDED,
            params=prov.params,
            price=float(price),
            share=share,
            demand=demand_reduced(price, share, prov.params),
            supply=supply_reduced(price, share, prov.params),
            provider_payoff=_provider_payoff_scalar(price, share, prov.params),
            cloud_payoff=_cloud_payoff_scalar(price, share, prov.params),
            feasible=True,
        ))
    return records


def run_fifty_fifty(providers: Sequence[Provider]) -> list[ScenarioRecord]:
    """Run the egalitarian split: share 0.5, subsidizing factor 1.

    The provider prices optimally against the fixed split; supply and demand
    follow from the reduced forms at (price, 0.5). Draws where the price
    response does not exist are flagged infeasible.
    """
    if not providers:
        raise ValueError("population must be non-empty")
    records = []
    for prov in sorted(providers, key=lambda p: p.provider_id):
        params = dataclasses.replace(prov.params, phi=1.0)
        report = check_feasibility(params)
        if not (report.f1_price_positive and report.f2_price_max):
            records.append(_infeasible_record(prov, FIFTY_FIFTY, params, share=0.5))
            continue
        price = provider_best_price(0.5, params)
        records.append(ScenarioRecord(
            provider_id=prov.provider_id,
            scenario=FIFTY_FIFTY,
            params=params,
            price=price,
            share=0.5,
            demand=demand_reduced(price, 0.5, params),
            supply=supply_reduced(price, 0.5, params),
            provider_payoff=_provider_payoff_scalar(price, 0.5, params),
            cloud_payoff=_cloud_payoff_scalar(price, 0.5, params),
            feasible=True,
        ))
    return records


def payg_supply(price: float, params: MarketParams) -> float:
    """The provider's optimal rented infrastructure under flat-rate pricing.

    (p_s / (alpha * k1 * (price - f_c) * price^(-gamma))) ** (1/(alpha-1)),
    evaluated in log space. Requires price > f_c and alpha != 1.
    """
    margin = price - params.f_c
    if margin <= 0.0:
        raise ValueError(f"price {price} does not cover f_c {params.f_c}")
    log_base = (
        math.log(params.p_s) - math.log(params.alpha) - math.log(params.k1)
        - math.log(margin) + params.gamma * math.log(price)
    )
    return math.exp(log_base / (params.alpha - 1.0))


def run_pay_as_you_go(providers: Sequence[Provider]) -> list[ScenarioRecord]:
    """Run the flat-rate rental model at each provider's declared price.

    Draws whose price does not cover the per-access cost have no valid
    rental optimum and are flagged infeasible. Share is not applicable.
    """
    if not providers:
        raise ValueError("population must be non-empty")
    records = []
    for prov in sorted(providers, key=lambda p: p.provider_id):
        params = prov.params
        price = prov.declared_price
        if price <= params.f_c:
            records.append(_infeasible_record(prov, PAY_AS_YOU_GO, params))
            continue
        supply = payg_supply(price, params)
        demand = consumer_demand_primitive(price, supply, params)
        records.append(ScenarioRecord(
            provider_id=prov.provider_id,
            scenario=PAY_AS_YOU_GO,
            params=params,
            price=price,
            share=None,
            demand=demand,
            supply=supply,
            provider_payoff=(price - params.f_c) * demand - params.p_s * supply,
            cloud_payoff=(params.p_s - params.f_s) * supply,
            feasible=True,
        ))
    return records


# ---------------------------------------------------------------------------
# Cross-scenario comparison.
# ---------------------------------------------------------------------------


def _quantity_stats(values: list[float]) -> QuantityStats | None:
    if not values:
        return None
    arr = np.array(values, dtype=float)
    return QuantityStats(mean=float(arr.mean()), median=float(np.median(arr)),
                         total=float(arr.sum()))


def summarize_records(records: Sequence[ScenarioRecord]) -> ScenarioStats:
    """Aggregate one scenario's records over its feasible subset."""
    scenario = records[0].scenario if records else ""
    feasible = [r for r in records if r.feasible]
    return ScenarioStats(
        scenario=scenario,
        n=len(records),
        n_feasible=len(feasible),
        feasible_fraction=len(feasible) / len(records) if records else 0.0,
        provider_payoff=_quantity_stats([r.provider_payoff for r in feasible]),
        cloud_payoff=_quantity_stats([r.cloud_payoff for r in feasible]),
        demand=_quantity_stats([r.demand for r in feasible]),
        supply=_quantity_stats([r.supply for r in feasible]),
        share=_quantity_stats([r.share for r in feasible if r.share is not None]),
    )


def compare_scenarios(records: Iterable[ScenarioRecord]) -> dict[str, ScenarioStats]:
    """Group records by scenario and aggregate each group.

    All scenarios must have been run over the same population (same provider
    ids); anything else raises PopulationMismatchError.
    """
    by_tag: dict[str, list[ScenarioRecord]] = {}
    for rec in records:
        by_tag.setdefault(rec.scenario, []).append(rec)
    if not by_tag:
        raise ValueError("no records to compare")
    id_sets = {tag: sorted(r.provider_id for r in recs) for tag, recs in by_tag.items()}
    reference = next(iter(id_sets.values()))
    for tag, ids in id_sets.items():
        if ids != reference:
            raise PopulationMismatchError(
                f"scenario {tag!r} covers a different provider set"
            )
    return {tag: summarize_records(recs) for tag, recs in sorted(by_tag.items())}
