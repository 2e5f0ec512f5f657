"""Population sampling and sensitivity sweeps.

A population is a group of providers drawn from the simulation setup's
distributions: truncated-normal list prices and supply externalities,
uniform demand elasticities and multipliers, fixed platform-side cost
constants. Sampling uses one Philox substream per provider (spawned from a
single seed sequence), so a population is fully determined by (seed, spec)
and unchanged by how much of it is consumed or on how many workers.

Sweeps rerun the business-model scenarios while stepping one parameter axis
(the externality product, the subsidizing factor, the demand elasticity, or
the demand multiplier) across the population, and aggregate each grid cell
into per-scenario means over its feasible records.
"""

from __future__ import annotations

import concurrent.futures
import dataclasses
import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import MarketParams
from .scenarios import (
    FIFTY_FIFTY,
    MODE_DECLARED_PRICE,
    MODES,
    PAY_AS_YOU_GO,
    SCENARIOS,
    TWO_SIDED,
    Provider,
    ScenarioRecord,
    run_fifty_fifty,
    run_pay_as_you_go,
    run_two_sided,
)

AXIS_ALPHA_BETA = "alpha_beta_product"
AXIS_PHI = "phi"
AXIS_GAMMA = "gamma"
AXIS_K1 = "k1"
AXES = (AXIS_ALPHA_BETA, AXIS_PHI, AXIS_GAMMA, AXIS_K1)

# Sweepable ranges; grids must stay inside these.
AXIS_RANGES = {
    AXIS_ALPHA_BETA: (0.1, 0.7),
    AXIS_PHI: (0.0, 5.0),
    AXIS_GAMMA: (0.0, 0.35),
    AXIS_K1: (0.1, 0.9),
}

THREADS_ENV_VAR = "TSM_THREADS"


class SamplingError(RuntimeError):
    """A truncated draw could not be satisfied within the attempt cap."""


@dataclass(frozen=True)
class PopulationSpec:
    """Distributional description of one provider population.

    psi is the supply price elasticity: a fixed value by default, or drawn
    uniformly from [psi_min, psi_max] when set to None.
    """

    n_providers: int = 300
    seed: int = 1729
    price_mean: float = 1.7
    price_sd: float = 0.5
    price_min: float = 0.2
    price_max: float = 3.2
    alpha_mean: float = 0.38
    alpha_sd: float = 0.1
    alpha_min: float = 0.1
    alpha_max: float = 0.7
    gamma_min: float = 0.1
    gamma_max: float = 0.35
    psi: float | None = 0.1
    psi_min: float = 0.0
    psi_max: float = 0.35
    phi: float = 1.5
    k1_min: float = 0.1
    k1_max: float = 0.9
    k2: float = 1.0
    f_s: float = 23.7
    p_s: float = 36.0
    f_c_factor: float = 0.66
    alpha_beta_cap: float = 0.999
    max_attempts: int = 1_000_000

    def __post_init__(self):
        if self.n_providers < 1:
            raise ValueError(f"n_providers must be >= 1, got {self.n_providers}")
        for lo_name, hi_name in (("price_min", "price_max"), ("alpha_min", "alpha_max"),
                                 ("gamma_min", "gamma_max"), ("psi_min", "psi_max"),
                                 ("k1_min", "k1_max")):
            if getattr(self, lo_name) > getattr(self, hi_name):
                raise ValueError(f"{lo_name} exceeds {hi_name}")
        if self.psi is not None and not 0.0 <= self.psi <= 0.35:
            raise ValueError(f"psi must lie in [0, 0.35], got {self.psi}")
        if not 0.0 <= self.phi <= 5.0:
            raise ValueError(f"phi must lie in [0, 5], got {self.phi}")


def _truncated(draw, lo: float, hi: float, cap: int, name: str) -> float:
    for _ in range(cap):
        x = draw()
        if lo <= x <= hi:
            return float(x)
    raise SamplingError(f"could not draw {name} inside [{lo}, {hi}] in {cap} attempts")


def sample_providers(spec: PopulationSpec) -> list[Provider]:
    """Draw the full provider group, one Philox substream per provider."""
    children = np.random.SeedSequence(spec.seed).spawn(spec.n_providers)
    cap = spec.max_attempts
    providers = []
    for i, seq in enumerate(children):
        rng = np.random.Generator(np.random.Philox(seq))
        price = _truncated(lambda: rng.normal(spec.price_mean, spec.price_sd),
                           spec.price_min, spec.price_max, cap, "price")
        alpha = _truncated(lambda: rng.normal(spec.alpha_mean, spec.alpha_sd),
                           spec.alpha_min, spec.alpha_max, cap, "alpha")

        def draw_beta():
            b = rng.uniform(0.0, 1.0 / alpha)
            # reject zero and products beyond the validation cap
            return b if 0.0 < alpha * b <= spec.alpha_beta_cap else float("nan")

        beta = _truncated(draw_beta, 0.0, float("inf"), cap, "beta")
        gamma = float(rng.uniform(spec.gamma_min, spec.gamma_max))
        psi = spec.psi if spec.psi is not None else float(
            rng.uniform(spec.psi_min, spec.psi_max))
        k1 = float(rng.uniform(spec.k1_min, spec.k1_max))
        params = MarketParams(
            alpha=alpha, beta=beta, gamma=gamma, psi=psi, phi=spec.phi,
            k1=k1, k2=spec.k2, f_c=spec.f_c_factor * price,
            f_s=spec.f_s, p_s=spec.p_s,
        )
        providers.append(Provider(provider_id=i, params=params, declared_price=price))
    return providers


def sample_population(spec: PopulationSpec) -> list[MarketParams]:
    """The sampled parameter sets alone (ids and prices stripped)."""
    return [p.params for p in sample_providers(spec)]


# ---------------------------------------------------------------------------
# Sweeps.
# ---------------------------------------------------------------------------


def default_grid(axis: str) -> tuple[float, ...]:
    if axis == AXIS_ALPHA_BETA:
        return tuple(round(0.1 + 0.05 * i, 4) for i in range(13))
    if axis == AXIS_PHI:
        return (0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0)
    if axis == AXIS_GAMMA:
        return tuple(round(0.05 * i, 4) for i in range(8))
    if axis == AXIS_K1:
        return tuple(round(0.1 + 0.1 * i, 4) for i in range(9))
    raise ValueError(f"unknown axis {axis!r}")


DEFAULT_PHI_LEVELS = (0.5, 1.0, 1.5, 2.0, 5.0)


@dataclass(frozen=True)
class SweepSpec:
    """One sensitivity sweep: an axis, its grid, and what to run per cell."""

    axis: str
    grid: tuple[float, ...] = ()
    phi_levels: tuple[float, ...] = DEFAULT_PHI_LEVELS
    scenarios: tuple[str, ...] = SCENARIOS
    population: PopulationSpec = field(default_factory=PopulationSpec)
    mode: str = MODE_DECLARED_PRICE

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"unknown axis {self.axis!r}; expected one of {AXES}")
        grid = tuple(self.grid) or default_grid(self.axis)
        object.__setattr__(self, "grid", grid)
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("axis grid must be strictly increasing")
        lo, hi = AXIS_RANGES[self.axis]
        if grid[0] < lo or grid[-1] > hi:
            raise ValueError(f"{self.axis} grid must lie within [{lo}, {hi}]")
        for s in self.scenarios:
            if s not in SCENARIOS:
                raise ValueError(f"unknown scenario {s!r}")
        if not self.scenarios:
            raise ValueError("scenario set must be non-empty")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class SweepSeries:
    """Aggregates of one sweep cell (axis value x phi level x scenario).

    Means are over the cell's feasible records; a cell with no feasible
    record keeps them as None rather than aggregating over nothing.
    mean_share is None for pay_as_you_go, where no share exists.
    """

    axis: str
    axis_value: float
    scenario: str
    phi_level: float
    n_providers: int
    feasible_count: int
    mean_cloud_payoff: float | None
    mean_provider_payoff: float | None
    mean_demand: float | None
    mean_supply: float | None
    mean_share: float | None


def worker_count(explicit: int | None = None) -> int:
    """Resolve the worker cap: explicit argument, else TSM_THREADS, else auto."""
    if explicit is None:
        raw = os.environ.get(THREADS_ENV_VAR, "0")
        try:
            explicit = int(raw)
        except ValueError:
            raise ValueError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}")
    if explicit < 0:
        raise ValueError(f"worker count must be >= 0, got {explicit}")
    return explicit if explicit > 0 else (os.cpu_count() or 1)


def _override_providers(providers: Sequence[Provider], axis: str, value: float,
                        phi_level: float) -> list[Provider]:
    out = []
    for p in providers:
        changes = {"phi": phi_level}
        if axis == AXIS_ALPHA_BETA:
            changes["beta"] = value / p.params.alpha
        elif axis == AXIS_GAMMA:
            changes["gamma"] = value
        elif axis == AXIS_K1:
            changes["k1"] = value
        # AXIS_PHI carries the value through phi_level itself.
        out.append(dataclasses.replace(
            p, params=dataclasses.replace(p.params, **changes)))
    return out


def _run_scenario(providers: Sequence[Provider], scenario: str,
                  mode: str) -> list[ScenarioRecord]:
    if scenario == TWO_SIDED:
        return run_two_sided(providers, mode=mode)
    if scenario == FIFTY_FIFTY:
        return run_fifty_fifty(providers)
    if scenario == PAY_AS_YOU_GO:
        return run_pay_as_you_go(providers)
    raise ValueError(f"unknown scenario {scenario!r}")


def _aggregate_cell(axis: str, value: float, phi_level: float, scenario: str,
                    records: Sequence[ScenarioRecord]) -> SweepSeries:
    feasible = [r for r in records if r.feasible]

    def mean_of(getter):
        vals = [getter(r) for r in feasible]
        vals = [v for v in vals if v is not None]
        return float(np.mean(vals)) if vals else None

    return SweepSeries(
        axis=axis,
        axis_value=value,
        scenario=scenario,
        phi_level=phi_level,
        n_providers=len(records),
        feasible_count=len(feasible),
        mean_cloud_payoff=mean_of(lambda r: r.cloud_payoff) if feasible else None,
        mean_provider_payoff=mean_of(lambda r: r.provider_payoff) if feasible else None,
        mean_demand=mean_of(lambda r: r.demand) if feasible else None,
        mean_supply=mean_of(lambda r: r.supply) if feasible else None,
        mean_share=mean_of(lambda r: r.share) if feasible else None,
    )


def _run_cell(args) -> SweepSeries:
    providers, axis, value, phi_level, scenario, mode = args
    overridden = _override_providers(providers, axis, value, phi_level)
    records = _run_scenario(overridden, scenario, mode)
    return _aggregate_cell(axis, value, phi_level, scenario, records)


def run_sweep(spec: SweepSpec, threads: int | None = None) -> list[SweepSeries]:
    """Execute a sweep and return its cells in deterministic order.

    Cells are independent and may run on a process pool (capped by the
    `threads` argument or TSM_THREADS); results are sorted by
    (axis_value, scenario, phi_level) so the worker count never changes
    the output.
    """
    providers = sample_providers(spec.population)
    levels = spec.grid if spec.axis == AXIS_PHI else spec.phi_levels
    tasks = []
    for value in spec.grid:
        cell_levels = (value,) if spec.axis == AXIS_PHI else levels
        for phi_level in cell_levels:
            for scenario in spec.scenarios:
                tasks.append((providers, spec.axis, value, phi_level, scenario,
                              spec.mode))

    n_workers = worker_count(threads)
    if n_workers <= 1 or len(tasks) <= 1:
        results = [_run_cell(t) for t in tasks]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=n_workers) as pool:
            results = list(pool.map(_run_cell, tasks, chunksize=4))
    results.sort(key=lambda s: (s.axis_value, s.scenario, s.phi_level))
    return results


def sweep_externalities(spec: SweepSpec, threads: int | None = None) -> list[SweepSeries]:
    """Sweep the externality product: per grid value g, each provider's beta
    is re-derived as g / alpha so the product is exactly g population-wide."""
    if spec.axis != AXIS_ALPHA_BETA:
        spec = dataclasses.replace(spec, axis=AXIS_ALPHA_BETA)
    return run_sweep(spec, threads=threads)


def sweep_phi(spec: SweepSpec, threads: int | None = None) -> list[SweepSeries]:
    """Sweep the subsidizing factor, fixed across the population per cell."""
    if spec.axis != AXIS_PHI:
        spec = dataclasses.replace(spec, axis=AXIS_PHI)
    return run_sweep(spec, threads=threads)


def sweep_gamma(spec: SweepSpec, threads: int | None = None) -> list[SweepSeries]:
    """Sweep the consumer demand elasticity."""
    if spec.axis != AXIS_GAMMA:
        spec = dataclasses.replace(spec, axis=AXIS_GAMMA)
    return run_sweep(spec, threads=threads)


def sweep_k1(spec: SweepSpec, threads: int | None = None) -> list[SweepSeries]:
    """Sweep the demand multiplier."""
    if spec.axis != AXIS_K1:
        spec = dataclasses.replace(spec, axis=AXIS_K1)
    return run_sweep(spec, threads=threads)
