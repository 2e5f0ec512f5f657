"""Two-sided cloud data-market simulator.

A numerical game-theory library for a market where a cloud platform
(leader) hosts data-service providers (followers), shares their revenue,
and supplies the infrastructure their consumers' demand rides on. Includes
closed-form Stackelberg equilibria with brute-force verification oracles,
three business-model scenarios, population sampling, and sensitivity
sweeps.
"""

from .core import (
    Coefficients,
    DomainError,
    FeasibilityReport,
    InfeasibilityError,
    MarketParams,
    MarketState,
    check_feasibility,
    cloud_payoff,
    consumer_demand_primitive,
    demand_reduced,
    derive_coefficients,
    provider_payoff,
    supply_primitive,
    supply_reduced,
)
from .equilibrium import (
    EquilibriumResult,
    OracleEquilibrium,
    SecondOrderReport,
    ShareEquation,
    ShareSolution,
    build_share_equation,
    first_order_residuals,
    oracle_equilibrium,
    provider_best_price,
    second_order_check,
    solve_share,
    stackelberg_solve,
)
from .population import (
    PopulationSpec,
    SweepSeries,
    SweepSpec,
    run_sweep,
    sample_population,
    sample_providers,
    sweep_externalities,
    sweep_gamma,
    sweep_k1,
    sweep_phi,
)
from .scenarios import (
    Provider,
    ScenarioRecord,
    ScenarioStats,
    compare_scenarios,
    payg_supply,
    run_fifty_fifty,
    run_pay_as_you_go,
    run_two_sided,
    summarize_records,
)

__version__ = "0.1.0"
