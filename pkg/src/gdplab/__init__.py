"""Multi-sector toy economy and real-GDP measurement laboratory."""

from .econ import (
    DomainError,
    EconomyConfig,
    EquilibriumState,
    InfeasibleSubsistence,
    SectorSpec,
    allocate_labor,
    capital_per_effective_labor,
    long_run_price,
    output_per_effective_labor,
    solve_equilibrium,
    utility_value,
)
from .measurement import (
    Chained,
    FixedBase,
    GrowthSeries,
    LaggedBase,
    YearRecord,
    common_price_comparison,
    cumulative_factor,
    gdp_at_base,
    geometric_mean_growth,
    growth_rate,
    growth_series,
)
from .paths import (
    ConstantRate,
    RampDown,
    RampUp,
    SimulationRun,
    Table,
    curl_asymmetry,
    decomposition_check,
    deflator_path_integral,
    simulate,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "EconomyConfig",
    "EquilibriumState",
    "InfeasibleSubsistence",
    "SectorSpec",
    "allocate_labor",
    "capital_per_effective_labor",
    "long_run_price",
    "output_per_effective_labor",
    "solve_equilibrium",
    "utility_value",
    "Chained",
    "FixedBase",
    "GrowthSeries",
    "LaggedBase",
    "YearRecord",
    "common_price_comparison",
    "cumulative_factor",
    "gdp_at_base",
    "geometric_mean_growth",
    "growth_rate",
    "growth_series",
    "ConstantRate",
    "RampDown",
    "RampUp",
    "SimulationRun",
    "Table",
    "curl_asymmetry",
    "decomposition_check",
    "deflator_path_integral",
    "simulate",
]
