"""Growth rate implied by stable saving, labor share and return on capital."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .econ import EconomyConfig, EquilibriumState

__all__ = [
    "StylizedFacts",
    "capital_output_ratio",
    "investment_interval",
    "sustainable_growth",
    "new_output_value",
    "capital_weighted_depreciation",
]


@dataclass(frozen=True)
class StylizedFacts:
    labor_share: float
    saving_rate: float
    rate_of_return: float
    mean_depreciation: float
    tech_growth: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.labor_share < 1.0:
            raise ValueError(f"labor_share must lie in (0, 1), got {self.labor_share}")
        if not 0.0 <= self.saving_rate < 1.0:
            raise ValueError(f"saving_rate must lie in [0, 1), got {self.saving_rate}")
        if self.rate_of_return + self.mean_depreciation <= 0.0:
            raise ValueError("rate_of_return + mean_depreciation must be > 0")
        if self.tech_growth < 0.0:
            raise ValueError(f"tech_growth must be >= 0, got {self.tech_growth}")

    @property
    def user_cost(self) -> float:
        return self.rate_of_return + self.mean_depreciation


def capital_output_ratio(facts: StylizedFacts) -> float:
    return (1.0 - facts.labor_share) / facts.user_cost


def investment_interval(facts: StylizedFacts) -> float:
    """Years of saving needed to fund the capital that a tech jump ``G`` requires."""
    if facts.saving_rate <= 0.0:
        raise ValueError("investment interval needs a positive saving rate")
    return facts.tech_growth * (1.0 - facts.labor_share) / (facts.saving_rate * facts.user_cost)


def sustainable_growth(facts: StylizedFacts) -> float:
    """Measured growth ``S (R + delta) / (1 - LS)``; does not depend on ``tech_growth``."""
    return facts.saving_rate * facts.user_cost / (1.0 - facts.labor_share)


def new_output_value(facts: StylizedFacts, output: float) -> float:
    """Value of new production when one year's savings ``S*Q`` is invested.

    New capital earns ``R + delta`` and new labor is paid so that the labor
    share is preserved, so the added output is worth
    ``(R + delta) / (1 - LS) * S * Q``.
    """
    new_capital_income = facts.saving_rate * output * facts.user_cost
    new_labor_income = facts.labor_share / (1.0 - facts.labor_share) * new_capital_income
    return new_capital_income + new_labor_income


def capital_weighted_depreciation(config: EconomyConfig, state: EquilibriumState) -> float:
    """Mean depreciation rate weighted by the money value of each sector's capital."""
    deltas = np.array([s.delta for s in config.sectors])
    value = state.capital_units * state.price
    return float(np.dot(deltas, value) / value.sum())
