"""Closed-form competitive equilibrium for an M-sector toy economy.

Each sector produces with Cobb-Douglas technology

    Y_a = (T_a L_a)^lambda_a * N_a^(1 - lambda_a)

where ``N_a`` is physical capital held in units of the sector's own good.
Capital always sits at the level where its marginal product covers the
rate of return plus depreciation, wages are common across sectors, and the
long-run price of every good adjusts so that the labor first-order
condition holds. Households have generalized Stone-Geary preferences

    U = prod_a (x_a - N0_a)^Omega_a

over per-capita consumption ``x_a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import NamedTuple, Sequence

import numpy as np

__all__ = [
    "DomainError",
    "InfeasibleSubsistence",
    "SectorSpec",
    "EconomyConfig",
    "EquilibriumState",
    "UtilityValue",
    "production",
    "output_per_effective_labor",
    "capital_per_effective_labor",
    "long_run_price",
    "subsistence_shares",
    "allocate_labor",
    "solve_equilibrium",
    "utility_value",
]


class DomainError(ValueError):
    """A parameter lies outside the domain where the model is defined."""


class InfeasibleSubsistence(ValueError):
    """The economy cannot produce the minimum consumption basket.

    ``year`` is filled in by the simulator when the failure happens part
    way through a run.
    """

    def __init__(self, message: str, year: int | None = None):
        super().__init__(message)
        self.year = year

    def __str__(self) -> str:
        msg = super().__str__()
        if self.year is not None:
            return f"year {self.year}: {msg}"
        return msg


@dataclass(frozen=True)
class SectorSpec:
    """Technology and preference parameters of one sector."""

    name: str
    lam: float = 2.0 / 3.0
    delta: float = 0.055
    subsistence: float = 0.0
    omega: float = 1.0
    tech: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.lam < 1.0:
            raise DomainError(f"sector {self.name!r}: lambda must lie in (0, 1), got {self.lam}")
        if self.tech <= 0.0:
            raise DomainError(f"sector {self.name!r}: tech must be > 0, got {self.tech}")
        if self.omega <= 0.0:
            raise DomainError(f"sector {self.name!r}: omega must be > 0, got {self.omega}")
        if self.subsistence < 0.0:
            raise DomainError(f"sector {self.name!r}: subsistence must be >= 0, got {self.subsistence}")
        if self.delta < 0.0:
            raise DomainError(f"sector {self.name!r}: delta must be >= 0, got {self.delta}")


@dataclass(frozen=True)
class EconomyConfig:
    sectors: tuple[SectorSpec, ...]
    total_labor: float = 100_000.0
    rate_of_return: float = 0.055
    wage: float = 200.0

    def __post_init__(self):
        object.__setattr__(self, "sectors", tuple(self.sectors))
        if not self.sectors:
            raise DomainError("economy needs at least one sector")
        names = [s.name for s in self.sectors]
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate sector names: {names}")
        if self.total_labor <= 0.0:
            raise DomainError(f"total_labor must be > 0, got {self.total_labor}")
        if self.rate_of_return <= 0.0:
            raise DomainError(f"rate_of_return must be > 0, got {self.rate_of_return}")
        if self.wage <= 0.0:
            raise DomainError(f"wage must be > 0, got {self.wage}")
        for s in self.sectors:
            if self.rate_of_return + s.delta <= 0.0:
                raise DomainError(f"sector {s.name!r}: rate_of_return + delta must be > 0")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.sectors)

    @property
    def techs(self) -> np.ndarray:
        return np.array([s.tech for s in self.sectors])

    def with_techs(self, techs: Sequence[float]) -> "EconomyConfig":
        """Copy of this economy with the productivity levels replaced."""
        if len(techs) != len(self.sectors):
            raise ValueError(f"expected {len(self.sectors)} tech levels, got {len(techs)}")
        sectors = tuple(replace(s, tech=float(t)) for s, t in zip(self.sectors, techs))
        return replace(self, sectors=sectors)

    def with_wage(self, wage: float) -> "EconomyConfig":
        return replace(self, wage=float(wage))


@dataclass(frozen=True)
class EquilibriumState:
    """Per-sector allocation, output and prices at the long-run equilibrium."""

    names: tuple[str, ...]
    tech: np.ndarray
    labor: np.ndarray
    capital_units: np.ndarray
    output: np.ndarray
    price: np.ndarray
    wage: float
    nominal_gdp: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "nominal_gdp", float(np.dot(self.output, self.price)))

    @property
    def labor_shares(self) -> np.ndarray:
        return self.labor / self.labor.sum()


def _check_domain(lam: float, delta: float, rate_of_return: float) -> None:
    if not 0.0 < lam < 1.0:
        raise DomainError(f"lambda must lie in (0, 1), got {lam}")
    if rate_of_return + delta <= 0.0:
        raise DomainError(f"rate_of_return + delta must be > 0, got {rate_of_return + delta}")


def production(tech, labor, capital, lam):
    """Cobb-Douglas output ``(T L)^lam N^(1-lam)``; broadcasts over arrays."""
    return (np.asarray(tech) * labor) ** lam * np.asarray(capital) ** (1.0 - lam)


def output_per_effective_labor(lam: float, delta: float, rate_of_return: float) -> float:
    """Output per unit of effective labor ``T*L`` when capital is at its optimum.

    Equal to ``((1 - lam) / (R + delta)) ** ((1 - lam) / lam)``.
    """
    _check_domain(lam, delta, rate_of_return)
    return ((1.0 - lam) / (rate_of_return + delta)) ** ((1.0 - lam) / lam)


def capital_per_effective_labor(lam: float, delta: float, rate_of_return: float) -> float:
    """Physical capital per unit of effective labor at the optimum."""
    _check_domain(lam, delta, rate_of_return)
    return ((1.0 - lam) / (rate_of_return + delta)) ** (1.0 / lam)


def long_run_price(wage: float, lam: float, tech: float, delta: float, rate_of_return: float) -> float:
    """Price at which the marginal revenue product of labor equals the wage."""
    if wage <= 0.0:
        raise DomainError(f"wage must be > 0, got {wage}")
    if tech <= 0.0:
        raise DomainError(f"tech must be > 0, got {tech}")
    return wage / (lam * tech * output_per_effective_labor(lam, delta, rate_of_return))


def subsistence_shares(config: EconomyConfig) -> np.ndarray:
    """Fraction of the labor force each sector needs to cover its subsistence need."""
    r = config.rate_of_return
    return np.array(
        [s.subsistence / (s.tech * output_per_effective_labor(s.lam, s.delta, r)) for s in config.sectors]
    )


def allocate_labor(config: EconomyConfig) -> np.ndarray:
    """Equilibrium labor in each sector.

    Every sector first receives the labor needed to produce its subsistence
    quantity for the whole population; the rest of the workforce is split in
    proportion to ``lam_a * omega_a``.

    Raises
    ------
    InfeasibleSubsistence
        If the subsistence needs alone absorb the whole labor force.
    """
    s = subsistence_shares(config)
    slack = 1.0 - s.sum()
    if slack <= 0.0:
        raise InfeasibleSubsistence(
            f"subsistence needs require {s.sum():.6g} of the labor force (must be < 1)"
        )
    weights = np.array([sec.lam * sec.omega for sec in config.sectors])
    return config.total_labor * (s + weights * slack / weights.sum())


def solve_equilibrium(config: EconomyConfig) -> EquilibriumState:
    labor = allocate_labor(config)
    r = config.rate_of_return
    tech = config.techs
    per_output = np.array([output_per_effective_labor(s.lam, s.delta, r) for s in config.sectors])
    per_capital = np.array([capital_per_effective_labor(s.lam, s.delta, r) for s in config.sectors])
    lam = np.array([s.lam for s in config.sectors])
    return EquilibriumState(
        names=config.names,
        tech=tech,
        labor=labor,
        capital_units=tech * labor * per_capital,
        output=tech * labor * per_output,
        price=config.wage / (lam * tech * per_output),
        wage=config.wage,
    )


class UtilityValue(NamedTuple):
    value: float
    below_subsistence: bool


def utility_value(consumption: Sequence[float], sectors: Sequence[SectorSpec]) -> UtilityValue:
    """Stone-Geary utility of a per-capita consumption bundle.

    Sectors consumed below their subsistence level contribute a negative
    factor ``-|x - N0|^omega`` and set the ``below_subsistence`` flag; no
    exception is raised so grid searches can score infeasible points.
    """
    x = np.asarray(consumption, dtype=float)
    if x.shape != (len(sectors),):
        raise ValueError(f"expected {len(sectors)} quantities, got shape {x.shape}")
    n0 = np.array([s.subsistence for s in sectors])
    omega = np.array([s.omega for s in sectors])
    surplus = x - n0
    below = bool(np.any(surplus < 0.0))
    factors = np.sign(surplus) * np.abs(surplus) ** omega
    return UtilityValue(float(np.prod(factors)), below)
