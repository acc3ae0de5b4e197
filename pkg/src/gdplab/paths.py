"""Technology paths, the year-by-year simulator and path-dependence checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

from .econ import EconomyConfig, EquilibriumState, InfeasibleSubsistence, solve_equilibrium
from .measurement import Chained, YearRecord, growth_series

__all__ = [
    "ConstantRate",
    "RampDown",
    "RampUp",
    "Table",
    "TechSchedule",
    "SimulationRun",
    "simulate",
    "cumulative_tech_factor",
    "deflator_path_integral",
    "deflator_log_integral",
    "decomposition_check",
    "pathwise_force",
    "curl_asymmetry",
]


@dataclass(frozen=True)
class ConstantRate:
    rate: float

    def __post_init__(self):
        if self.rate <= -1.0:
            raise ValueError(f"growth rate must exceed -1, got {self.rate}")

    def multiplier(self, step: int) -> float:
        return 1.0 + self.rate


@dataclass(frozen=True)
class RampDown:
    """Fast growth early, tapering linearly: ``1 + peak*(span+1-i)/span`` at step ``i``."""

    peak: float = 0.06
    span: int = 99

    def multiplier(self, step: int) -> float:
        m = 1.0 + self.peak * (self.span + 1 - step) / self.span
        if m <= 0.0:
            raise ValueError(f"ramp multiplier at step {step} is not positive")
        return m


@dataclass(frozen=True)
class RampUp:
    """Mirror of :class:`RampDown`: ``1 + peak*(i+1)/span`` at step ``i``."""

    peak: float = 0.06
    span: int = 99

    def multiplier(self, step: int) -> float:
        m = 1.0 + self.peak * (step + 1) / self.span
        if m <= 0.0:
            raise ValueError(f"ramp multiplier at step {step} is not positive")
        return m


@dataclass(frozen=True)
class Table:
    """Explicit per-step multipliers; step ``i`` uses ``multipliers[i-1]``."""

    multipliers: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "multipliers", tuple(float(m) for m in self.multipliers))
        if any(m <= 0.0 for m in self.multipliers):
            raise ValueError("table multipliers must be positive")

    def multiplier(self, step: int) -> float:
        if not 1 <= step <= len(self.multipliers):
            raise ValueError(f"table has {len(self.multipliers)} steps, step {step} requested")
        return self.multipliers[step - 1]


TechSchedule = Union[ConstantRate, RampDown, RampUp, Table]


def cumulative_tech_factor(schedule: TechSchedule, years: int) -> float:
    if years < 1:
        raise ValueError("years must be >= 1")
    return math.prod(schedule.multiplier(i) for i in range(1, years + 1))


@dataclass(frozen=True)
class SimulationRun:
    config: EconomyConfig
    schedules: tuple[TechSchedule, ...]
    wage_growth: float
    records: tuple[YearRecord, ...]
    states: tuple[EquilibriumState, ...]

    @property
    def years(self) -> list[int]:
        return [r.year for r in self.records]


def _align_schedules(config: EconomyConfig, schedules) -> tuple[TechSchedule, ...]:
    if isinstance(schedules, Mapping):
        missing = set(config.names) - set(schedules)
        extra = set(schedules) - set(config.names)
        if missing or extra:
            raise ValueError(f"schedules do not match sectors: missing {sorted(missing)}, unknown {sorted(extra)}")
        return tuple(schedules[n] for n in config.names)
    schedules = tuple(schedules)
    if len(schedules) != len(config.sectors):
        raise ValueError(f"{len(config.sectors)} sectors but {len(schedules)} schedules")
    return schedules


def simulate(
    config: EconomyConfig,
    schedules: Union[Sequence[TechSchedule], Mapping[str, TechSchedule]],
    years: int,
    wage_growth: float = 0.06,
    start_year: int = 1900,
) -> SimulationRun:
    """Solve the equilibrium in every year while technology and wages grow.

    Capital is reset to its optimal level each year (no accumulation), so
    year ``i`` depends only on the tech levels and wage reached by then.
    """
    if years < 0:
        raise ValueError("years must be >= 0")
    scheds = _align_schedules(config, schedules)
    techs = config.techs.astype(float)
    records, states = [], []
    for step in range(years + 1):
        if step:
            techs = techs * np.array([s.multiplier(step) for s in scheds])
        year = start_year + step
        cfg = config.with_techs(techs).with_wage(config.wage * (1.0 + wage_growth) ** step)
        try:
            state = solve_equilibrium(cfg)
        except InfeasibleSubsistence as exc:
            raise InfeasibleSubsistence(str(exc), year=year) from None
        states.append(state)
        records.append(YearRecord.from_state(year, state))
    return SimulationRun(config, scheds, wage_growth, tuple(records), tuple(states))


def _records(run) -> Sequence[YearRecord]:
    return run.records if isinstance(run, SimulationRun) else run


def deflator_path_integral(run) -> float:
    """Accumulated one-period price change weighted by last year's quantities.

    Discrete version of integrating ``sum_a Y_a dP_a / sum_a Y_a P_a`` along
    the simulated path.
    """
    recs = _records(run)
    if len(recs) < 2:
        raise ValueError("need at least two records")
    total = 0.0
    for prev, cur in zip(recs, recs[1:]):
        total += np.dot(prev.quantities, cur.prices - prev.prices) / np.dot(prev.quantities, prev.prices)
    return float(total)


def deflator_log_integral(run) -> float:
    """Sum of log one-period price indices weighted by current quantities."""
    recs = _records(run)
    if len(recs) < 2:
        raise ValueError("need at least two records")
    return float(
        sum(
            math.log(np.dot(cur.quantities, cur.prices) / np.dot(cur.quantities, prev.prices))
            for prev, cur in zip(recs, recs[1:])
        )
    )


def decomposition_check(run) -> float:
    """Residual of log nominal growth = log real chained growth + log deflator."""
    recs = _records(run)
    real = float(np.sum(np.log1p(growth_series(recs, Chained()).rates)))
    return math.log(recs[-1].nominal_gdp / recs[0].nominal_gdp) - (real + deflator_log_integral(recs))


def pathwise_force(config: EconomyConfig, techs: Sequence[float], sector: int) -> float:
    """Deflator integrand along tech coordinate ``sector`` at fixed nominal wage.

    This is ``sum_a Y_a dP_a/dT_c / sum_b Y_b P_b``, which reduces to
    ``-L_c W / (lam_c T_c) / GDP`` because only ``P_c`` depends on ``T_c``.
    """
    state = solve_equilibrium(config.with_techs(techs))
    lam = config.sectors[sector].lam
    t = state.tech[sector]
    return float(-state.labor[sector] * state.wage / (lam * t) / state.nominal_gdp)


def _sector_pos(config: EconomyConfig, sector: Union[int, str]) -> int:
    if isinstance(sector, str):
        return config.names.index(sector)
    return int(sector)


def curl_asymmetry(
    config: EconomyConfig,
    tech_point: Sequence[float],
    sector_c: Union[int, str],
    sector_d: Union[int, str],
    step: float = 1e-3,
) -> float:
    """Central-difference estimate of ``dF_c/dT_d - dF_d/dT_c``.

    ``F`` is :func:`pathwise_force`; the wage is held at ``config.wage``.
    ``step`` is relative to each tech level. A non-zero value means the
    deflator integral, and hence measured real growth, depends on the path
    taken through technology space.
    """
    if not 0.0 < step <= 0.1:
        raise ValueError(f"relative step must lie in (0, 0.1], got {step}")
    t0 = np.asarray(tech_point, dtype=float)
    c = _sector_pos(config, sector_c)
    d = _sector_pos(config, sector_d)
    if c == d:
        return 0.0

    def partial(force_of: int, along: int) -> float:
        h = step * t0[along]
        up, down = t0.copy(), t0.copy()
        up[along] += h
        down[along] -= h
        return (pathwise_force(config, up, force_of) - pathwise_force(config, down, force_of)) / (2.0 * h)

    return float(partial(c, d) - partial(d, c))
