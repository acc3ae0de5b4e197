"""Real-GDP measurement: base-year policies, deflators and quantity indices.

A *series* throughout this module is any ordered sequence of
:class:`YearRecord` with consecutive years and an identical sector set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .econ import EquilibriumState

__all__ = [
    "MissingYear",
    "MissingBaseYear",
    "SectorMismatch",
    "YearRecord",
    "Chained",
    "FixedBase",
    "LaggedBase",
    "BasePolicy",
    "parse_policy",
    "GrowthSeries",
    "ComparisonReport",
    "nominal_gdp",
    "gdp_at_base",
    "growth_rate",
    "growth_series",
    "geometric_mean_growth",
    "cumulative_factor",
    "expected_log_growth",
    "sector_inflation",
    "gdp_deflator",
    "laspeyres_quantity",
    "paasche_quantity",
    "fisher_quantity",
    "common_price_comparison",
]


class MissingYear(KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "missing year"


class MissingBaseYear(MissingYear):
    """The base year demanded by a policy falls outside the series."""


class SectorMismatch(ValueError):
    pass


@dataclass(frozen=True)
class YearRecord:
    year: int
    sectors: tuple[str, ...]
    quantities: np.ndarray
    prices: np.ndarray
    wage: float
    nominal_gdp: float = field(default=None)

    def __post_init__(self):
        q = np.asarray(self.quantities, dtype=float)
        p = np.asarray(self.prices, dtype=float)
        object.__setattr__(self, "sectors", tuple(self.sectors))
        object.__setattr__(self, "quantities", q)
        object.__setattr__(self, "prices", p)
        if q.shape != (len(self.sectors),) or p.shape != q.shape:
            raise SectorMismatch(
                f"year {self.year}: {len(self.sectors)} sectors but quantities {q.shape}, prices {p.shape}"
            )
        if np.any(p <= 0.0):
            raise ValueError(f"year {self.year}: prices must be positive")
        if np.any(q < 0.0):
            raise ValueError(f"year {self.year}: quantities must be non-negative")
        total = float(np.dot(q, p))
        if self.nominal_gdp is None:
            object.__setattr__(self, "nominal_gdp", total)
        elif not math.isclose(self.nominal_gdp, total, rel_tol=1e-9, abs_tol=1e-300):
            raise ValueError(f"year {self.year}: nominal_gdp {self.nominal_gdp} != sum(Y*P) {total}")

    @classmethod
    def from_state(cls, year: int, state: EquilibriumState) -> "YearRecord":
        return cls(year, state.names, state.output.copy(), state.price.copy(), state.wage)


# -- base-year policies ------------------------------------------------------


@dataclass(frozen=True)
class Chained:
    """Each year is valued at the prices of the year before it."""

    def base_year(self, year: int) -> int:
        return year - 1

    @property
    def label(self) -> str:
        return "chained"


@dataclass(frozen=True)
class FixedBase:
    year: int

    def base_year(self, year: int) -> int:
        return self.year

    @property
    def label(self) -> str:
        return f"fixed:{self.year}"


@dataclass(frozen=True)
class LaggedBase:
    """Years ``i-1`` and ``i`` are both valued at the prices of year ``i-lag``."""

    lag: int

    def __post_init__(self):
        if self.lag < 1:
            raise ValueError(f"lag must be >= 1, got {self.lag}")

    def base_year(self, year: int) -> int:
        return year - self.lag

    @property
    def label(self) -> str:
        return f"lagged:{self.lag}"


BasePolicy = Union[Chained, FixedBase, LaggedBase]


def parse_policy(text: str) -> BasePolicy:
    """Parse ``chained``, ``fixed:<year>`` or ``lagged:<k>``."""
    kind, _, arg = text.strip().lower().partition(":")
    try:
        if kind == "chained" and not arg:
            return Chained()
        if kind == "fixed":
            return FixedBase(int(arg))
        if kind == "lagged":
            return LaggedBase(int(arg))
    except ValueError as exc:
        raise ValueError(f"bad base policy {text!r}: {exc}") from None
    raise ValueError(f"bad base policy {text!r}; expected chained, fixed:<year> or lagged:<k>")


@dataclass(frozen=True)
class GrowthSeries:
    policy: BasePolicy
    years: np.ndarray
    rates: np.ndarray

    def __post_init__(self):
        years = np.asarray(self.years, dtype=int)
        rates = np.asarray(self.rates, dtype=float)
        if years.shape != rates.shape:
            raise ValueError("years and rates differ in length")
        if np.any(np.diff(years) <= 0):
            raise ValueError("years must be strictly increasing")
        if np.any(rates <= -1.0):
            raise ValueError("growth rates must exceed -1")
        object.__setattr__(self, "years", years)
        object.__setattr__(self, "rates", rates)

    def __len__(self):
        return len(self.years)

    def __iter__(self):
        return iter(zip(self.years.tolist(), self.rates.tolist()))


# -- helpers -----------------------------------------------------------------


def _index(series: Sequence[YearRecord]) -> dict[int, YearRecord]:
    return {r.year: r for r in series}


def _lookup(index: dict[int, YearRecord], year: int, exc=MissingYear) -> YearRecord:
    try:
        return index[year]
    except KeyError:
        raise exc(f"year {year} is not in the series") from None


def _same_sectors(a: YearRecord, b: YearRecord) -> None:
    if a.sectors != b.sectors:
        raise SectorMismatch(f"sector sets differ: {a.sectors} vs {b.sectors}")


def _sector_pos(record: YearRecord, sector: Union[int, str]) -> int:
    if isinstance(sector, str):
        try:
            return record.sectors.index(sector)
        except ValueError:
            raise SectorMismatch(f"unknown sector {sector!r}") from None
    return int(sector)


# -- aggregation -------------------------------------------------------------


def nominal_gdp(record: YearRecord) -> float:
    return float(np.dot(record.quantities, record.prices))


def gdp_at_base(quantities, prices) -> float:
    """Value the quantities of one year at the prices of another.

    Accepts either two :class:`YearRecord` objects or two plain vectors.
    """
    if isinstance(quantities, YearRecord) and isinstance(prices, YearRecord):
        _same_sectors(quantities, prices)
        quantities, prices = quantities.quantities, prices.prices
    q = np.asarray(quantities, dtype=float)
    p = np.asarray(prices, dtype=float)
    if q.shape != p.shape:
        raise SectorMismatch(f"quantity vector {q.shape} and price vector {p.shape} differ")
    return float(np.dot(q, p))


def growth_rate(series: Sequence[YearRecord], year: int, policy: BasePolicy) -> float:
    """Real growth of ``year`` over ``year - 1``, both valued at the policy's base prices."""
    index = _index(series)
    cur = _lookup(index, year)
    prev = _lookup(index, year - 1)
    base = _lookup(index, policy.base_year(year), MissingBaseYear)
    _same_sectors(cur, prev)
    _same_sectors(cur, base)
    before = float(np.dot(prev.quantities, base.prices))
    after = float(np.dot(cur.quantities, base.prices))
    return (after - before) / before


def growth_series(series: Sequence[YearRecord], policy: BasePolicy) -> GrowthSeries:
    years = [r.year for r in series][1:]
    return GrowthSeries(policy, years, [growth_rate(series, y, policy) for y in years])


def cumulative_factor(gs: GrowthSeries) -> float:
    if len(gs) == 0:
        raise ValueError("empty growth series")
    return float(np.prod(1.0 + gs.rates))


def geometric_mean_growth(gs: GrowthSeries) -> float:
    return cumulative_factor(gs) ** (1.0 / len(gs)) - 1.0


def expected_log_growth(scale: float, years: float) -> float:
    """Average growth one would expect if productivity scales by ``scale`` over ``years``."""
    if scale <= 0.0 or years <= 0.0:
        raise ValueError("scale and years must be positive")
    return math.log(scale) / years


def sector_inflation(series: Sequence[YearRecord], sector: Union[int, str], year: int) -> float:
    index = _index(series)
    cur = _lookup(index, year)
    prev = _lookup(index, year - 1)
    k = _sector_pos(cur, sector)
    return float(cur.prices[k] / prev.prices[k] - 1.0)


def gdp_deflator(series: Sequence[YearRecord], year: int, reference_year: int) -> float:
    index = _index(series)
    cur = _lookup(index, year)
    ref = _lookup(index, reference_year)
    return cur.nominal_gdp / gdp_at_base(cur, ref)


# -- quantity indices --------------------------------------------------------


def laspeyres_quantity(prev: YearRecord, cur: YearRecord) -> float:
    _same_sectors(prev, cur)
    return float(np.dot(cur.quantities, prev.prices) / np.dot(prev.quantities, prev.prices))


def paasche_quantity(prev: YearRecord, cur: YearRecord) -> float:
    _same_sectors(prev, cur)
    return float(np.dot(cur.quantities, cur.prices) / np.dot(prev.quantities, cur.prices))


def fisher_quantity(prev: YearRecord, cur: YearRecord) -> float:
    return math.sqrt(laspeyres_quantity(prev, cur) * paasche_quantity(prev, cur))


# -- cross-economy comparison -----------------------------------------------


@dataclass(frozen=True)
class ComparisonReport:
    """Two economies valued at one common price vector, year by year.

    ``extrapolated_ratio`` starts from the common-price ratio of the first
    year and carries it forward with each economy's own chained growth;
    ``gap`` is ``extrapolated_ratio / ratio - 1``.
    """

    years: np.ndarray
    gdp_a: np.ndarray
    gdp_b: np.ndarray
    ratio: np.ndarray
    extrapolated_ratio: np.ndarray
    gap: np.ndarray


def common_price_comparison(
    series_a: Sequence[YearRecord],
    series_b: Sequence[YearRecord],
    reference_prices,
) -> ComparisonReport:
    ref = np.asarray(reference_prices, dtype=float)
    ia, ib = _index(series_a), _index(series_b)
    years = sorted(set(ia) & set(ib))
    if len(years) < 1:
        raise ValueError("the two series share no years")
    if any(b - a != 1 for a, b in zip(years, years[1:])):
        raise ValueError("shared years must be consecutive")
    first_a, first_b = ia[years[0]], ib[years[0]]
    if first_a.sectors != first_b.sectors or len(first_a.sectors) != ref.size:
        raise SectorMismatch(
            f"cannot align sectors {first_a.sectors} / {first_b.sectors} with {ref.size} reference prices"
        )

    gdp_a = np.array([gdp_at_base(ia[y].quantities, ref) for y in years])
    gdp_b = np.array([gdp_at_base(ib[y].quantities, ref) for y in years])
    ratio = gdp_a / gdp_b

    sub_a = [ia[y] for y in years]
    sub_b = [ib[y] for y in years]
    grow_a = np.concatenate([[1.0], np.cumprod(1.0 + growth_series(sub_a, Chained()).rates)])
    grow_b = np.concatenate([[1.0], np.cumprod(1.0 + growth_series(sub_b, Chained()).rates)])
    extrapolated = ratio[0] * grow_a / grow_b
    return ComparisonReport(
        years=np.array(years),
        gdp_a=gdp_a,
        gdp_b=gdp_b,
        ratio=ratio,
        extrapolated_ratio=extrapolated,
        gap=extrapolated / ratio - 1.0,
    )
