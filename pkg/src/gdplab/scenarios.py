"""Scenario configuration, built-in experiments and the scenario runner."""

from __future__ import annotations

import copy
import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import csvio, plotting
from .econ import DomainError, EconomyConfig, SectorSpec, solve_equilibrium
from .kaldor import (
    StylizedFacts,
    capital_output_ratio,
    capital_weighted_depreciation,
    investment_interval,
    sustainable_growth,
)
from .measurement import (
    BasePolicy,
    Chained,
    FixedBase,
    GrowthSeries,
    LaggedBase,
    common_price_comparison,
    cumulative_factor,
    fisher_quantity,
    gdp_deflator,
    geometric_mean_growth,
    growth_rate,
    laspeyres_quantity,
    paasche_quantity,
    parse_policy,
    sector_inflation,
)
from .paths import (
    ConstantRate,
    RampDown,
    RampUp,
    SimulationRun,
    Table,
    TechSchedule,
    cumulative_tech_factor,
    curl_asymmetry,
    decomposition_check,
    deflator_path_integral,
    simulate,
)

OUTPUTS = ("records", "growth", "indices", "inflation", "deflator")

PAPER_DEFAULTS = {
    "rate_of_return": 0.055,
    "delta": 0.055,
    "lambda": 2.0 / 3.0,
    "wage": 200.0,
    "total_labor": 100_000.0,
    "wage_growth": 0.06,
}


class ConfigError(ValueError):
    """Invalid scenario configuration; ``where`` names the offending field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    economy: EconomyConfig
    schedules: tuple[TechSchedule, ...]
    years: int
    wage_growth: float = 0.06
    start_year: int = 1900
    policies: tuple[BasePolicy, ...] = (Chained(),)
    outputs: tuple[str, ...] = ("records", "growth")


@dataclass
class ScenarioResult:
    name: str
    summary: list[tuple[str, Any]]
    files: list[Path] = field(default_factory=list)
    run: SimulationRun | None = None
    growth: list[GrowthSeries] = field(default_factory=list)


# -- parsing -----------------------------------------------------------------


def _get(obj: dict, key: str, where: str, default=None, kind=float):
    if key not in obj:
        if default is None:
            raise ConfigError(f"{where}.{key}", "required field is missing")
        return default
    value = obj[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{where}.{key}", f"expected a number, got {value!r}")
        if not math.isfinite(value):
            raise ConfigError(f"{where}.{key}", "must be finite")
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{where}.{key}", f"expected an integer, got {value!r}")
        return value
    if kind is str:
        if not isinstance(value, str):
            raise ConfigError(f"{where}.{key}", f"expected a string, got {value!r}")
        return value
    return value


def _check_keys(obj: Any, allowed: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise ConfigError(where, f"expected an object, got {type(obj).__name__}")
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(where, f"unknown field(s) {sorted(unknown)}")


def _parse_sector(obj: dict, where: str) -> SectorSpec:
    _check_keys(obj, {"name", "lambda", "delta", "subsistence", "omega", "tech"}, where)
    try:
        return SectorSpec(
            name=_get(obj, "name", where, kind=str),
            lam=_get(obj, "lambda", where, PAPER_DEFAULTS["lambda"]),
            delta=_get(obj, "delta", where, PAPER_DEFAULTS["delta"]),
            subsistence=_get(obj, "subsistence", where),
            omega=_get(obj, "omega", where),
            tech=_get(obj, "tech", where),
        )
    except DomainError as exc:
        raise ConfigError(where, str(exc)) from None


def _parse_economy(obj: dict, where: str = "economy") -> EconomyConfig:
    _check_keys(obj, {"sectors", "total_labor", "rate_of_return", "wage"}, where)
    sectors = obj.get("sectors")
    if not isinstance(sectors, list) or not sectors:
        raise ConfigError(f"{where}.sectors", "expected a non-empty list")
    specs = [_parse_sector(s, f"{where}.sectors[{k}]") for k, s in enumerate(sectors)]
    try:
        return EconomyConfig(
            sectors=tuple(specs),
            total_labor=_get(obj, "total_labor", where, PAPER_DEFAULTS["total_labor"]),
            rate_of_return=_get(obj, "rate_of_return", where, PAPER_DEFAULTS["rate_of_return"]),
            wage=_get(obj, "wage", where, PAPER_DEFAULTS["wage"]),
        )
    except DomainError as exc:
        raise ConfigError(where, str(exc)) from None


def parse_schedule(obj: dict, where: str) -> TechSchedule:
    if not isinstance(obj, dict):
        raise ConfigError(where, "expected an object")
    kind = obj.get("kind")
    try:
        if kind == "constant":
            _check_keys(obj, {"kind", "rate"}, where)
            return ConstantRate(_get(obj, "rate", where))
        if kind in ("ramp_down", "ramp_up"):
            _check_keys(obj, {"kind", "peak", "span"}, where)
            cls = RampDown if kind == "ramp_down" else RampUp
            return cls(_get(obj, "peak", where, 0.06), _get(obj, "span", where, 99, kind=int))
        if kind == "table":
            _check_keys(obj, {"kind", "multipliers"}, where)
            mult = obj.get("multipliers")
            if not isinstance(mult, list) or not all(isinstance(m, (int, float)) for m in mult):
                raise ConfigError(f"{where}.multipliers", "expected a list of numbers")
            return Table(tuple(mult))
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(where, str(exc)) from None
    raise ConfigError(f"{where}.kind", f"expected constant, ramp_down, ramp_up or table, got {kind!r}")


def parse_config(obj: dict, name: str = "scenario") -> ScenarioConfig:
    """Validate a decoded JSON scenario and build a :class:`ScenarioConfig`."""
    _check_keys(
        obj,
        {"name", "economy", "schedules", "years", "wage_growth", "start_year", "policies", "outputs"},
        "config",
    )
    if "economy" not in obj:
        raise ConfigError("config.economy", "required field is missing")
    economy = _parse_economy(obj["economy"])

    years = _get(obj, "years", "config", kind=int)
    if years < 1:
        raise ConfigError("config.years", f"must be >= 1, got {years}")
    start_year = _get(obj, "start_year", "config", 1900, kind=int)

    scheds = obj.get("schedules")
    if not isinstance(scheds, dict):
        raise ConfigError("config.schedules", "expected an object keyed by sector name")
    missing = [n for n in economy.names if n not in scheds]
    unknown = [n for n in scheds if n not in economy.names]
    if missing:
        raise ConfigError("config.schedules", f"no schedule for sector(s) {missing}")
    if unknown:
        raise ConfigError("config.schedules", f"schedule for unknown sector(s) {unknown}")
    schedules = tuple(parse_schedule(scheds[n], f"config.schedules.{n}") for n in economy.names)
    for n, s in zip(economy.names, schedules):
        if isinstance(s, Table) and len(s.multipliers) < years:
            raise ConfigError(f"config.schedules.{n}.multipliers", f"need {years} entries, got {len(s.multipliers)}")

    raw_policies = obj.get("policies", ["chained"])
    if not isinstance(raw_policies, list):
        raise ConfigError("config.policies", "expected a list")
    policies = []
    for k, text in enumerate(raw_policies):
        if not isinstance(text, str):
            raise ConfigError(f"config.policies[{k}]", f"expected a string, got {text!r}")
        try:
            policies.append(parse_policy(text))
        except ValueError as exc:
            raise ConfigError(f"config.policies[{k}]", str(exc)) from None
    _check_policies(policies, start_year, years, "config.policies")

    outputs = obj.get("outputs", ["records", "growth"])
    if not isinstance(outputs, list) or any(o not in OUTPUTS for o in outputs):
        raise ConfigError("config.outputs", f"expected a list drawn from {list(OUTPUTS)}, got {outputs!r}")

    return ScenarioConfig(
        name=obj.get("name", name),
        economy=economy,
        schedules=schedules,
        years=years,
        wage_growth=_get(obj, "wage_growth", "config", PAPER_DEFAULTS["wage_growth"]),
        start_year=start_year,
        policies=tuple(policies),
        outputs=tuple(outputs),
    )


def _check_policies(policies: Sequence[BasePolicy], start_year: int, years: int, where: str) -> None:
    for k, p in enumerate(policies):
        if isinstance(p, FixedBase) and not start_year <= p.year <= start_year + years:
            raise ConfigError(f"{where}[{k}]", f"base year {p.year} outside {start_year}-{start_year + years}")
        if isinstance(p, LaggedBase) and p.lag >= years:
            raise ConfigError(f"{where}[{k}]", f"lag {p.lag} leaves no measurable year in a {years}-year run")


def load_config(path: str | Path) -> ScenarioConfig:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return parse_config(obj, name=path.stem)


# -- built-in experiments ----------------------------------------------------


def _bisector(omega_b: float, subsistence: float) -> dict:
    return {
        "total_labor": 100_000,
        "rate_of_return": 0.055,
        "wage": 200,
        "sectors": [
            {"name": "A", "lambda": 2 / 3, "delta": 0.055, "subsistence": subsistence, "omega": 1, "tech": 1},
            {"name": "B", "lambda": 2 / 3, "delta": 0.055, "subsistence": 0, "omega": omega_b, "tech": 1},
        ],
    }


_ALL_OUTPUTS = list(OUTPUTS)
_POLICIES = ["chained", "fixed:1900", "lagged:15"]

SCENARIOS: dict[str, dict] = {
    "exp1-north": {
        "economy": _bisector(1, 1.6711),
        "schedules": {"A": {"kind": "constant", "rate": 0.05}, "B": {"kind": "constant", "rate": 0.0}},
        "years": 98,
        "wage_growth": 0.06,
        "policies": _POLICIES,
        "outputs": _ALL_OUTPUTS,
    },
    "exp1-south": {
        "economy": _bisector(5, 1.6990),
        "schedules": {"A": {"kind": "constant", "rate": 0.05}, "B": {"kind": "constant", "rate": 0.0}},
        "years": 98,
        "wage_growth": 0.06,
        "policies": _POLICIES,
        "outputs": _ALL_OUTPUTS,
    },
    "exp2-north": {
        "economy": _bisector(5, 1.6990),
        "schedules": {"A": {"kind": "ramp_down"}, "B": {"kind": "ramp_up"}},
        "years": 98,
        "wage_growth": 0.06,
        "policies": _POLICIES,
        "outputs": _ALL_OUTPUTS,
    },
    "exp2-middle": {
        "economy": _bisector(5, 1.6990),
        "schedules": {"A": {"kind": "constant", "rate": 0.0305}, "B": {"kind": "constant", "rate": 0.0305}},
        "years": 98,
        "wage_growth": 0.06,
        "policies": _POLICIES,
        "outputs": _ALL_OUTPUTS,
    },
    "exp2-south": {
        "economy": _bisector(5, 1.6990),
        "schedules": {"A": {"kind": "ramp_up"}, "B": {"kind": "ramp_down"}},
        "years": 98,
        "wage_growth": 0.06,
        "policies": _POLICIES,
        "outputs": _ALL_OUTPUTS,
    },
}

DEMOS = ("kaldor-demo", "curl-demo", "ppp-demo")


def list_builtins() -> list[str]:
    return list(SCENARIOS) + list(DEMOS)


def builtin_config(name: str) -> ScenarioConfig:
    if name not in SCENARIOS:
        raise KeyError(f"no built-in scenario {name!r}; try one of {list(SCENARIOS)}")
    obj = copy.deepcopy(SCENARIOS[name])
    obj["name"] = name
    return parse_config(obj, name)


def simulate_config(cfg: ScenarioConfig, wage_growth: float | None = None) -> SimulationRun:
    return simulate(
        cfg.economy,
        cfg.schedules,
        cfg.years,
        cfg.wage_growth if wage_growth is None else wage_growth,
        cfg.start_year,
    )


# -- runner ------------------------------------------------------------------


def measurable_growth(records, policy: BasePolicy) -> GrowthSeries:
    """Growth series restricted to years whose base prices exist in the run."""
    years = [r.year for r in records]
    first = years[0]
    if isinstance(policy, LaggedBase):
        usable = [y for y in years[1:] if y - policy.lag >= first]
    else:
        usable = years[1:]
    return GrowthSeries(policy, usable, [growth_rate(records, y, policy) for y in usable])


def run_scenario(
    cfg: ScenarioConfig,
    out_dir: str | Path,
    svg: bool = False,
    policies: Sequence[BasePolicy] | None = None,
) -> ScenarioResult:
    """Simulate ``cfg`` and write its CSV reports (and charts) into ``out_dir``."""
    out = Path(out_dir)
    policies = tuple(cfg.policies if policies is None else policies)
    _check_policies(policies, cfg.start_year, cfg.years, "policies")
    run = simulate_config(cfg)
    recs = run.records
    growth = [measurable_growth(recs, p) for p in policies]

    files = [csvio.write_records(out / "records.csv", run)]
    if "growth" in cfg.outputs and growth:
        files.append(csvio.write_growth(out / "growth.csv", growth))
    if "indices" in cfg.outputs:
        rows = [
            (cur.year, laspeyres_quantity(prev, cur), paasche_quantity(prev, cur), fisher_quantity(prev, cur))
            for prev, cur in zip(recs, recs[1:])
        ]
        files.append(csvio.write_rows(out / "indices.csv", ("year", "laspeyres", "paasche", "fisher"), rows))
    if "inflation" in cfg.outputs:
        rows = [
            (cur.year, name, sector_inflation(recs, name, cur.year))
            for cur in recs[1:]
            for name in cur.sectors
        ]
        files.append(csvio.write_rows(out / "inflation.csv", ("year", "sector", "inflation"), rows))
    if "deflator" in cfg.outputs:
        first = recs[0].year
        rows = [
            (cur.year, gdp_deflator(recs, cur.year, cur.year - 1), gdp_deflator(recs, cur.year, first))
            for cur in recs[1:]
        ]
        files.append(
            csvio.write_rows(out / "deflator.csv", ("year", "deflator_previous_year", f"deflator_{first}"), rows)
        )

    summary: list[tuple[str, Any]] = [("scenario", cfg.name), ("years", cfg.years)]
    for gs in growth:
        summary += [
            (f"final_growth[{gs.policy.label}]", float(gs.rates[-1])),
            (f"mean_growth[{gs.policy.label}]", geometric_mean_growth(gs)),
            (f"cumulative_factor[{gs.policy.label}]", cumulative_factor(gs)),
        ]
    last = run.states[-1]
    for k, n in enumerate(cfg.economy.names):
        summary += [
            (f"tech_factor[{n}]", cumulative_tech_factor(cfg.schedules[k], cfg.years)),
            (f"labor_share_initial[{n}]", float(run.states[0].labor_shares[k])),
            (f"labor_share_final[{n}]", float(last.labor_shares[k])),
            (f"output_initial[{n}]", float(run.states[0].output[k])),
            (f"output_final[{n}]", float(last.output[k])),
        ]
    summary += [
        ("nominal_gdp_initial", recs[0].nominal_gdp),
        ("nominal_gdp_final", recs[-1].nominal_gdp),
        ("deflator_integral", deflator_path_integral(run)),
        ("decomposition_residual", decomposition_check(run)),
    ]
    files.append(write_summary(out / "summary.csv", summary))

    if svg:
        if growth:
            files.append(plotting.plot_growth(growth, out / "growth.svg", title=f"{cfg.name}: measured real growth"))
        files.append(plotting.plot_labor_shares(run, out / "labor.svg", title=f"{cfg.name}: labor allocation"))
        files.append(plotting.plot_prices(run, out / "prices.svg", title=f"{cfg.name}: long-run prices"))
    return ScenarioResult(cfg.name, summary, files, run, growth)


def write_summary(path: Path, summary: Sequence[tuple[str, Any]]) -> Path:
    return csvio.write_rows(path, ("metric", "value"), summary)


def format_summary(summary: Sequence[tuple[str, Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("metric", "value"))
    writer.writerows((k, csvio._fmt(v)) for k, v in summary)
    return buf.getvalue().rstrip("\n")


# -- demos -------------------------------------------------------------------


def kaldor_demo(out_dir: str | Path, svg: bool = False, saving_rate: float = 0.0606) -> ScenarioResult:
    out = Path(out_dir)
    cfg = builtin_config("exp2-middle")
    state = solve_equilibrium(cfg.economy)
    labor_share = cfg.economy.wage * cfg.economy.total_labor / state.nominal_gdp
    mean_delta = capital_weighted_depreciation(cfg.economy, state)
    r = cfg.economy.rate_of_return

    rows = []
    for ls in (0.55, 0.6, labor_share, 0.7, 0.75):
        for g in (0.01, 0.03, 0.05, 0.2):
            facts = StylizedFacts(ls, saving_rate, r, mean_delta, g)
            rows.append(
                (ls, saving_rate, g, capital_output_ratio(facts), investment_interval(facts), sustainable_growth(facts))
            )
    header = ("labor_share", "saving_rate", "tech_growth", "capital_output_ratio", "investment_interval", "sustainable_growth")
    files = [csvio.write_rows(out / "kaldor.csv", header, rows)]

    base = StylizedFacts(labor_share, saving_rate, r, mean_delta, 0.03)
    summary = [
        ("scenario", "kaldor-demo"),
        ("labor_share", labor_share),
        ("mean_depreciation", mean_delta),
        ("saving_rate", saving_rate),
        ("capital_output_ratio", capital_output_ratio(base)),
        ("investment_interval[G=0.03]", investment_interval(base)),
        ("sustainable_growth", sustainable_growth(base)),
    ]
    files.append(write_summary(out / "summary.csv", summary))
    if svg:
        ls_grid = np.linspace(0.5, 0.8, 31)
        g = [sustainable_growth(StylizedFacts(x, saving_rate, r, mean_delta)) * 100 for x in ls_grid]
        files.append(
            plotting.plot_xy(ls_grid, {"sustainable growth": g}, out / "kaldor.svg",
                             "Sustainable measured growth", "labor share", "growth (%)")
        )
    return ScenarioResult("kaldor-demo", summary, files)


CURL_POINT = (2.0, 5.0)
CURL_STEPS = (0.02, 0.01, 0.005, 0.0025)


def curl_demo(out_dir: str | Path, svg: bool = False) -> ScenarioResult:
    out = Path(out_dir)
    economy = builtin_config("exp2-middle").economy

    rows = [(CURL_POINT[0], CURL_POINT[1], h, curl_asymmetry(economy, CURL_POINT, 0, 1, h)) for h in CURL_STEPS]
    grid = []
    for ta in (1.0, 2.0, 5.0, 10.0, 18.93):
        for tb in (1.0, 2.0, 5.0, 10.0, 18.93):
            grid.append((ta, tb, 0.005, curl_asymmetry(economy, (ta, tb), 0, 1, 0.005)))
    files = [csvio.write_rows(out / "curl.csv", ("T_A", "T_B", "step", "asymmetry"), rows + grid)]

    a1, a2 = rows[-2][3], rows[-1][3]
    summary: list[tuple[str, Any]] = [
        ("scenario", "curl-demo"),
        ("T_A", CURL_POINT[0]),
        ("T_B", CURL_POINT[1]),
        ("asymmetry", a2),
        ("asymmetry_richardson", a2 + (a2 - a1) / 3.0),
    ]
    # Same endpoints, different paths, nominal wage frozen.
    for island in ("exp2-north", "exp2-middle", "exp2-south"):
        run = simulate_config(builtin_config(island), wage_growth=0.0)
        summary.append((f"deflator_integral[{island},constant_wage]", deflator_path_integral(run)))
    files.append(write_summary(out / "summary.csv", summary))
    if svg:
        steps = [r[2] for r in rows]
        files.append(
            plotting.plot_xy(steps, {"asymmetry": [r[3] for r in rows]}, out / "curl.svg",
                             "Curl asymmetry at T=(2,5)", "relative step", "asymmetry")
        )
    return ScenarioResult("curl-demo", summary, files)


PPP_REFERENCE_YEAR = 1949


def ppp_demo(out_dir: str | Path, svg: bool = False) -> ScenarioResult:
    out = Path(out_dir)
    north = simulate_config(builtin_config("exp2-north"))
    south = simulate_config(builtin_config("exp2-south"))
    middle = simulate_config(builtin_config("exp2-middle"))
    ref = next(r for r in middle.records if r.year == PPP_REFERENCE_YEAR).prices
    rep = common_price_comparison(north.records, south.records, ref)
    rows = list(
        zip(rep.years.tolist(), rep.gdp_a.tolist(), rep.gdp_b.tolist(), rep.ratio.tolist(),
            rep.extrapolated_ratio.tolist(), rep.gap.tolist())
    )
    header = ("year", "gdp_north", "gdp_south", "ratio", "extrapolated_ratio", "gap")
    files = [csvio.write_rows(out / "ppp.csv", header, rows)]
    summary = [
        ("scenario", "ppp-demo"),
        ("reference", f"exp2-middle prices {PPP_REFERENCE_YEAR}"),
        ("ratio_initial", float(rep.ratio[0])),
        ("ratio_final", float(rep.ratio[-1])),
        ("extrapolated_ratio_final", float(rep.extrapolated_ratio[-1])),
        ("gap_final", float(rep.gap[-1])),
        ("gap_max_abs", float(np.max(np.abs(rep.gap)))),
    ]
    files.append(write_summary(out / "summary.csv", summary))
    if svg:
        files.append(
            plotting.plot_xy(rep.years, {"common prices": rep.ratio, "own chained growth": rep.extrapolated_ratio},
                             out / "ppp.svg", "North / South GDP ratio", "year", "ratio")
        )
    return ScenarioResult("ppp-demo", summary, files)


def run_builtin(name: str, out_dir: str | Path, svg: bool = False,
                policies: Sequence[BasePolicy] | None = None) -> ScenarioResult:
    demos = {"kaldor-demo": kaldor_demo, "curl-demo": curl_demo, "ppp-demo": ppp_demo}
    if name in demos:
        return demos[name](out_dir, svg)
    return run_scenario(builtin_config(name), out_dir, svg, policies)
