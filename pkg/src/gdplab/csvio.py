"""CSV writers and readers for simulation output.

Floats are written with ``repr`` so that a file read back reproduces the
exact in-memory values, and identical runs give identical bytes.
"""

from __future__ import annotations

import csv
from collections import defaultdict
from pathlib import Path
from typing import Iterable, Sequence

from .measurement import GrowthSeries, YearRecord

RECORD_COLUMNS = ("year", "sector", "T", "L", "N", "Y", "P", "W", "nominal_gdp")
GROWTH_COLUMNS = ("year", "policy", "g")


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_rows(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    return path


def record_rows(run) -> list[tuple]:
    rows = []
    for rec, state in zip(run.records, run.states):
        for k, name in enumerate(state.names):
            rows.append(
                (
                    rec.year,
                    name,
                    float(state.tech[k]),
                    float(state.labor[k]),
                    float(state.capital_units[k]),
                    float(state.output[k]),
                    float(state.price[k]),
                    float(state.wage),
                    float(state.nominal_gdp),
                )
            )
    return rows


def write_records(path: Path, run) -> Path:
    return write_rows(path, RECORD_COLUMNS, record_rows(run))


def write_growth(path: Path, series: Sequence[GrowthSeries]) -> Path:
    rows = [(year, gs.policy.label, g) for gs in series for year, g in gs]
    return write_rows(path, GROWTH_COLUMNS, rows)


def read_records(path: Path) -> list[YearRecord]:
    """Rebuild the :class:`YearRecord` series from a records CSV."""
    by_year: dict[int, list[dict]] = defaultdict(list)
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != RECORD_COLUMNS:
            raise ValueError(f"{path}: expected columns {RECORD_COLUMNS}, got {reader.fieldnames}")
        for row in reader:
            by_year[int(row["year"])].append(row)
    records = []
    for year in sorted(by_year):
        rows = by_year[year]
        records.append(
            YearRecord(
                year=year,
                sectors=tuple(r["sector"] for r in rows),
                quantities=[float(r["Y"]) for r in rows],
                prices=[float(r["P"]) for r in rows],
                wage=float(rows[0]["W"]),
                nominal_gdp=float(rows[0]["nominal_gdp"]),
            )
        )
    return records
