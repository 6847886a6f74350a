"""Parsing, aggregation, and joining of emissions and CO2 data files.

Inputs are CSV: an emissions panel (wide, one numeric column per fuel
factor, or long with explicit factor/value columns) and a two-column
atmospheric CO2 series. A schema mapping decouples logical column names
from the header spellings of a particular file vintage.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateTotal,
    DomainError,
    DuplicateRecord,
    EmptyJoin,
    ParseError,
    SchemaError,
    UnknownFactor,
)

EMISSIONS_UNIT = "thousand metric tons of carbon"


@dataclass(frozen=True)
class EmissionsRecord:
    country: str
    year: int
    factor: str
    value: float
    unit: str = EMISSIONS_UNIT


@dataclass
class EmissionsTable:
    """Long-form emissions panel with unique (country, year, factor) keys."""

    rows: list[EmissionsRecord]
    _index: dict[tuple[str, int, str], float] = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if not self._index:
            for r in self.rows:
                key = (r.country, r.year, r.factor)
                if key in self._index:
                    raise DuplicateRecord(f"duplicate record for {key}")
                if not np.isfinite(r.value) or r.value < 0:
                    raise DomainError(
                        f"emissions value for {key} must be finite and >= 0, got {r.value}"
                    )
                self._index[key] = r.value

    def get(self, country: str, year: int, factor: str) -> float | None:
        return self._index.get((country, year, factor))

    @property
    def factors(self) -> set[str]:
        return {r.factor for r in self.rows}

    @property
    def countries(self) -> set[str]:
        return {r.country for r in self.rows}

    @property
    def years(self) -> set[int]:
        return {r.year for r in self.rows}

    def __len__(self) -> int:
        return len(self.rows)


@dataclass
class ResponseSeries:
    """Yearly atmospheric CO2 in ppmv, sorted by year."""

    years: list[int]
    co2: np.ndarray

    @property
    def points(self) -> list[tuple[int, float]]:
        return list(zip(self.years, self.co2.tolist()))


@dataclass
class Dataset:
    """Joined year-indexed response and predictor panel, exclusions applied."""

    years: list[int]
    response: np.ndarray
    predictors: dict[str, np.ndarray]
    region: list[str]
    excluded_years: list[int]

    @property
    def n(self) -> int:
        return len(self.years)

    @property
    def factor_names(self) -> list[str]:
        return list(self.predictors)

    @property
    def predictor_matrix(self) -> np.ndarray:
        """n x k matrix with columns in factor order."""
        return np.column_stack([self.predictors[f] for f in self.predictors])


@dataclass
class ContributionRow:
    rank: int
    country: str
    total: float
    percent: float


@dataclass
class ContributionTable:
    """Per-country share of one factor's emissions in one year."""

    factor: str
    year: int
    rows: list[ContributionRow]

    def to_json_dict(self) -> dict:
        return {
            "factor": self.factor,
            "year": self.year,
            "rows": [
                {
                    "rank": r.rank,
                    "country": r.country,
                    "total": r.total,
                    "percent": round(r.percent, 2),
                }
                for r in self.rows
            ],
        }

    def to_csv_text(self) -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["rank", "country", "total", "percent"])
        for r in self.rows:
            w.writerow([r.rank, r.country, repr(r.total), f"{r.percent:.2f}"])
        return out.getvalue()


@dataclass
class RegionSeries:
    """Aggregated factor series plus a missing-record audit counter."""

    values: dict[str, dict[int, float]]
    missing_counts: dict[str, dict[int, int]]


def _parse_year(cell: str, row_no: int, col: str) -> int:
    try:
        return int(cell.strip())
    except ValueError:
        raise ParseError(f"row {row_no}, column '{col}': not an integer year: {cell!r}") from None


def _parse_value(cell: str, row_no: int, col: str) -> float:
    try:
        return float(cell)
    except ValueError:
        raise ParseError(f"row {row_no}, column '{col}': not a number: {cell!r}") from None


def _header_index(header: list[str], name: str) -> int:
    try:
        return header.index(name)
    except ValueError:
        raise SchemaError(f"mapped header '{name}' not found in CSV header {header}") from None


def parse_emissions_csv(text: str, schema: dict) -> EmissionsTable:
    """Parse an emissions CSV into a long-form :class:`EmissionsTable`.

    ``schema`` maps logical columns to header names. Two layouts are
    accepted:

    * wide: ``{"country": ..., "year": ..., "factors": {name: header}}``,
      one numeric column per factor, melted to long form; blank cells
      become absent rows, not zeros;
    * long: ``{"country": ..., "year": ..., "factor": ..., "value": ...}``.
    """
    if "country" not in schema or "year" not in schema:
        raise SchemaError("schema must map 'country' and 'year'")
    wide = "factors" in schema
    if not wide and not ("factor" in schema and "value" in schema):
        raise SchemaError("schema must carry either 'factors' or 'factor'+'value'")

    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("empty file: no header row") from None
    header = [h.strip() for h in header]

    ci = _header_index(header, schema["country"])
    yi = _header_index(header, schema["year"])
    if wide:
        factor_cols = [(name, _header_index(header, col)) for name, col in schema["factors"].items()]
    else:
        fi = _header_index(header, schema["factor"])
        vi = _header_index(header, schema["value"])

    width = max(
        [ci, yi] + ([idx for _, idx in factor_cols] if wide else [fi, vi])
    )
    rows: list[EmissionsRecord] = []
    seen: set[tuple[str, int, str]] = set()
    for row_no, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) <= width:
            raise ParseError(f"row {row_no}: expected at least {width + 1} cells, got {len(row)}")
        country = row[ci].strip()
        year = _parse_year(row[yi], row_no, schema["year"])
        if wide:
            cells = [(name, row[idx].strip(), header[idx]) for name, idx in factor_cols]
        else:
            cells = [(row[fi].strip(), row[vi].strip(), schema["value"])]
        for factor, cell, colname in cells:
            if cell == "":
                continue  # missing record, not zero
            value = _parse_value(cell, row_no, colname)
            key = (country, year, factor)
            if key in seen:
                raise DuplicateRecord(f"duplicate record for {key} at row {row_no}")
            seen.add(key)
            if not np.isfinite(value) or value < 0:
                raise DomainError(
                    f"row {row_no}, column '{colname}': emissions must be finite and >= 0, got {value}"
                )
            rows.append(EmissionsRecord(country, year, factor, value))
    return EmissionsTable(rows=rows)


def emissions_to_wide_csv(em: EmissionsTable, schema: dict) -> str:
    """Serialize a table back to the wide layout described by ``schema``."""
    if "factors" not in schema:
        raise SchemaError("wide serialization needs a 'factors' schema")
    factors = list(schema["factors"])
    pairs = sorted({(r.country, r.year) for r in em.rows})
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow([schema["country"], schema["year"]] + [schema["factors"][f] for f in factors])
    for country, year in pairs:
        cells = []
        for f in factors:
            v = em.get(country, year, f)
            cells.append("" if v is None else repr(v))
        w.writerow([country, year] + cells)
    return out.getvalue()


def parse_response_csv(text: str) -> ResponseSeries:
    """Parse a ``year,co2_ppmv`` CSV into a sorted :class:`ResponseSeries`."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("empty file: no header row") from None
    header = [h.strip() for h in header]
    yi = _header_index(header, "year")
    vi = _header_index(header, "co2_ppmv")

    points: dict[int, float] = {}
    for row_no, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) <= max(yi, vi):
            raise ParseError(f"row {row_no}: expected at least {max(yi, vi) + 1} cells")
        year = _parse_year(row[yi], row_no, "year")
        co2 = _parse_value(row[vi], row_no, "co2_ppmv")
        if year in points:
            raise DuplicateRecord(f"duplicate year {year} at row {row_no}")
        if not np.isfinite(co2) or co2 <= 0:
            raise DomainError(f"row {row_no}: co2_ppmv must be positive, got {co2}")
        points[year] = co2
    years = sorted(points)
    return ResponseSeries(years=years, co2=np.array([points[y] for y in years], dtype=float))


def aggregate_region(
    em: EmissionsTable,
    countries: list[str],
    factors: list[str],
    years: list[int],
) -> RegionSeries:
    """Sum factor series over a country group, year by year.

    Missing (country, year) records contribute 0 and are counted in the
    per-factor-per-year audit counter so silent gaps stay inspectable.
    """
    present = em.factors
    for f in factors:
        if f not in present:
            raise UnknownFactor(f"factor '{f}' has no records in the emissions table")
    values: dict[str, dict[int, float]] = {}
    missing: dict[str, dict[int, int]] = {}
    for f in factors:
        values[f] = {}
        missing[f] = {}
        for y in years:
            total = 0.0
            gaps = 0
            for c in countries:
                v = em.get(c, y, f)
                if v is None:
                    gaps += 1
                else:
                    total += v
            values[f][y] = total
            missing[f][y] = gaps
    return RegionSeries(values=values, missing_counts=missing)


def join_dataset(
    pred: RegionSeries | dict[str, dict[int, float]],
    resp: ResponseSeries,
    exclude: list[int],
    region: list[str] | None = None,
) -> Dataset:
    """Join predictors and response on their common years, minus exclusions."""
    mapping = pred.values if isinstance(pred, RegionSeries) else pred
    if not mapping:
        raise EmptyJoin("no predictor series to join")
    common = set(resp.years)
    for series in mapping.values():
        common &= set(series)
    common -= set(exclude)
    if not common:
        raise EmptyJoin("predictor and response years share no usable overlap")
    years = sorted(common)
    resp_by_year = dict(zip(resp.years, resp.co2))
    response = np.array([resp_by_year[y] for y in years], dtype=float)
    predictors = {
        f: np.array([series[y] for y in years], dtype=float) for f, series in mapping.items()
    }
    return Dataset(
        years=years,
        response=response,
        predictors=predictors,
        region=list(region or []),
        excluded_years=sorted(set(exclude)),
    )


def country_contributions(
    em: EmissionsTable,
    factor: str,
    year: int,
    countries: list[str],
) -> ContributionTable:
    """Rank countries by their share of one factor's emissions in one year.

    Countries without a record count as zero; percentages are kept at
    full precision here and rendered to two decimals on output.
    """
    totals = [(c, em.get(c, year, factor) or 0.0) for c in countries]
    grand = sum(v for _, v in totals)
    if grand <= 0:
        raise DegenerateTotal(f"total for factor '{factor}' in {year} is zero")
    ordered = sorted(totals, key=lambda cv: (-cv[1], cv[0]))
    rows = [
        ContributionRow(rank=i, country=c, total=v, percent=100.0 * v / grand)
        for i, (c, v) in enumerate(ordered, start=1)
    ]
    return ContributionTable(factor=factor, year=year, rows=rows)
