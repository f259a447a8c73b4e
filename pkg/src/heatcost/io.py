"""Dataset ingestion and the flat key=value config file."""

import csv
import os
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from .series import YearSeries
from .storms import parse_hurdat2

DATA_DIR_ENV = "OPTIMEM_DATA_DIR"

# default file names looked up under the data directory
DEFAULT_FILES = {
    "noaa": "noaa_twd.csv",
    "ohc": "ohc.csv",
    "hurdat2": "hurdat2.txt",
    "gs30": "GS30.csv",
    "fedfunds": "FEDFUNDS.csv",
    "cpi": "CPIAUCSL.csv",
}


class SchemaError(ValueError):
    pass


def data_dir(explicit=None):
    d = explicit or os.environ.get(DATA_DIR_ENV)
    return Path(d) if d else None


def find_dataset(key, explicit=None, root=None):
    """Path for a dataset key, or None when it is not available."""
    if explicit:
        p = Path(explicit)
        if not p.is_file():
            raise FileNotFoundError(f"dataset file not found: {p}")
        return p
    base = data_dir(root)
    if base is None:
        return None
    p = base / DEFAULT_FILES[key]
    return p if p.is_file() else None


def _rows(path):
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    reader = csv.DictReader(lines)
    if reader.fieldnames is None:
        raise SchemaError(f"{path}: empty file")
    reader.fieldnames = [f.strip().lower() for f in reader.fieldnames]
    return reader


def _number(path, lineno, col, text):
    try:
        return float(text)
    except (TypeError, ValueError):
        raise SchemaError(f"{path}: row {lineno}, column {col!r}: not a number ({text!r})") from None


def _require(path, reader, cols):
    missing = [c for c in cols if c not in reader.fieldnames]
    if missing:
        raise SchemaError(f"{path}: missing column(s) {', '.join(missing)}")


def _yearly(path, value_col, extra=()):
    reader = _rows(path)
    _require(path, reader, ("year", value_col, *extra))
    out = {c: [] for c in ("year", value_col, *extra)}
    for lineno, row in enumerate(reader, 2):
        y = _number(path, lineno, "year", row["year"])
        if not float(y).is_integer():
            raise SchemaError(f"{path}: row {lineno}: year must be an integer")
        out["year"].append(int(y))
        for c in (value_col, *extra):
            out[c].append(_number(path, lineno, c, row[c]))
    yrs = out["year"]
    if not yrs:
        raise SchemaError(f"{path}: no data rows")
    if any(b != a + 1 for a, b in zip(yrs[:-1], yrs[1:])):
        raise SchemaError(f"{path}: years must be consecutive and ascending")
    return {k: np.asarray(v) for k, v in out.items()}


def read_noaa_twd(path):
    """Yearly total weather damages; columns year, damages_busd (billions USD)."""
    t = _yearly(path, "damages_busd")
    if np.any(t["damages_busd"] < 0):
        raise SchemaError(f"{path}: negative damages")
    return YearSeries(int(t["year"][0]), t["damages_busd"] * 1e9, "USD")


def read_ohc(path):
    """Ocean heat content; columns year, ohc_zj and optionally lower_zj, upper_zj."""
    reader_cols = _rows(path).fieldnames
    band = ("lower_zj", "upper_zj") if {"lower_zj", "upper_zj"} <= set(reader_cols) else ()
    t = _yearly(path, "ohc_zj", band)
    if band:
        bad = np.flatnonzero(t["lower_zj"] > t["upper_zj"])
        if bad.size:
            raise SchemaError(f"{path}: lower bound above upper bound in year {t['year'][bad[0]]}")
    return t


def read_series(path, unit, value_col="value"):
    t = _yearly(path, value_col)
    return YearSeries(int(t["year"][0]), t[value_col], unit)


def read_fred(path):
    """FRED monthly DATE,VALUE file -> {(year, month): value}; gaps are errors."""
    reader = _rows(path)
    _require(path, reader, ("date",))
    vcol = [c for c in reader.fieldnames if c != "date"]
    if len(vcol) != 1:
        raise SchemaError(f"{path}: expected DATE and one value column")
    out, blanks = {}, []
    for lineno, row in enumerate(reader, 2):
        try:
            y, m = (int(x) for x in row["date"].strip().split("-")[:2])
        except ValueError:
            raise SchemaError(f"{path}: row {lineno}: bad date {row['date']!r}") from None
        text = row[vcol[0]].strip()
        if text in ("", "."):
            blanks.append(f"{y}-{m:02d}")
            continue
        out[(y, m)] = _number(path, lineno, vcol[0], text)
    months = sorted(out)
    idx = [y * 12 + m - 1 for y, m in months]
    gaps = [f"{k // 12}-{k % 12 + 1:02d}" for a, b in zip(idx[:-1], idx[1:]) for k in range(a + 1, b)]
    if gaps or blanks:
        missing = sorted(set(gaps) | set(blanks))
        raise SchemaError(f"{path}: missing months: {', '.join(missing)}")
    return out


def read_hurdat2(path):
    return parse_hurdat2(Path(path).read_text())


SCHEMAS = {
    "noaa": read_noaa_twd,
    "ohc": read_ohc,
    "fred": read_fred,
    "hurdat2": read_hurdat2,
}


def ingest_csv(path, schema):
    try:
        reader = SCHEMAS[schema]
    except KeyError:
        raise SchemaError(f"unknown schema {schema!r}; choose from {', '.join(SCHEMAS)}") from None
    return reader(path)


# config ----------------------------------------------------------------------

@dataclass
class EngineConfig:
    """Flat key=value file; lists are comma separated, '#' starts a comment."""

    data_dir: str = ""
    noaa: str = ""
    ohc: str = ""
    hurdat2: str = ""
    scenarios: list = field(default_factory=lambda: ["baseline-norm"])
    discounts: list = field(default_factory=lambda: [-0.0215, 0.0, 0.00435, 0.0157])
    terms: list = field(default_factory=lambda: [300, 500])
    years: list = field(default_factory=lambda: [2025])
    ww2_exclusion: bool = True
    greenbook_floor: bool = False
    out_dir: str = "out"

    def __post_init__(self):
        for name in ("scenarios", "discounts", "terms", "years"):
            if not getattr(self, name):
                raise ValueError(f"config: {name} must be non-empty")
        for name in ("noaa", "ohc", "hurdat2", "data_dir"):
            p = getattr(self, name)
            if p and not Path(p).exists():
                raise FileNotFoundError(f"config: {name} path does not exist: {p}")


_CASTS = {"discounts": float, "terms": int, "years": int, "scenarios": str}


def _cast(name, text):
    if name in _CASTS:
        return [_CASTS[name](x.strip()) for x in text.split(",") if x.strip()]
    if name in ("ww2_exclusion", "greenbook_floor"):
        low = text.strip().lower()
        if low not in ("true", "false", "1", "0", "yes", "no"):
            raise ValueError(f"config: {name} must be a boolean")
        return low in ("true", "1", "yes")
    return text.strip()


def parse_config(text):
    known = {f.name for f in fields(EngineConfig)}
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        values[key] = _cast(key, val)
    return EngineConfig(**values)


def load_config(path):
    return parse_config(Path(path).read_text())
