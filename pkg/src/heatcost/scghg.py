"""Social cost per tonne of CO2, CH4, N2O and F-gas."""

import csv
import json
from dataclasses import asdict, dataclass

import numpy as np

from . import gases
from .scenarios import ScenarioSpec

TONNES_CO2_PER_PPM = 7.797e9
TONNES_CH4_PER_PPB = 2.842e6
TONNES_N2O_PER_PPB = 7.797e6
TONNES_FGAS_PER_PPT = 2.076e4

TRACE_BASE_YEAR = 1950
TAU = {"ch4": gases.TAU_CH4, "n2o": gases.TAU_N2O, "fgas": gases.TAU_FGAS}
GASES = ("co2", "ch4", "n2o", "fgas")
CSV_HEADER = ("gas", "scenario", "co2_variant", "start_year", "term", "discount", "cost_per_tonne")


def discount_factors(discount, term):
    if discount <= -1:
        raise ValueError("discount must exceed -100%")
    return (1.0 + discount) ** -np.arange(term, dtype=float)


def pv_future_losses(values, discount, term):
    v = np.asarray(values, dtype=float)
    if term > v.size:
        raise ValueError("term longer than the damages series")
    return float(np.dot(v[:term], discount_factors(discount, term)))


def per_tonne_stream(run, gas, variant, start_year, term):
    """Undiscounted damages per tonne for each year of the term (index 0 = start_year)."""
    g = run.gas
    v = run.variant(variant)
    years = np.arange(start_year, start_year + term)
    hi = years - v.heat.start_year
    gi = years - g.years[0]
    if hi[0] < 0 or gi[-1] >= g.years.size:
        raise ValueError(f"years {years[0]}..{years[-1]} outside the simulated range")
    dmg = v.global_damages_usd[gas][hi]
    elapsed = np.arange(term, dtype=float)
    if gas == "co2":
        excess = g.co2_ppm[v.variant][gi] - gases.PREINDUSTRIAL_CO2_PPM
        denom = excess * TONNES_CO2_PER_PPM
        keep = gases.co2_remainder_fraction(elapsed, v.variant)
    else:
        if start_year < TRACE_BASE_YEAR:
            raise ValueError(f"{gas} costs start in {TRACE_BASE_YEAR}")
        b = TRACE_BASE_YEAR - g.years[0]
        if gas == "ch4":
            denom = g.ch4_population_share[gi] * (g.ch4_ppb[gi] - g.ch4_ppb[b]) * TONNES_CH4_PER_PPB
        elif gas == "n2o":
            denom = (g.n2o_ppb[gi] - g.n2o_ppb[b]) * TONNES_N2O_PER_PPB
        else:
            denom = (g.fgas_ppt[gi] - g.fgas_ppt[b]) * TONNES_FGAS_PER_PPT
        keep = gases.efold_decay(1.0, TAU[gas], elapsed)
    if np.any(denom <= 0):
        raise ValueError(f"{gas} concentration at or below its base level")
    return dmg * keep / denom


def social_cost(run, gas, variant, start_year, term, discount):
    stream = per_tonne_stream(run, gas, variant, start_year, term)
    return float(np.dot(stream, discount_factors(discount, term)))


@dataclass(frozen=True)
class SCGHGEntry:
    gas: str
    scenario: str
    co2_variant: str
    start_year: int
    term: int
    discount: float
    cost_per_tonne: float
    error: str = ""


def scghg_grid(runs, discounts, terms, years, gases_=GASES, variants=("low", "central", "high")):
    """Cross product in axis order; failing cells are flagged, never fatal."""
    if not (runs and discounts and terms and years):
        raise ValueError("grid axes must be non-empty")
    rows = []
    for run in runs:
        for gas in gases_:
            for v in variants:
                for d in discounts:
                    for term in terms:
                        for y in years:
                            try:
                                cost, err = social_cost(run, gas, v, y, term, d), ""
                            except (ValueError, FloatingPointError) as exc:
                                cost, err = float("nan"), str(exc)
                            rows.append(SCGHGEntry(gas, run.spec.family_id, v, y, term, d, cost, err))
    return rows


def format_cost(x):
    """3-significant-digit scientific notation, as in published tables."""
    if not np.isfinite(x):
        return "nan"
    return f"{x:.2E}"


def write_csv(rows, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow([r.gas, r.scenario, r.co2_variant, r.start_year, r.term, f"{r.discount:g}",
                        format_cost(r.cost_per_tonne)])


def write_json(rows, path):
    with open(path, "w") as fh:
        json.dump([asdict(r) for r in rows], fh, indent=1)


def read_csv(path):
    with open(path) as fh:
        return [SCGHGEntry(r["gas"], r["scenario"], r["co2_variant"], int(r["start_year"]), int(r["term"]),
                           float(r["discount"]), float(r["cost_per_tonne"])) for r in csv.DictReader(fh)]


def spec_label(spec: ScenarioSpec):
    return spec.family_id
