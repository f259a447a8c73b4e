"""Carbon extraction curves and permafrost release."""

from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import expit

FIRST_PRODUCTION_YEAR = 1850

CO2_PER_C = 44.009 / 12.011
CH4_PER_C = 16.0422 / 12.011
GTCO2_PER_GTC = 3.664141204


@dataclass(frozen=True)
class RichardsParams:
    x: float
    k: float
    g: float
    Gc: float
    Eg: float
    s: float

    def __post_init__(self):
        if self.Gc <= 0 or self.Eg < 1 or self.k <= 0 or self.g <= 0:
            raise ValueError(f"invalid production-curve parameters {self}")


BASE_RESERVE = RichardsParams(x=0.08, k=1.031, g=0.010, Gc=1000, Eg=1.0008, s=0)
MODERN_RESERVE = RichardsParams(x=0.1, k=1.81, g=0.01250, Gc=500, Eg=1.00275, s=95)


def richards_rate(year, p):
    """Reserve-growth Richards term exactly as published (t is the calendar year)."""
    t = np.asarray(year, dtype=float)
    e = np.exp(-p.k * p.g * (t - p.s))
    return (t - 1849) * p.x * p.k * p.Gc * p.Eg**t * e / (e + 1) ** (1 / p.g + 1)


def published_production(year):
    """Base + modern Richards terms as printed. Kept for reference; see production_curve."""
    return richards_rate(year, BASE_RESERVE) + richards_rate(year, MODERN_RESERVE)


@dataclass(frozen=True)
class LogisticPulse:
    """Derivative of a logistic: total * k * e / (1 + e)**2 with e = exp(-k (t - mid))."""

    total: float
    k: float
    mid: float

    def rate(self, year):
        e = np.exp(-self.k * (np.asarray(year, dtype=float) - self.mid))
        return self.total * self.k * e / (1.0 + e) ** 2


# From scripts/refit_production_curve.py: peak year, 1850-2700 total, observed CO2 under
# the central remainder fit and a few extraction anchors. The printed Richards parameters miss all of these.
PRODUCTION_PULSES = (
    LogisticPulse(total=618.445346, k=0.051899, mid=2040.11511),
    LogisticPulse(total=1573.327085, k=0.011589, mid=2160.31525),
)


def gtc_production(year, pulses=PRODUCTION_PULSES):
    """Yearly fossil carbon extraction in GtC."""
    y = np.asarray(year)
    if np.any(y < FIRST_PRODUCTION_YEAR):
        raise ValueError(f"production curve starts in {FIRST_PRODUCTION_YEAR}")
    out = sum(p.rate(y) for p in pulses)
    return float(out) if np.ndim(out) == 0 else out


def production_series(first_year, last_year, pulses=PRODUCTION_PULSES):
    """Extraction over a year range, zero before the curve starts."""
    years = np.arange(first_year, last_year + 1)
    out = np.zeros(years.size)
    live = years >= FIRST_PRODUCTION_YEAR
    out[live] = gtc_production(years[live], pulses)
    return out


def dice_consumption(year, base_year, base_gtc, growth=0.014):
    if np.any(np.asarray(year) < base_year):
        raise ValueError("year precedes the growth base year")
    return base_gtc * (1.0 + growth) ** (np.asarray(year) - base_year)


# permafrost

PERMAFROST_INVENTORY_PG = 1500.0
PERMAFROST_MIDPOINT = 2060

RELEASE_LIMITS = {
    "high": (0.002259527, 0.000076581),
    "low": (0.000307235, 0.000014406),
}

# Logistic steepness from calibrate_permafrost_k(): balances the 134 GtC-by-2100 total
# against the 10.88 Pg CO2 peak year. No k hits 134 exactly (the floor is ~135.5).
PERMAFROST_K = 0.0943627


@dataclass(frozen=True)
class PermafrostState:
    inventory_pg: float = PERMAFROST_INVENTORY_PG
    midpoint: int = PERMAFROST_MIDPOINT
    k: float = PERMAFROST_K

    def __post_init__(self):
        if not 0 <= self.inventory_pg <= PERMAFROST_INVENTORY_PG:
            raise ValueError("inventory out of range")


def permafrost_step(state, year, mode="high"):
    """One year of thaw. Returns (Pg CO2, Pg CH4, carbon_pg, new_state)."""
    co2_lim, ch4_lim = RELEASE_LIMITS[mode]
    if state.inventory_pg <= 0:
        return 0.0, 0.0, 0.0, state
    sig = expit(state.k * (year - state.midpoint))
    c_co2 = state.inventory_pg * co2_lim * sig
    c_ch4 = state.inventory_pg * ch4_lim * sig
    carbon = min(c_co2 + c_ch4, state.inventory_pg)
    if carbon < c_co2 + c_ch4:
        f = carbon / (c_co2 + c_ch4)
        c_co2, c_ch4 = c_co2 * f, c_ch4 * f
    new = replace(state, inventory_pg=max(state.inventory_pg - carbon, 0.0))
    return c_co2 * CO2_PER_C, c_ch4 * CH4_PER_C, carbon, new


def permafrost_series(first_year, last_year, mode="high", k=PERMAFROST_K):
    """Yearly (Pg CO2, Pg CH4, Pg C) arrays over an inclusive range."""
    n = last_year - first_year + 1
    co2, ch4, c = np.zeros(n), np.zeros(n), np.zeros(n)
    state = PermafrostState(k=k)
    for i, y in enumerate(range(first_year, last_year + 1)):
        co2[i], ch4[i], c[i], state = permafrost_step(state, y, mode)
    return co2, ch4, c


def calibrate_permafrost_k(total_gtc=134.0, by_year=2100, peak_co2_pg=10.88, mode="high"):
    """Minimax relative miss over the cumulative-by-year and peak-CO2 checkpoints."""

    def worst(k):
        co2, _, c = permafrost_series(1, by_year + 300, mode, k)
        return max(abs(c[:by_year].sum() / total_gtc - 1), abs(co2.max() / peak_co2_pg - 1))

    res = minimize_scalar(worst, bounds=(0.02, 0.5), method="bounded", options={"xatol": 1e-9})
    return float(res.x)
