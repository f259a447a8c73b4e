"""Emissions to concentrations: CO2 remainder convolution, CH4, N2O, F-gas, drivers."""

from dataclasses import dataclass

import numpy as np

PREINDUSTRIAL_CO2_PPM = 280.0
GTCO2_PER_PPM = 7.797

TAU_CH4 = 9.5
TAU_N2O = 123.1
TAU_FGAS = 760.0

CO2_PER_CH4 = 44.009 / 16.0422
# Pg of gas per ppb (or ppt for F-gas), from tonnes-per-unit constants
PG_CH4_PER_PPB = 2.842e6 / 1e9

N2O_TG_PER_PPB = 7.7988
N2O_BASE_YEAR = 1950
N2O_BASE_PPB = 289.0


# CO2 remainder fractions ------------------------------------------------------

@dataclass(frozen=True)
class RemainderFit:
    a: float  # offset added to the fast exponential
    fast: float  # fast decay rate (1/yr)
    slow: float  # slow decay rate (1/yr)
    floor: float  # long-run airborne fraction

    def __call__(self, years_elapsed):
        y = np.asarray(years_elapsed, dtype=float)
        if np.any(y < 0):
            raise ValueError("elapsed years must be non-negative")
        w = y / (y + 10.0)
        out = ((self.a + np.exp(-self.fast * y)) / (self.a + 1.0)
               * np.exp(-self.slow * y + w * np.log(0.8)) + w * self.floor)
        return float(out) if out.ndim == 0 else out


REMAINDER = {
    "low": RemainderFit(4 / (5 * np.e), 0.02285, 0.00155, 0.08),
    "central": RemainderFit(6 / (7 * np.e), 0.008215, 0.0008, 0.113),
    "high": RemainderFit(4 / (3 * np.e), 0.004815, 0.0008, 0.21),
}


def co2_remainder_fraction(years_elapsed, variant="central"):
    return REMAINDER[str(getattr(variant, "value", variant))](years_elapsed)


def propagate_co2(emissions_gtco2, variant="central"):
    """ppm per year from a yearly GtCO2 emission array (index 0 = first year)."""
    em = np.asarray(emissions_gtco2, dtype=float)
    if np.any(em < 0):
        raise ValueError("emissions must be non-negative")
    kernel = co2_remainder_fraction(np.arange(em.size), variant)
    return PREINDUSTRIAL_CO2_PPM + np.convolve(em / GTCO2_PER_PPM, kernel)[: em.size]


def efold_decay(n0, tau, t):
    if np.any(np.asarray(tau) <= 0):
        raise ValueError("tau must be positive")
    return n0 * np.exp(-np.asarray(t, dtype=float) / tau)


def half_life(tau):
    return tau * np.log(2.0)


def decaying_stock(inflow, tau):
    """Stock fed by yearly inflow with e-fold loss; returns (stock, yearly loss).

    Inflow lands at the end of its year and starts decaying the next one.
    """
    inflow = np.asarray(inflow, dtype=float)
    keep = np.exp(-1.0 / tau)
    stock = np.zeros(inflow.size)
    lost = np.zeros(inflow.size)
    s = 0.0
    for i, q in enumerate(inflow):
        lost[i] = s * (1.0 - keep)
        s = s * keep + q
        stock[i] = s
    return stock, lost


# CH4 ------------------------------------------------------------------------

def ch4_energy_ppb(gtc):
    """Extraction-linked CH4 for a year's carbon extraction (GtC/yr)."""
    c = np.asarray(gtc, dtype=float)
    if np.any(c <= 0):
        raise ValueError("carbon extraction must be positive")
    return 369.2592 * c**0.29056


def ch4_population_ppb(pop):
    p = np.asarray(pop, dtype=float)
    if np.any(p <= 0):
        raise ValueError("population must be positive")
    return 530.3234 * p**0.3948


def ch4_baseline_ppb(co2_ppm):
    return 881.441 + 2.386 * np.asarray(co2_ppm, dtype=float)


def ch4_population_ratio(pop, gtc):
    """Population-linked share of the two sector CH4 fits."""
    pp = ch4_population_ppb(pop)
    return pp / (pp + ch4_energy_ppb(gtc))


# N2O ------------------------------------------------------------------------

def n2o_anthropogenic_tg(pop, gwp_trillions):
    """(agriculture, industry) Tg N2O per year, net of decay as fitted."""
    ag = -0.3904 + 0.659400 * np.asarray(pop, dtype=float)
    ind = 0.776037 + 0.0257940 * np.asarray(gwp_trillions, dtype=float)
    return ag, ind


def n2o_tau_mass_balance(n2o_mass_tg, mean_source_tg, mean_delta_tg):
    denom = mean_source_tg - mean_delta_tg
    if denom <= 0:
        raise ValueError("source must exceed the yearly burden change")
    return n2o_mass_tg / denom


def n2o_series(years, pop, gwp_trillions):
    """Accumulate net N2O increments on the 1950 level; constant before then."""
    years = np.asarray(years)
    ag, ind = n2o_anthropogenic_tg(pop, np.maximum(gwp_trillions, 0.0))
    inc = np.where(years > N2O_BASE_YEAR, np.maximum(ag + ind, 0.0) / N2O_TG_PER_PPB, 0.0)
    return N2O_BASE_PPB + np.cumsum(inc)


# F-gas ----------------------------------------------------------------------

def fgas_ppt(co2_ppm):
    return 7.182 + 3.352 * np.asarray(co2_ppm, dtype=float)


FGAS_TAU_COMPONENTS = (1278.0, 509.0, 492.0)


# population and gross world product ------------------------------------------

@dataclass(frozen=True)
class PopulationCurve:
    variant: str
    cap: float
    cap_year: int
    coeffs: tuple  # highest power first

    def __call__(self, year):
        y = np.asarray(year, dtype=float)
        if np.any(y < 1):
            raise ValueError("population defined from year 1")
        early = 0.000245 * y + 0.118240047961
        mid = 0.000011 * np.exp(0.00634999 * y)
        modern = np.minimum(np.polyval(self.coeffs, y), self.cap)
        out = np.where(y < 1700, early, np.where(y < 1950, mid, np.where(y > self.cap_year, self.cap, modern)))
        return float(out) if out.ndim == 0 else out


POPULATION = {
    "norm": PopulationCurve(
        "norm", 10.9, 2107,
        (2.64969450476903e-8, -2.17800322941767e-4, 0.670800158391551,
         -917.412621331478, 470082.225075675),
    ),
    "high": PopulationCurve(
        "high", 37.2, 2330,
        (9.12508314e-14, -1.2207291841e-9, 0.6785342706e-5, -0.0200612724127,
         33.277680978726, -29368.1480547, 10773554.975),
    ),
}

GWP_GROWTH_START = {"norm": 2100, "high": 2300}


def population(year, variant="norm"):
    return POPULATION[str(getattr(variant, "value", variant))](year)


def gwp(pop, year, variant="norm"):
    """Gross world product, real trillions USD."""
    v = str(getattr(variant, "value", variant))
    y = np.asarray(year, dtype=float)
    return 16.64 * np.asarray(pop, dtype=float) - 40.7232 + 0.015 * np.maximum(0.0, y - GWP_GROWTH_START[v])
