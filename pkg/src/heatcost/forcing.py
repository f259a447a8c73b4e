"""Greenhouse forcing (W m-2) from concentrations, and the forcing-temperature maps.

CO2, CH4 and N2O use simplified expressions with band-overlap terms (CO2 and CH4
absorption take precedence over N2O). The overlap prefactors are evaluated with
concentrations clamped to the range the expressions were fitted on, which keeps each
component monotone in its own gas at the very high levels the DICE-style runs reach.
"""

from dataclasses import dataclass

import numpy as np

# reference (pre-industrial) state for the forcing expressions
REF_CO2 = 278.0
REF_CH4 = 722.0
REF_N2O = 270.0

FIT_MAX_CO2 = 2000.0
FIT_MAX_CH4 = 3500.0
FIT_MAX_N2O = 525.0

# Lumped F-gas radiative efficiency, W m-2 per ppt; the order of typical halocarbon
# efficiencies (0.1-0.3 W m-2 per ppb).
FGAS_EFFICIENCY = 1.2e-4

SAEROSOL_SWITCH_YEAR = 2016


def co2_forcing(c, n):
    c = np.asarray(c, dtype=float)
    dc = np.minimum(c, FIT_MAX_CO2) - REF_CO2
    nbar = 0.5 * (np.minimum(n, FIT_MAX_N2O) + REF_N2O)
    pre = -2.4e-7 * dc**2 + 7.2e-4 * np.abs(dc) - 2.1e-4 * nbar + 5.36
    return pre * np.log(c / REF_CO2)


def ch4_forcing(m, n):
    m = np.asarray(m, dtype=float)
    mbar = 0.5 * (np.minimum(m, FIT_MAX_CH4) + REF_CH4)
    nbar = 0.5 * (np.minimum(n, FIT_MAX_N2O) + REF_N2O)
    pre = -1.3e-6 * mbar - 8.2e-6 * nbar + 0.043
    return pre * (np.sqrt(m) - np.sqrt(REF_CH4))


def n2o_forcing(c, m, n):
    n = np.asarray(n, dtype=float)
    cbar = 0.5 * (np.minimum(c, FIT_MAX_CO2) + REF_CO2)
    mbar = 0.5 * (np.minimum(m, FIT_MAX_CH4) + REF_CH4)
    nbar = 0.5 * (np.minimum(n, FIT_MAX_N2O) + REF_N2O)
    pre = -8.0e-6 * cbar + 4.2e-6 * nbar - 4.9e-6 * mbar + 0.117
    return pre * (np.sqrt(n) - np.sqrt(REF_N2O))


def fgas_forcing(f, efficiency=FGAS_EFFICIENCY):
    return efficiency * np.asarray(f, dtype=float)


@dataclass(frozen=True)
class ForcingBreakdown:
    start_year: int
    co2: np.ndarray
    ch4: np.ndarray
    n2o: np.ndarray
    fgas: np.ndarray

    @property
    def total(self):
        return self.co2 + self.ch4 + self.n2o + self.fgas


def eei(co2_ppm, ch4_ppb, n2o_ppb, fgas_ppt, start_year=0, fgas_efficiency=FGAS_EFFICIENCY, reference=None):
    """Per-gas forcing; works on scalars or aligned arrays.

    reference: optional (ppm, ppb, ppb, ppt) state whose per-gas forcing is subtracted,
    so that state maps to zero.
    """
    c, m, n, f = (np.atleast_1d(np.asarray(v, dtype=float)) for v in (co2_ppm, ch4_ppb, n2o_ppb, fgas_ppt))
    if np.any(c <= 0) or np.any(m <= 0) or np.any(n <= 0) or np.any(f < 0):
        raise ValueError("concentrations must be positive")
    parts = [co2_forcing(c, n), ch4_forcing(m, n), n2o_forcing(c, m, n), fgas_forcing(f, fgas_efficiency)]
    if reference is not None:
        base = eei(*reference, fgas_efficiency=fgas_efficiency)
        parts = [p - float(b[0]) for p, b in zip(parts, (base.co2, base.ch4, base.n2o, base.fgas))]
    return ForcingBreakdown(start_year, *parts)


# forcing -> temperature

PRE_LOW_SULFUR = (-0.18656496801124243078, 0.38021409032645513676)
POST_LOW_SULFUR = (-0.835529651448654, 0.609456933813825)
ERAS = {"pre": PRE_LOW_SULFUR, "post": POST_LOW_SULFUR}


def eei_to_temp(f_wm2, era="pre"):
    a, b = ERAS[era]
    return a + b * np.asarray(f_wm2, dtype=float)


def era_crossover():
    (a1, b1), (a2, b2) = PRE_LOW_SULFUR, POST_LOW_SULFUR
    return (a2 - a1) / (b1 - b2)


def forcing_temperature(total_wm2, years, saerosol=False, switch_year=SAEROSOL_SWITCH_YEAR):
    years = np.asarray(years)
    pre = eei_to_temp(total_wm2, "pre")
    if not saerosol:
        return pre
    return np.where(years >= switch_year, eei_to_temp(total_wm2, "post"), pre)
