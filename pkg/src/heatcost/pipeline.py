"""Scenario runs: carbon-and-gases loop, ocean loop, damages, risk and SC-GHG outputs."""

import hashlib
import json
from dataclasses import asdict, dataclass, field, replace
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import carbon, damages, forcing, gases, ocean
from .scenarios import Aerosol, Base, CO2Variant, ScenarioSpec

FIRST_YEAR = 1
LAST_YEAR = 5000
DICE_BASE_YEAR = 2021
DICE_LAST_YEAR = 2300
LOW_CONFIDENCE_UNTIL = 1750
VARIANTS = tuple(v.value for v in CO2Variant)
REFERENCE = ScenarioSpec(Base.BASELINE)


@dataclass(frozen=True)
class EngineSettings:
    fgas_efficiency: float = forcing.FGAS_EFFICIENCY
    saerosol_switch_year: int = forcing.SAEROSOL_SWITCH_YEAR
    # forcing is zero at 280 ppm CO2 with the other gases at this year's level; None -> absolute
    forcing_reference_year: int | None = 1950
    ocean_params: ocean.OceanParams | None = None  # None -> dataset-free calibration
    damages_scale: float | None = None  # None -> scale to the published damages fit
    sigma_scale: float | None = None
    wde_origin: int = damages.WDE_ORIGIN
    sigma_origin: int = damages.SIGMA_ORIGIN

    def digest(self):
        payload = json.dumps(asdict(self), sort_keys=True, default=str)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


DEFAULT_SETTINGS = EngineSettings()


def _years():
    return np.arange(FIRST_YEAR, LAST_YEAR + 1)


def extraction(spec):
    years = _years()
    gtc = carbon.production_series(FIRST_YEAR, LAST_YEAR)
    if spec.base is Base.DICE:
        i0 = DICE_BASE_YEAR - FIRST_YEAR
        grow = (years > DICE_BASE_YEAR) & (years <= DICE_LAST_YEAR)
        gtc = gtc.copy()
        gtc[grow] = carbon.dice_consumption(years[grow], DICE_BASE_YEAR, gtc[i0])
        # the growth path is only defined to its horizon
        gtc[years > DICE_LAST_YEAR] = 0.0
    return gtc


def permafrost_mode(spec):
    return "low" if spec.base is Base.BASELINE else "high"


@dataclass(frozen=True)
class GasRun:
    """Everything the carbon-and-gases loop produces for one scenario family."""

    spec: ScenarioSpec
    years: np.ndarray
    gtc: np.ndarray
    co2_emissions: np.ndarray  # GtCO2/yr incl. permafrost and oxidised CH4
    permafrost_co2: np.ndarray
    permafrost_ch4: np.ndarray
    co2_ppm: dict
    ch4_ppb: np.ndarray
    ch4_permafrost_ppb: np.ndarray
    ch4_population_ppb: np.ndarray
    ch4_population_share: np.ndarray
    n2o_ppb: np.ndarray
    fgas_ppt: np.ndarray
    population: np.ndarray
    forcing: dict  # variant -> ForcingBreakdown
    stack_temps: dict  # variant -> 4 x n forcing temperatures (cumulative gas stacks)

    def index(self, year):
        return int(year) - FIRST_YEAR

    def eei_t(self, variant):
        return self.stack_temps[variant][-1]


def stack_temperatures(brk, years, saerosol, switch_year):
    stacks = np.cumsum([brk.co2, brk.ch4, brk.n2o, brk.fgas], axis=0)
    pre = forcing.eei_to_temp(stacks, "pre")
    if not saerosol:
        return pre
    # after the switch the low-sulfur map applies wherever it runs warmer
    post = np.maximum(pre, forcing.eei_to_temp(stacks, "post"))
    return np.where(years >= switch_year, post, pre)


def run_carbon_gases_loop(spec, settings=DEFAULT_SETTINGS):
    years = _years()
    pop_variant = spec.population.value
    gtc = extraction(spec)
    try:
        pf_co2, pf_ch4, _ = carbon.permafrost_series(FIRST_YEAR, LAST_YEAR, permafrost_mode(spec))
    except Exception as exc:  # pragma: no cover - stage name for the caller
        raise RuntimeError(f"permafrost stage failed: {exc}") from exc
    ch4_stock, ch4_lost = gases.decaying_stock(pf_ch4, gases.TAU_CH4)
    co2_em = gtc * carbon.GTCO2_PER_GTC + pf_co2 + ch4_lost * gases.CO2_PER_CH4

    ppm = {v: gases.propagate_co2(co2_em, v) for v in VARIANTS}
    # CH4 and F-gas follow the central CO2 path, so they are shared by the three variants
    ch4_pf = ch4_stock / gases.PG_CH4_PER_PPB
    ch4 = gases.ch4_baseline_ppb(ppm["central"]) + ch4_pf
    fgas = gases.fgas_ppt(ppm["central"])

    pop = gases.population(years, pop_variant)
    world_product = gases.gwp(pop, years, pop_variant)
    n2o = gases.n2o_series(years, pop, world_product)

    pop_ch4 = gases.ch4_population_ppb(pop)
    energy_ch4 = np.where(gtc > 0, gases.ch4_energy_ppb(np.where(gtc > 0, gtc, 1.0)), 0.0)
    share = pop_ch4 / (pop_ch4 + energy_ch4 + ch4_pf)

    ref = None
    if settings.forcing_reference_year is not None:
        j = settings.forcing_reference_year - FIRST_YEAR
        ref = (gases.PREINDUSTRIAL_CO2_PPM, ch4[j], n2o[j], fgas[j])
    saer = spec.aerosol is Aerosol.SAEROSOL
    brks, temps = {}, {}
    for v in VARIANTS:
        brk = forcing.eei(ppm[v], ch4, n2o, fgas, FIRST_YEAR, settings.fgas_efficiency, ref)
        brks[v] = brk
        temps[v] = stack_temperatures(brk, years, saer, settings.saerosol_switch_year)
    return GasRun(spec, years, gtc, co2_em, pf_co2, pf_ch4, ppm, ch4, ch4_pf, pop_ch4, share,
                  n2o, fgas, pop, brks, temps)


@lru_cache(maxsize=32)
def cached_gas_run(spec, settings=DEFAULT_SETTINGS):
    return run_carbon_gases_loop(ScenarioSpec(spec.base, spec.population, spec.aerosol), settings)


# calibration ----------------------------------------------------------------

@dataclass(frozen=True)
class Calibration:
    ocean_params: ocean.OceanParams
    damages_scale: float
    damages_r2: float
    sigma_scale: float
    sigma_r2: float
    source: str


def _ocean_forcing(run, variant):
    i = run.index(ocean.OCEAN_START_YEAR)
    return run.eei_t(variant)[i:]


@lru_cache(maxsize=8)
def calibrate(settings=DEFAULT_SETTINGS, ohc=None, damages_record=None):
    """Ocean parameters, damages scale and sigma scale from the reference run.

    ohc / damages_record are optional hashable tuples of (year, value[, lower, upper]).
    """
    ref = cached_gas_run(REFERENCE, settings)
    ft = _ocean_forcing(ref, "central")
    source = []
    if settings.ocean_params is not None:
        params = settings.ocean_params
        source.append("ocean:given")
    elif ohc:
        cols = list(zip(*ohc))
        data = {"year": cols[0], "ohc_zj": cols[1]}
        if len(cols) >= 4:
            data["lower_zj"], data["upper_zj"] = cols[2], cols[3]
        params = ocean.calibrate_ocean(data, ft).params
        source.append("ocean:dataset")
    else:
        params = ocean.calibrate_to_gain(ft)
        source.append("ocean:gain-1960-2021")

    heat = ocean.run_ocean_loop(ft, params)
    q_above = heat.above()
    y0, y1 = damages.DAMAGES_WINDOW
    win_years = np.arange(y0, y1 + 1)
    qw = q_above[win_years - heat.start_year]

    if damages_record:
        yrs, vals = (np.asarray(c) for c in list(zip(*damages_record))[:2])
        wde = damages.fit_exponential(yrs, vals, settings.wde_origin)
        dplus = damages.positive_residuals(yrs, vals, wde)
        sig = damages.trailing_sigma(dplus)
        sfit = damages.fit_exponential([y for y, _ in sig], [s for _, s in sig], settings.sigma_origin)
        source.append("damages:record")
    else:
        wde = damages.ExponentialFit(*damages.WDE_PUBLISHED, 1.0, settings.wde_origin)
        sfit = damages.ExponentialFit(*damages.SIGMA_PUBLISHED, 1.0, settings.sigma_origin)
        source.append("damages:published-fits")

    if settings.damages_scale is not None:
        scale, r2 = settings.damages_scale, float("nan")
    else:
        scale, r2 = damages.scale_heat_to_target(qw, wde(win_years))
    if settings.sigma_scale is not None:
        sscale, sr2 = settings.sigma_scale, float("nan")
    else:
        sscale, sr2 = damages.scale_heat_to_target(qw, sfit(win_years))
    return Calibration(params, scale, r2, sscale, sr2, ",".join(source))


# full run -------------------------------------------------------------------

@dataclass(frozen=True)
class VariantRun:
    variant: str
    heat: ocean.HeatState
    shares: damages.HeatShares
    us_damages_busd: np.ndarray  # ocean-loop years
    global_damages_usd: dict  # gas -> array over ocean-loop years
    valid: np.ndarray  # False once yearly ocean heat uptake turns negative


@dataclass(frozen=True)
class ScenarioRun:
    spec: ScenarioSpec
    gas: GasRun
    calibration: Calibration
    variants: dict
    settings: EngineSettings = field(default=DEFAULT_SETTINGS)

    def variant(self, v):
        return self.variants[str(getattr(v, "value", v))]


def run_variant(gas, variant, cal):
    ft_stacks = [s[gas.index(ocean.OCEAN_START_YEAR):] for s in gas.stack_temps[variant]]
    heats = [ocean.run_ocean_loop(t, cal.ocean_params) for t in ft_stacks]
    total = heats[-1]
    ref_i = ocean.Q_REFERENCE_YEAR - total.start_year
    share = gas.ch4_population_share[gas.index(ocean.OCEAN_START_YEAR):]
    shares = damages.heat_attribution_by_gas([h.q_zj for h in heats], share, total.start_year, ref_i)
    dm = damages.DamagesModel(cal.damages_scale)
    us = dm.damages(shares.total)
    glob = {g: damages.global_weather_damages(dm.damages(shares.gas(g))) for g in damages.GASES}
    glob["total"] = damages.global_weather_damages(us)
    first_neg = np.flatnonzero((total.dq_zj < 0) & (total.years > 2000))
    valid = np.ones(total.q_zj.size, dtype=bool)
    if first_neg.size:
        valid[first_neg[0]:] = False
    return VariantRun(variant, total, shares, us, glob, valid)


@lru_cache(maxsize=64)
def run_scenario(spec, settings=DEFAULT_SETTINGS, cal=None):
    gas = cached_gas_run(spec, settings)
    cal = cal or calibrate(settings)
    variants = {v: run_variant(gas, v, cal) for v in VARIANTS}
    return ScenarioRun(spec, gas, cal, variants, settings)


# outputs --------------------------------------------------------------------

def _write_csv(path, header, columns, fmt="%.10g"):
    cols = [np.asarray(c) for c in columns]
    fmts = ["%d" if np.issubdtype(c.dtype, np.integer) else fmt for c in cols]
    np.savetxt(path, np.column_stack(cols).astype(object), fmt=fmts, delimiter=",",
               header=",".join(header), comments="")


def write_artifacts(run, out_dir, scghg_rows=None, risks=(0.1, 0.01, 0.001)):
    """Persist one scenario's stages under out_dir/<scenario-id>/."""
    out = Path(out_dir) / run.spec.id
    out.mkdir(parents=True, exist_ok=True)
    g, v = run.gas, run.variant(run.spec.co2_variant)
    low_conf = (g.years <= LOW_CONFIDENCE_UNTIL).astype(int)
    _write_csv(out / "gas.csv",
               ["year", "gtc", "co2_emissions_gtco2", "co2_ppm_low", "co2_ppm_central", "co2_ppm_high",
                "ch4_ppb", "ch4_population_share", "n2o_ppb", "fgas_ppt", "population_bn", "low_confidence"],
               [g.years, g.gtc, g.co2_emissions, g.co2_ppm["low"], g.co2_ppm["central"], g.co2_ppm["high"],
                g.ch4_ppb, g.ch4_population_share, g.n2o_ppb, g.fgas_ppt, g.population, low_conf])
    brk = g.forcing[v.variant]
    _write_csv(out / "forcing.csv",
               ["year", "co2_wm2", "ch4_wm2", "n2o_wm2", "fgas_wm2", "total_wm2", "eei_t_degc", "low_confidence"],
               [g.years, brk.co2, brk.ch4, brk.n2o, brk.fgas, brk.total, g.eei_t(v.variant), low_conf])
    h = v.heat
    _write_csv(out / "heat.csv", ["year", "q_zj", "dq_zj", "ocean_dt_degc", "q_above_1960_zj"],
               [h.years, h.q_zj, h.dq_zj, h.ocean_dt, h.above()])
    s = v.shares
    _write_csv(out / "damages.csv",
               ["year", "us_damages_busd", "global_usd", "co2_usd", "ch4_usd", "n2o_usd", "fgas_usd", "valid"],
               [h.years, v.us_damages_busd, v.global_damages_usd["total"], v.global_damages_usd["co2"],
                v.global_damages_usd["ch4"], v.global_damages_usd["n2o"], v.global_damages_usd["fgas"],
                v.valid.astype(int)])
    dm = damages.DamagesModel(run.calibration.damages_scale)
    rm = damages.RiskModel(run.calibration.sigma_scale)
    curves = [damages.risk_curve(dm, rm, r, s.total) for r in risks]
    _write_csv(out / "risk.csv", ["year", "fwd_busd"] + [f"risk_{r:g}_busd" for r in risks],
               [h.years, v.us_damages_busd, *curves])
    if scghg_rows is not None:
        from .scghg import write_csv
        write_csv(scghg_rows, out / "scghg.csv")
    cal = run.calibration
    meta = {
        "scenario": run.spec.id,
        "settings_digest": run.settings.digest(),
        "calibration": {"dx_m": cal.ocean_params.dx, "q0_zj": cal.ocean_params.q0, "damages_scale": cal.damages_scale,
                        "damages_r2": cal.damages_r2, "sigma_scale": cal.sigma_scale,
                        "sigma_r2": cal.sigma_r2, "source": cal.source},
        "low_confidence_until": LOW_CONFIDENCE_UNTIL,
        "first_invalid_damages_year": int(h.years[~v.valid][0]) if (~v.valid).any() else None,
    }
    (out / "meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return out
