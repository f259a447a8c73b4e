"""Ocean heat content driven by the forcing temperature (one effective layer)."""

from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.signal import lfilter

SECONDS_PER_YEAR = 31_536_000.0
ZJ = 1e21
OCEAN_START_YEAR = 1890

# Printed as "3688 . 1026 . A"; read as 3.688e6 kg per m2 of ocean surface.
OCEAN_MASS_PER_M2 = 3.688e6

# Used when no OHC dataset is supplied: the 1960 level is the zero and the layer
# thickness reproduces ~360 ZJ gained from 1960 to 2021 on the reference run.
Q_REFERENCE_YEAR = 1960
Q_GAIN_TARGET = (1960, 2021, 360.0)


@dataclass(frozen=True)
class OceanParams:
    k: float = 0.6  # J m-1 C-1 s-1
    area: float = 3.619e14  # m2
    cs: float = 4200.0  # J kg-1 C-1
    mass_per_m2: float = OCEAN_MASS_PER_M2
    dx: float = 0.5  # m, effective gradient thickness
    q0: float = 0.0  # ZJ at the start of the loop

    def __post_init__(self):
        if min(self.k, self.area, self.cs, self.mass_per_m2, self.dx) <= 0:
            raise ValueError("ocean parameters must be positive")

    @property
    def mass(self):
        return self.mass_per_m2 * self.area

    @property
    def conductance(self):
        """Joules per degC of drive per year."""
        return self.k * self.area / self.dx * SECONDS_PER_YEAR

    @property
    def relax(self):
        """Fraction of the drive closed each year."""
        return self.conductance / (self.cs * self.mass)


@dataclass(frozen=True)
class HeatState:
    start_year: int
    q_zj: np.ndarray
    dq_zj: np.ndarray
    ocean_dt: np.ndarray

    @property
    def years(self):
        return np.arange(self.start_year, self.start_year + self.q_zj.size)

    def at(self, year):
        return float(self.q_zj[year - self.start_year])

    def above(self, ref_year=Q_REFERENCE_YEAR):
        return self.q_zj - self.at(ref_year)


def heat_step(forcing_t, ocean_dt_cum, params):
    """One year: returns (dQ in J, ocean dT in degC)."""
    drive = forcing_t - ocean_dt_cum
    dq = params.k * params.area * (drive / params.dx) * SECONDS_PER_YEAR
    return dq, dq / (params.cs * params.mass)


def run_ocean_loop(forcing_t, params, start_year=OCEAN_START_YEAR):
    """Yearly recurrence from start_year; forcing_t[0] belongs to start_year."""
    t = np.asarray(forcing_t, dtype=float)
    if t.ndim != 1 or t.size == 0 or not np.all(np.isfinite(t)):
        raise ValueError("forcing temperature must be a finite contiguous series")
    a = params.relax
    # ocean dT before year n's step: c[n] = (1 - a) c[n-1] + a t[n-1], c[0] = 0
    before = lfilter([0.0, a], [1.0, -(1.0 - a)], t)
    dq = params.conductance * (t - before) / ZJ
    after = before + a * (t - before)
    q = params.q0 + np.cumsum(dq)
    return HeatState(start_year, q, dq, after)


def run_ocean_loop_stepwise(forcing_t, params, start_year=OCEAN_START_YEAR):
    """Plain loop version of run_ocean_loop; reference for tests."""
    q, cum = params.q0 * ZJ, 0.0
    qs, dqs, cums = [], [], []
    for ft in np.asarray(forcing_t, dtype=float):
        dq, dt = heat_step(ft, cum, params)
        q += dq
        cum += dt
        qs.append(q / ZJ)
        dqs.append(dq / ZJ)
        cums.append(cum)
    return HeatState(start_year, np.array(qs), np.array(dqs), np.array(cums))


# calibration ----------------------------------------------------------------

@dataclass(frozen=True)
class OceanFit:
    params: OceanParams
    r2: float
    in_band: float  # fraction of dataset years inside the uncertainty band


def _r2(model, obs):
    ss_res = np.sum((obs - model) ** 2)
    ss_tot = np.sum((obs - obs.mean()) ** 2)
    return 1.0 - ss_res / ss_tot


def _golden(f, lo, hi, tol):
    res = minimize_scalar(f, bounds=(lo, hi), method="bounded", options={"xatol": tol})
    return res.x, res.fun


def calibrate_ocean(ohc, forcing_t, base=OceanParams(), start_year=OCEAN_START_YEAR,
                    dx_bounds=(0.01, 20.0), max_iter=200):
    """Nested search: layer thickness outside, heat offset inside.

    ohc: dict with 'year', 'ohc_zj' and optional 'lower_zj'/'upper_zj' arrays.
    """
    years = np.asarray(ohc["year"], dtype=int)
    obs = np.asarray(ohc["ohc_zj"], dtype=float)
    if years.size == 0:
        raise ValueError("empty OHC dataset")
    idx = years - start_year
    if idx.min() < 0 or idx.max() >= len(forcing_t):
        raise ValueError("OHC years outside the forcing series")

    def best_offset(dx):
        shape = run_ocean_loop(forcing_t, replace(base, dx=dx, q0=0.0), start_year).q_zj[idx]
        # the inner problem is quadratic in q0; the search still brackets it explicitly
        centre = float(np.mean(obs - shape))
        span = max(abs(centre), 1.0) * 4
        q0, sse = _golden(lambda q: float(np.sum((shape + q - obs) ** 2)), centre - span, centre + span, 1e-9)
        return q0, sse

    calls = {"n": 0}

    def outer(log_dx):
        calls["n"] += 1
        if calls["n"] > max_iter:
            raise RuntimeError("ocean calibration did not converge")
        return best_offset(np.exp(log_dx))[1]

    log_dx, _ = _golden(outer, np.log(dx_bounds[0]), np.log(dx_bounds[1]), 1e-7)
    dx = float(np.exp(log_dx))
    q0, _ = best_offset(dx)
    params = replace(base, dx=dx, q0=q0)
    model = run_ocean_loop(forcing_t, params, start_year).q_zj[idx]
    in_band = np.nan
    if "lower_zj" in ohc and "upper_zj" in ohc:
        lo, hi = np.asarray(ohc["lower_zj"]), np.asarray(ohc["upper_zj"])
        in_band = float(np.mean((model >= lo) & (model <= hi)))
    return OceanFit(params, float(_r2(model, obs)), in_band)


def calibrate_to_gain(forcing_t, gain=Q_GAIN_TARGET, base=OceanParams(), start_year=OCEAN_START_YEAR):
    """Dataset-free fallback: dx so that Q rises by `gain` between two years, Q(first)=0."""
    y0, y1, target = gain

    def miss(log_dx):
        h = run_ocean_loop(forcing_t, replace(base, dx=np.exp(log_dx), q0=0.0), start_year)
        return (h.at(y1) - h.at(y0) - target) ** 2

    log_dx, _ = _golden(miss, np.log(0.01), np.log(20.0), 1e-10)
    dx = float(np.exp(log_dx))
    h = run_ocean_loop(forcing_t, replace(base, dx=dx, q0=0.0), start_year)
    return replace(base, dx=dx, q0=-h.at(y0))
