"""Heat-conjecture damages, trailing-sigma risk and per-gas heat attribution."""

from dataclasses import dataclass

import numpy as np

DAMAGES_WINDOW = (1980, 2021)
US_SHARE_OF_GWP = 0.2573

# Year origins for the published exponential fits (y = year - origin). The damages fit
# counts from the start of the ocean loop; the sigma fit indexes the record (1980 -> 1).
WDE_ORIGIN = 1890
SIGMA_ORIGIN = 1979

# Published reference fits, used as scaling targets when no damages record is supplied.
WDE_PUBLISHED = (0.183221172676639, 0.0494335193084322)
SIGMA_PUBLISHED = (5.07812825162672, 0.0771705785402397)


@dataclass(frozen=True)
class ExponentialFit:
    c: float
    m: float
    r2: float
    origin: int = 0

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("prefactor must be positive")

    def __call__(self, year):
        return self.c * np.exp(self.m * (np.asarray(year, dtype=float) - self.origin))


def r_squared(model, obs):
    obs = np.asarray(obs, dtype=float)
    ss_tot = np.sum((obs - obs.mean()) ** 2)
    return 1.0 - np.sum((obs - np.asarray(model)) ** 2) / ss_tot


def fit_exponential(years, values, origin=0):
    """Log-linear least squares for c * exp(m * (year - origin)); R2 on the raw scale."""
    x = np.asarray(years, dtype=float) - origin
    v = np.asarray(values, dtype=float)
    if v.size < 3:
        raise ValueError("need at least 3 points")
    if np.any(v <= 0):
        raise ValueError("exponential fit needs positive values")
    m, logc = np.polyfit(x, np.log(v), 1)
    fit = ExponentialFit(float(np.exp(logc)), float(m), 0.0, origin)
    r2 = r_squared(fit(years), v)
    return ExponentialFit(fit.c, fit.m, float(r2), origin)


def scale_heat_to_target(heat, target, bracket=(1e-4, 1e2), rtol=1e-8):
    """Bisect the least-squares scale s for s*heat ~ target (both aligned arrays)."""
    q = np.asarray(heat, dtype=float)
    t = np.asarray(target, dtype=float)
    if q.shape != t.shape or q.size == 0:
        raise ValueError("heat and target must cover the same window")

    def slope(s):
        return np.dot(q, s * q - t)

    lo, hi = bracket
    if slope(lo) > 0 or slope(hi) < 0:
        raise ValueError("optimal scale outside the search bracket")
    while hi - lo > rtol * lo:
        mid = np.sqrt(lo * hi)
        if slope(mid) > 0:
            hi = mid
        else:
            lo = mid
    s = float(np.sqrt(lo * hi))
    return s, float(r_squared(s * q, t))


def global_weather_damages(fwd_busd, us_share=US_SHARE_OF_GWP):
    """US damages (billions) to global USD."""
    if not 0 < us_share <= 1:
        raise ValueError("share must be in (0, 1]")
    return np.asarray(fwd_busd, dtype=float) * 1e9 / us_share


def positive_residuals(years, values, fit):
    years = np.asarray(years)
    d = np.asarray(values, dtype=float) - fit(years)
    keep = d > 0
    return list(zip(years[keep].tolist(), d[keep].tolist()))


def trailing_sigma(dplus, window=7):
    """Sample std of each run of `window` consecutive positive distances, keyed to the last."""
    if window < 2:
        raise ValueError("window must be at least 2")
    if len(dplus) < window:
        raise ValueError(f"need at least {window} points, got {len(dplus)}")
    years = [y for y, _ in dplus]
    d = np.array([v for _, v in dplus], dtype=float)
    return [(years[i], float(np.std(d[i - window + 1 : i + 1], ddof=1))) for i in range(window - 1, len(d))]


def chebyshev_k(risk):
    """Multiplier for a one-tailed exceedance risk (2r substituted for p)."""
    if not 0 < risk < 0.5:
        raise ValueError("risk must be in (0, 0.5)")
    return np.sqrt(1.0 / (2.0 * risk))


def chebyshev_coverage(k):
    return 1.0 - 1.0 / k**2


@dataclass(frozen=True)
class DamagesModel:
    scale: float
    ref_year: int = 1960

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    def damages(self, q_above):
        """US billions from heat above the reference year."""
        return self.scale * np.asarray(q_above, dtype=float)


@dataclass(frozen=True)
class RiskModel:
    sigma_scale: float
    window: int = 7

    def __post_init__(self):
        if self.sigma_scale <= 0 or self.window < 3:
            raise ValueError("invalid risk model")


def risk_curve(dmodel, rmodel, risk, q_above):
    q = np.maximum(np.asarray(q_above, dtype=float), 0.0)
    return dmodel.damages(q_above) + chebyshev_k(risk) * rmodel.sigma_scale * q


def sigmoid_heuristic(theta, delta_max=99.8, delta_min=0.0, m=4.5, i50=3.65):
    """Expert logistic of damages percent against warming."""
    if i50 <= 0:
        raise ValueError("i50 must be positive")
    th = np.asarray(theta, dtype=float)
    if np.any(th < 0):
        raise ValueError("theta must be non-negative")
    with np.errstate(divide="ignore", over="ignore"):
        out = delta_min + (delta_max - delta_min) / (1.0 + (th / i50) ** (-m))
    out = np.where(th == 0, delta_min, out)
    return float(out) if out.ndim == 0 else out


# attribution -----------------------------------------------------------------

GASES = ("co2", "ch4", "n2o", "fgas")


@dataclass(frozen=True)
class HeatShares:
    """Heat above the reference year attributed to each gas (ZJ)."""

    start_year: int
    co2: np.ndarray
    ch4: np.ndarray
    n2o: np.ndarray
    fgas: np.ndarray
    total: np.ndarray

    def gas(self, name):
        return getattr(self, name)


def heat_attribution_by_gas(stack_heat, ch4_population_share, start_year, ref_index):
    """Telescoping attribution from heat runs on cumulative forcing stacks.

    stack_heat: four Q arrays for CO2; +CH4; +N2O; +F-gas. Each is taken above its own
    value at ref_index. CH4 heat not linked to population moves to CO2.
    """
    above = [np.asarray(q, dtype=float) - q[ref_index] for q in stack_heat]
    co2 = above[0]
    ch4_all = above[1] - above[0]
    share = np.asarray(ch4_population_share, dtype=float)
    ch4 = ch4_all * share
    return HeatShares(
        start_year,
        co2 + ch4_all - ch4,
        ch4,
        above[2] - above[1],
        above[3] - above[2],
        above[3],
    )
