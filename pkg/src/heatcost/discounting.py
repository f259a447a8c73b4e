"""Discount-rate analysis: PRTP basis solvers, Green Book reconciliation, bond-rate statistics."""

from dataclasses import dataclass

import numpy as np
from scipy import stats
from scipy.optimize import brentq

# Printed risk-adjustment constants carried for table reproduction.
PRINTED_RISK_MULTIPLIER = 3.423
PRINTED_ADJUSTED_RATE = 0.00435
BOND_RATE = 0.0157  # mean real 30-yr T-bill rate
BOND_SIGMA = 0.0186

GREENBOOK_SLOPE = -1.1997e-5
GREENBOOK_INTERCEPT = 0.004976
GREENBOOK_FLOOR = 0.0014


@dataclass(frozen=True)
class PRTPBasis:
    p: float

    def __post_init__(self):
        if self.p <= -1:
            raise ValueError("basis must exceed -1")

    def rho(self, t):
        return (1.0 + self.p) ** -np.asarray(t, dtype=float)


def ramsay(eta, g, rho):
    return eta * g + rho


def amended_ramsay(eta, g, p, t):
    """eta*g plus a time-preference term that decays as (1+P)^-t."""
    return eta * g + PRTPBasis(p).rho(t)


def _mean_rho(p, horizon):
    t = np.arange(1, horizon + 1)
    return float(np.sum((1.0 + p) ** -t.astype(float)) / horizon)


def solve_p_mean_rho(target_mean, horizon, bracket=(1e-9, 1e6)):
    """P such that the mean of (1+P)^-t over t = 1..horizon equals target_mean."""
    if not 0 < target_mean < 1:
        raise ValueError("target mean must be in (0, 1)")
    if horizon < 1:
        raise ValueError("horizon must be at least 1 year")
    f = lambda p: _mean_rho(p, horizon) - target_mean
    lo, hi = bracket
    if f(lo) * f(hi) > 0:
        raise ValueError("no basis value in the search bracket")
    return brentq(f, lo, hi, xtol=1e-14, rtol=1e-13)


def solve_p_point_rho(target, t):
    if not 0 < target < 1:
        raise ValueError("target must be in (0, 1)")
    if t <= 0:
        raise ValueError("t must be positive")
    return target ** (-1.0 / t) - 1.0


def prtp_area(p, t0, t1, floor=0.0):
    """Integral of (1+P)^-t from t0 to t1 plus a constant floor over the same span."""
    if t1 <= t0:
        raise ValueError("t1 must exceed t0")
    if p <= 0:
        raise ValueError("basis must be positive")
    lam = np.log1p(p)
    return float((np.exp(-lam * t0) - np.exp(-lam * t1)) / lam + floor * (t1 - t0))


def solve_p_for_area(area, t0, t1, floor=0.0, bracket=(1e-6, 1e6)):
    f = lambda p: prtp_area(p, t0, t1, floor) - area
    lo, hi = bracket
    if f(lo) * f(hi) > 0:
        raise ValueError("no basis value gives that area")
    return brentq(f, lo, hi, xtol=1e-14, rtol=1e-13)


def greenbook_prtp(t):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be non-negative")
    out = np.maximum(GREENBOOK_SLOPE * t + GREENBOOK_INTERCEPT, 0.0)
    return float(out) if out.ndim == 0 else out


def greenbook_zero_crossing():
    return -GREENBOOK_INTERCEPT / GREENBOOK_SLOPE


def greenbook_area(t0, t1):
    t1c = min(t1, greenbook_zero_crossing())
    if t1c <= t0:
        return 0.0
    return GREENBOOK_INTERCEPT * (t1c - t0) + 0.5 * GREENBOOK_SLOPE * (t1c**2 - t0**2)


def risk_adjusted_loss_rate(d_upper, d_base):
    """Risk on a loss stream lowers its rate: divide the base by the upper/base ratio."""
    if d_upper <= 0 or d_base <= 0:
        raise ValueError("rates must be positive")
    r_df = d_upper / d_base
    return r_df, d_base / r_df


# bond-rate statistics ------------------------------------------------------

@dataclass(frozen=True)
class RateStats:
    sigma: float
    mean: float
    median: float
    midrange: float
    max: float
    min: float
    skew: float
    kurtosis: float
    n: int
    degenerate: bool = False


def frequency_stats(values):
    x = np.asarray(values, dtype=float)
    if x.size < 2:
        raise ValueError("need at least 2 values")
    sigma = float(np.std(x, ddof=1))
    degenerate = sigma == 0.0 or x.size < 4
    if degenerate:
        skew = kurt = 0.0
    else:
        skew = float(stats.skew(x, bias=False))
        kurt = float(stats.kurtosis(x, fisher=True, bias=False))
    lo, hi = float(x.min()), float(x.max())
    return RateStats(sigma, float(x.mean()), float(np.median(x)), 0.5 * (lo + hi), hi, lo, skew, kurt,
                     int(x.size), degenerate)


def _month_index(months):
    return np.array([y * 12 + (m - 1) for y, m in months])


def _check_contiguous(name, months):
    idx = _month_index(months)
    missing = []
    for a, b in zip(idx[:-1], idx[1:]):
        if b <= a:
            raise ValueError(f"{name}: months out of order at {divmod(b, 12)}")
        missing.extend(range(a + 1, b))
    if missing:
        shown = ", ".join(f"{m // 12}-{m % 12 + 1:02d}" for m in missing[:12])
        raise ValueError(f"{name}: {len(missing)} missing months ({shown})")
    return idx


def yoy_inflation(cpi):
    """Percent change on the same month a year earlier; dict month -> percent."""
    months = sorted(cpi)
    _check_contiguous("CPI", months)
    vals = np.array([cpi[m] for m in months], dtype=float)
    return {months[i]: 100.0 * (vals[i] / vals[i - 12] - 1.0) for i in range(12, len(months))}


def tbill_real_rates(nominal, cpi=None, fedfunds=None):
    """Monthly real yield net of the real effective federal funds rate (percent).

    All inputs map (year, month) -> percent (CPI -> index level). Both legs are deflated
    by the same year-over-year CPI change, so the spread keeps the nominal difference.
    """
    months = sorted(nominal)
    _check_contiguous("nominal", months)
    infl = yoy_inflation(cpi) if cpi else {}
    out = {}
    for m in months:
        if cpi and m not in infl:
            continue
        i = infl.get(m, 0.0)
        ff = 0.0
        if fedfunds is not None:
            if m not in fedfunds:
                raise ValueError(f"fed funds missing for {m[0]}-{m[1]:02d}")
            ff = fedfunds[m] - i
        out[m] = (nominal[m] - i) - ff
    if not out:
        raise ValueError("no overlapping months")
    return out


# willingness to pay -------------------------------------------------------

def wtp_fraction(occupied_ha, reserve_ha, e_d):
    if not reserve_ha > occupied_ha > 0:
        raise ValueError("need reserve > occupied > 0")
    if not 0 <= e_d <= 1:
        raise ValueError("damages factor must be in [0, 1]")
    return occupied_ha * e_d / (reserve_ha - occupied_ha)


def wtp_globe(e_d):
    if not 0 <= e_d < 1:
        raise ValueError("damages factor must be in [0, 1)")
    return e_d / (1.0 - e_d)
