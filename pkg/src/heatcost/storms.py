"""HURDAT2 track parsing and per-storm wind and rain energy."""

import csv
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .series import YearSeries

SEGMENT_SECONDS = 21_600
AIR_DENSITY = 1.15
DRAG = 2e-3
VELOCITY_EXPONENT = 0.6
RAIN_DEPTH_6H = 0.015 / 4  # m
LATENT_HEAT = 2.257e6  # J/kg
WATER_DENSITY = 1000.0  # kg/m3, turns the rain volume into a mass
KM_PER_NM = 1.852
WARHEADS_PER_ZJ = 239_234  # one-megaton equivalents, display only
ZJ = 1e21

MSLP_FIT_RANGE = (880.0, 1016.0)
WIND_FROM_MSLP = (-1.44996275125275e-05, 0.0392465858562361, -36.4069995901403, 11702.8069337238)
RADIUS_FROM_MSLP = (1.404524e-7, -6.627979e-4, 1.2499610361, -1177.5754451, 554193.57911, -104233593.76)
FIT_R2 = {"wind": 0.87, "radius": 0.20}

POWER_LAW_PUBLISHED = (3470.42834313298, -0.535313567104114)

MISSING = -999
MISSING_WIND = -99
SYNOPTIC_HOURS = (0, 600, 1200, 1800)


@dataclass
class TrackPoint:
    date: int  # YYYYMMDD
    time: int  # HHMM
    record: str
    status: str
    lat: float
    lon: float
    max_wind: int | None
    mslp: int | None
    radii: tuple  # 34/50/64-kt quadrant radii (nm), then radius of max wind if present
    raw_lat: str = ""
    raw_lon: str = ""

    @property
    def year(self):
        return self.date // 10000

    def outer_radius_nm(self):
        r34 = [r for r in self.radii[:4] if r is not None and r > 0]
        return max(r34) if r34 else None


@dataclass
class Storm:
    storm_id: str
    name: str
    points: list = field(default_factory=list)

    @property
    def year(self):
        return int(self.storm_id[4:8])


def _coord(text, pos, neg, lineno):
    t = text.strip()
    if not t or t[-1] not in (pos + neg):
        raise ValueError(f"line {lineno}: bad coordinate {text!r}")
    v = float(t[:-1])
    return (v if t[-1] == pos else -v), t


def _opt_int(text, lineno):
    try:
        v = int(text)
    except ValueError as exc:
        raise ValueError(f"line {lineno}: bad integer {text!r}") from exc
    return None if v in (MISSING, MISSING_WIND) else v


def parse_hurdat2(text):
    storms = []
    remaining = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = [p.strip() for p in line.rstrip().rstrip(",").split(",")]
        if remaining == 0:
            if len(parts) != 3 or len(parts[0]) != 8 or not parts[2].isdigit():
                raise ValueError(f"line {lineno}: expected a storm header")
            storms.append(Storm(parts[0], parts[1]))
            remaining = int(parts[2])
            continue
        if len(parts) not in (20, 21):
            raise ValueError(f"line {lineno}: expected 20 or 21 fields, got {len(parts)}")
        try:
            date, time = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: bad date/time") from exc
        lat, rlat = _coord(parts[4], "N", "S", lineno)
        lon, rlon = _coord(parts[5], "E", "W", lineno)
        radii = tuple(_opt_int(p, lineno) for p in parts[8:])
        storms[-1].points.append(TrackPoint(date, time, parts[2], parts[3], lat, lon,
                                            _opt_int(parts[6], lineno), _opt_int(parts[7], lineno),
                                            radii, rlat, rlon))
        remaining -= 1
    if remaining:
        raise ValueError(f"file ends {remaining} track points short")
    return storms


def _fmt(v, width, missing=MISSING):
    return f"{missing if v is None else v:>{width}}"


def serialize_hurdat2(storms):
    lines = []
    for s in storms:
        lines.append(f"{s.storm_id},{s.name:>19},{len(s.points):>7},")
        for p in s.points:
            lat = p.raw_lat or f"{abs(p.lat):.1f}{'N' if p.lat >= 0 else 'S'}"
            lon = p.raw_lon or f"{abs(p.lon):.1f}{'E' if p.lon >= 0 else 'W'}"
            head = [f"{p.date:08d}", f" {p.time:04d}", f" {p.record:>1}", f" {p.status:>2}", f" {lat:>5}",
                    f" {lon:>6}", " " + _fmt(p.max_wind, 3, MISSING_WIND), " " + _fmt(p.mslp, 4)]
            lines.append(",".join(head + [" " + _fmt(r, 4) for r in p.radii]) + ",")
    return "\n".join(lines) + "\n"


# fits ------------------------------------------------------------------------

def _check_mslp(mb):
    mb = np.asarray(mb, dtype=float)
    lo, hi = MSLP_FIT_RANGE
    if np.any((mb < lo) | (mb > hi)):
        raise ValueError(f"pressure outside the fit range {lo:g}-{hi:g} mb")
    return mb


def wind_from_mslp(mb):
    """km/h."""
    return np.polyval(WIND_FROM_MSLP, _check_mslp(mb))


def radius_from_mslp(mb):
    """km."""
    return np.polyval(RADIUS_FROM_MSLP, _check_mslp(mb))


# energy ----------------------------------------------------------------------

def _wind_speed(max_wind_kt):
    return KM_PER_NM * 1000.0 * max_wind_kt / 60.0


def wind_energy_6h(r_o_nm, max_wind_kt):
    """Dissipation over one 6-hour segment, closed form of the power-law integral."""
    if r_o_nm <= 0 or max_wind_kt < 0:
        raise ValueError("radius must be positive and wind non-negative")
    p = 1.0 - 3.0 * VELOCITY_EXPONENT
    upper = KM_PER_NM * r_o_nm
    integral = upper ** (p + 1.0) / (p + 1.0)
    return 1000.0 * np.pi * AIR_DENSITY * DRAG * _wind_speed(max_wind_kt) ** 3 * integral * SEGMENT_SECONDS


def wind_energy_6h_quad(r_o_nm, max_wind_kt):
    upper = KM_PER_NM * r_o_nm
    v3 = _wind_speed(max_wind_kt) ** 3
    # x^(1 - 3 beta) is handled as an algebraic end-point weight
    integral, _ = quad(lambda x: 1.0, 0.0, upper, weight="alg", wvar=(1.0 - 3.0 * VELOCITY_EXPONENT, 0.0))
    return 1000.0 * np.pi * AIR_DENSITY * DRAG * v3 * integral * SEGMENT_SECONDS


def rain_energy_6h(r_o_nm, water_density=WATER_DENSITY):
    if r_o_nm <= 0:
        raise ValueError("radius must be positive")
    return np.pi * RAIN_DEPTH_6H * (1852.0 * r_o_nm) ** 2 * water_density * LATENT_HEAT


@dataclass(frozen=True)
class StormEnergy:
    storm_id: str
    year: int
    wind_j: float
    rain_j: float
    hurricane: bool = False

    @property
    def total_j(self):
        return self.wind_j + self.rain_j


@dataclass
class EnergyRun:
    storms: list
    skipped_points: int = 0
    radius_fit_r2: float = FIT_R2["radius"]


def point_inputs(p, radius_source="auto"):
    """(radius nm, wind kt) for one track point, or None when it cannot be normalised."""
    in_fit = p.mslp is not None and MSLP_FIT_RANGE[0] <= p.mslp <= MSLP_FIT_RANGE[1]
    r = p.outer_radius_nm() if radius_source == "auto" else None
    if r is None:
        if not in_fit:
            return None
        r = float(radius_from_mslp(p.mslp)) / KM_PER_NM
    w = p.max_wind
    if w is None:
        if not in_fit:
            return None
        w = float(wind_from_mslp(p.mslp)) / KM_PER_NM
    return r, w


def storm_energies(storms, radius_source="auto", synoptic_only=True):
    if radius_source not in ("auto", "mslp"):
        raise ValueError("radius_source must be 'auto' or 'mslp'")
    out, skipped = [], 0
    for s in storms:
        wind = rain = 0.0
        for p in s.points:
            if synoptic_only and p.time not in SYNOPTIC_HOURS:
                continue
            got = point_inputs(p, radius_source)
            if got is None:
                skipped += 1
                continue
            r, w = got
            wind += wind_energy_6h(r, w)
            rain += rain_energy_6h(r)
        out.append(StormEnergy(s.storm_id, s.year, wind, rain, any(p.status == "HU" for p in s.points)))
    return EnergyRun(out, skipped)


def yearly_nse(energies):
    if not energies:
        raise ValueError("no storms")
    years = [e.year for e in energies]
    first, last = min(years), max(years)
    totals = np.zeros(last - first + 1)
    for e in energies:
        totals[e.year - first] += e.total_j / ZJ
    return YearSeries(first, totals, "ZJ")


def counts_above(energies, threshold_zj=1.0, hurricanes_only=False):
    counts = {}
    for e in energies:
        counts.setdefault(e.year, 0)
        if e.total_j / ZJ >= threshold_zj and (e.hurricane or not hurricanes_only):
            counts[e.year] += 1
    return dict(sorted(counts.items()))


@dataclass(frozen=True)
class PowerLawFit:
    a: float
    b: float
    r2: float

    def __call__(self, x):
        return self.a * np.asarray(x, dtype=float) ** self.b


def fit_power_law(x, y):
    """Log-log least squares for a * x^b; R2 on the raw scale."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    keep = (x > 0) & (y > 0)
    if keep.sum() < 3:
        raise ValueError("need at least 3 positive pairs")
    b, loga = np.polyfit(np.log(x[keep]), np.log(y[keep]), 1)
    a = float(np.exp(loga))
    pred = a * x[keep] ** b
    yy = y[keep]
    r2 = 1.0 - np.sum((yy - pred) ** 2) / np.sum((yy - yy.mean()) ** 2)
    return PowerLawFit(a, float(b), float(r2))


def rain_wind_power_law(energies):
    e = [s for s in energies if s.wind_j > 0]
    x = [s.total_j / ZJ for s in e]
    y = [s.rain_j / s.wind_j for s in e]
    return fit_power_law(x, y)


def fit_polynomial(x, y, degree):
    """Coefficients (highest power first) and R2."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    coef = np.polyfit(x, y, degree)
    pred = np.polyval(coef, x)
    r2 = 1.0 - np.sum((y - pred) ** 2) / np.sum((y - y.mean()) ** 2)
    return coef, float(r2)


def mslp_wind_pairs(storms, first_year=2004, last_year=2021):
    """(mb, km/h) pairs inside the fit window, for refitting the wind relation."""
    mb, kmh = [], []
    for s in storms:
        if not first_year <= s.year <= last_year:
            continue
        for p in s.points:
            if p.mslp is not None and p.max_wind is not None and MSLP_FIT_RANGE[0] <= p.mslp <= MSLP_FIT_RANGE[1]:
                mb.append(p.mslp)
                kmh.append(p.max_wind * KM_PER_NM)
    return np.array(mb, dtype=float), np.array(kmh, dtype=float)


def write_energy_csv(energies, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(("storm_id", "year", "wind_zj", "rain_zj", "total_zj"))
        for e in energies:
            w.writerow((e.storm_id, e.year, repr(e.wind_j / ZJ), repr(e.rain_j / ZJ), repr(e.total_j / ZJ)))
