import numpy as np
import pytest
from hypothesis import given, strategies as st

from heatcost import storms

SAMPLE = """AL122005,            KATRINA,      3,
20050823, 1800,  , TD, 23.1N,  75.1W,  30, 1008,    0,    0,    0,    0,    0,    0,    0,    0,    0,    0,    0,    0,
20050828, 1800,  , HU, 26.3N,  88.6W, 150,  902,  200,  180,  110,  140,  110,  100,   60,   90,   90,   75,   40,   60,
20050829, 1110, L, HU, 29.3N,  89.6W, 110,  920,  200,  200,  110,  110,  110,  100,   60,   60,   90,   75,   30,   30,
AL011851,            UNNAMED,      1,
18510625, 0000,  , HU, 28.0N,  94.8W,  80, -999, -999, -999, -999, -999, -999, -999, -999, -999, -999, -999, -999, -999,
"""


def test_parse_sample():
    s = storms.parse_hurdat2(SAMPLE)
    assert [x.storm_id for x in s] == ["AL122005", "AL011851"]
    assert len(s[0].points) == 3 and s[0].year == 2005
    p = s[0].points[1]
    assert (p.max_wind, p.mslp, p.lat, p.lon) == (150, 902, 26.3, -88.6)
    assert p.outer_radius_nm() == 200
    assert s[1].points[0].mslp is None


def test_round_trip_is_column_identical():
    assert storms.serialize_hurdat2(storms.parse_hurdat2(SAMPLE)) == SAMPLE


def test_two_line_storm():
    s = storms.parse_hurdat2(SAMPLE.splitlines()[4] + "\n" + SAMPLE.splitlines()[5] + "   \n")
    assert len(s) == 1 and len(s[0].points) == 1


def test_malformed_line_reports_number():
    bad = SAMPLE.replace(" 28.0N,", " 28.0Q,")
    with pytest.raises(ValueError, match="line 6"):
        storms.parse_hurdat2(bad)
    with pytest.raises(ValueError, match="short"):
        storms.parse_hurdat2("\n".join(SAMPLE.splitlines()[:3]))


@st.composite
def track_lines(draw):
    n = draw(st.integers(1, 5))
    rows = []
    for i in range(n):
        wind = draw(st.one_of(st.just(-99), st.integers(0, 185)))
        mb = draw(st.one_of(st.just(-999), st.integers(882, 1030)))
        radii = draw(st.lists(st.one_of(st.just(-999), st.integers(0, 600)), min_size=12, max_size=12))
        lat = draw(st.integers(0, 700)) / 10
        lon = draw(st.integers(0, 1800)) / 10
        rows.append(storms.TrackPoint(20210801 + i, 600 * (i % 4), " ", "HU", lat, -lon,
                                      None if wind == -99 else wind, None if mb == -999 else mb,
                                      tuple(None if r == -999 else r for r in radii)))
    return [storms.Storm("AL012021", "ANA", rows)]


@given(track_lines())
def test_serialize_parse_fixed_point(s):
    text = storms.serialize_hurdat2(s)
    again = storms.parse_hurdat2(text)
    assert storms.serialize_hurdat2(again) == text
    assert [(p.max_wind, p.mslp, p.radii) for p in again[0].points] == [(p.max_wind, p.mslp, p.radii) for p in s[0].points]


@given(st.floats(1, 600), st.floats(0, 200))
def test_wind_closed_form_matches_quadrature(r, v):
    a = storms.wind_energy_6h(r, v)
    b = storms.wind_energy_6h_quad(r, v)
    assert a == pytest.approx(b, rel=1e-8, abs=1e-6)


@given(st.floats(1, 600), st.floats(1, 200))
def test_energy_scaling_laws(r, v):
    assert storms.wind_energy_6h(r, 2 * v) / storms.wind_energy_6h(r, v) == pytest.approx(8.0)
    assert storms.rain_energy_6h(2 * r) / storms.rain_energy_6h(r) == pytest.approx(4.0)


def test_zero_wind_and_bad_radius():
    assert storms.wind_energy_6h(100, 0) == 0.0
    with pytest.raises(ValueError):
        storms.rain_energy_6h(0)


def test_mslp_fits():
    mb = np.arange(880, 1017)
    w = storms.wind_from_mslp(mb)
    assert np.all(np.diff(w) < 0)
    assert np.all(storms.radius_from_mslp(mb) > 0)
    with pytest.raises(ValueError):
        storms.wind_from_mslp(1020)


def test_storm_energy_partition_and_counts():
    run = storms.storm_energies(storms.parse_hurdat2(SAMPLE))
    e = run.storms
    assert run.skipped_points == 1  # 1851 point lacks pressure and radii
    nse = storms.yearly_nse(e)
    assert nse.values.sum() == pytest.approx(sum(x.total_j for x in e) / storms.ZJ)
    assert sum(storms.counts_above(e, 0.0).values()) == len(e)
    assert all(x.total_j == x.wind_j + x.rain_j for x in e)


def test_point_order_does_not_change_totals():
    s = storms.parse_hurdat2(SAMPLE)
    a = storms.storm_energies(s, synoptic_only=False).storms[0]
    s[0].points.reverse()
    b = storms.storm_energies(s, synoptic_only=False).storms[0]
    assert a.total_j == pytest.approx(b.total_j, rel=1e-12)


def test_power_law_fit_recovers_exponent():
    x = np.logspace(-3, 1, 50)
    fit = storms.fit_power_law(x, 3470.0 * x**-0.535)
    assert fit.a == pytest.approx(3470.0) and fit.b == pytest.approx(-0.535)


def test_warhead_constant():
    assert storms.WARHEADS_PER_ZJ == 239_234
