import numpy as np
import pytest
from dataclasses import replace
from hypothesis import given, strategies as st

from heatcost import ocean

finite_t = st.lists(st.floats(-2, 20, allow_nan=False), min_size=1, max_size=300)


@given(finite_t, st.floats(0.05, 5.0))
def test_vectorised_loop_matches_stepwise(t, dx):
    p = ocean.OceanParams(dx=dx, q0=12.5)
    a = ocean.run_ocean_loop(t, p)
    b = ocean.run_ocean_loop_stepwise(t, p)
    assert np.allclose(a.q_zj, b.q_zj, rtol=1e-9, atol=1e-6)
    assert np.allclose(a.ocean_dt, b.ocean_dt, rtol=1e-9, atol=1e-12)


@given(finite_t, st.floats(0.05, 5.0), st.floats(-500, 500))
def test_heat_bookkeeping(t, dx, q0):
    h = ocean.run_ocean_loop(t, ocean.OceanParams(dx=dx, q0=q0))
    assert h.q_zj[-1] - q0 == pytest.approx(h.dq_zj.sum(), rel=1e-12, abs=1e-9)
    assert np.allclose(np.diff(h.q_zj), h.dq_zj[1:], rtol=1e-12, atol=1e-9)


def test_ocean_relaxes_toward_constant_forcing():
    h = ocean.run_ocean_loop(np.full(20000, 1.5), ocean.OceanParams(dx=0.7))
    assert h.ocean_dt[-1] == pytest.approx(1.5, rel=1e-3)
    assert h.dq_zj[-1] < h.dq_zj[0] * 1e-3


def test_heat_step_units():
    p = ocean.OceanParams(dx=1.0)
    dq, dt = ocean.heat_step(1.0, 0.0, p)
    assert dq == pytest.approx(0.6 * 3.619e14 * ocean.SECONDS_PER_YEAR)
    assert dt == pytest.approx(dq / (4200 * p.mass))


def test_bad_inputs():
    with pytest.raises(ValueError):
        ocean.OceanParams(dx=0)
    with pytest.raises(ValueError):
        ocean.run_ocean_loop([1.0, np.nan], ocean.OceanParams())


def test_calibration_recovers_synthetic_truth():
    years = np.arange(ocean.OCEAN_START_YEAR, 2031)
    ft = np.linspace(0.0, 1.2, years.size) ** 1.5
    truth = ocean.OceanParams(dx=0.8, q0=-120.0)
    h = ocean.run_ocean_loop(ft, truth)
    sel = (years >= 1960) & (years <= 2020)
    data = {"year": years[sel], "ohc_zj": h.q_zj[sel], "lower_zj": h.q_zj[sel] - 5, "upper_zj": h.q_zj[sel] + 5}
    fit = ocean.calibrate_ocean(data, ft)
    assert fit.params.dx == pytest.approx(0.8, rel=1e-3)
    assert fit.params.q0 == pytest.approx(-120.0, abs=0.5)
    assert fit.r2 > 0.9999 and fit.in_band == 1.0


def test_gain_fallback_hits_target():
    years = np.arange(ocean.OCEAN_START_YEAR, 2031)
    ft = np.linspace(0.0, 1.2, years.size)
    p = ocean.calibrate_to_gain(ft)
    h = ocean.run_ocean_loop(ft, p)
    assert h.at(1960) == pytest.approx(0.0, abs=1e-9)
    assert h.at(2021) - h.at(1960) == pytest.approx(360.0, rel=1e-4)
