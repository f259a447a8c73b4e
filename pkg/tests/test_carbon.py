import numpy as np
import pytest
from hypothesis import given, strategies as st

from heatcost import carbon


def test_engine_curve_checkpoints():
    years = np.arange(1850, 2701)
    g = carbon.gtc_production(years)
    assert years[np.argmax(g)] == 2042
    assert g.sum() == pytest.approx(2147, rel=0.01)
    assert carbon.gtc_production(2021) == pytest.approx(8.86, abs=0.05)


def test_production_starts_in_1850():
    with pytest.raises(ValueError):
        carbon.gtc_production(1849)
    s = carbon.production_series(1840, 1860)
    assert np.all(s[:10] == 0) and np.all(s[10:] > 0)


def test_published_curve_is_kept_literal():
    # the printed parameters, evaluated as printed
    y = np.arange(1850, 2701)
    g = carbon.published_production(y)
    assert y[np.argmax(g)] == 1954
    assert g.sum() < 1.0


@given(st.floats(1e-3, 1e3), st.floats(1e-3, 1.0), st.floats(1800, 2300))
def test_logistic_pulse_integrates_to_total(total, k, mid):
    span = 60.0 / k
    y = np.linspace(mid - span, mid + span, 20001)
    area = np.sum(carbon.LogisticPulse(total, k, mid).rate(y)) * (y[1] - y[0])
    assert area == pytest.approx(total, rel=1e-3)


def test_dice_growth():
    assert carbon.dice_consumption(2022, 2021, 10.0) == pytest.approx(10.14)
    with pytest.raises(ValueError):
        carbon.dice_consumption(2020, 2021, 10.0)


def test_permafrost_high_checkpoints():
    co2, ch4, c = carbon.permafrost_series(1, 2400, "high")
    total = c[:2100].sum()
    assert total == pytest.approx(134, rel=0.02)
    ch4_c = (ch4[:2100] / carbon.CH4_PER_C).sum()
    assert 100 * ch4_c / total == pytest.approx(3.4, abs=0.2)
    assert co2.max() == pytest.approx(10.88, rel=0.02)


def test_permafrost_never_overdraws_inventory():
    _, _, c = carbon.permafrost_series(1, 6000, "high", k=0.5)
    assert c.sum() <= carbon.PERMAFROST_INVENTORY_PG + 1e-9
    assert np.all(c >= 0)


def test_permafrost_low_below_high():
    _, _, lo = carbon.permafrost_series(1, 2100, "low")
    _, _, hi = carbon.permafrost_series(1, 2100, "high")
    assert lo.sum() < hi.sum()


def test_calibrated_steepness_matches_constant():
    assert carbon.calibrate_permafrost_k() == pytest.approx(carbon.PERMAFROST_K, rel=1e-4)
