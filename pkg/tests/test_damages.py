import numpy as np
import pytest
from hypothesis import given, strategies as st

from heatcost import damages


def test_exponential_fit_recovers_parameters():
    y = np.arange(1980, 2022)
    v = 0.18 * np.exp(0.049 * (y - 1890))
    fit = damages.fit_exponential(y, v, origin=1890)
    assert fit.c == pytest.approx(0.18, rel=1e-9)
    assert fit.m == pytest.approx(0.049, rel=1e-9)
    assert fit.r2 == pytest.approx(1.0)


def test_exponential_fit_needs_positive_values():
    with pytest.raises(ValueError):
        damages.fit_exponential([1, 2, 3], [1.0, -1.0, 2.0])


@given(st.lists(st.floats(0.1, 100), min_size=3, max_size=40), st.floats(0.01, 10))
def test_scale_is_least_squares(q, s_true):
    q = np.asarray(q)
    t = s_true * q * (1 + 0.01 * np.sin(np.arange(q.size)))
    s, _ = damages.scale_heat_to_target(q, t)
    assert s == pytest.approx(np.dot(q, t) / np.dot(q, q), rel=1e-6)


def test_scale_bracket_error():
    with pytest.raises(ValueError):
        damages.scale_heat_to_target([1.0, 2.0], [1e5, 2e5])


def test_trailing_sigma_window():
    d = [(1980 + i, float(i)) for i in range(10)]
    out = damages.trailing_sigma(d, window=7)
    assert [y for y, _ in out] == list(range(1986, 1990))
    assert out[0][1] == pytest.approx(np.std(np.arange(7), ddof=1))
    with pytest.raises(ValueError):
        damages.trailing_sigma(d[:5])


def test_chebyshev_constants():
    assert f"{damages.chebyshev_k(0.1):.11f}" == "2.23606797750"
    assert f"{damages.chebyshev_k(0.01):.11f}" == "7.07106781187"
    assert f"{damages.chebyshev_k(0.001):.10f}" == "22.3606797750"
    assert damages.chebyshev_coverage(2) == 0.75
    assert damages.chebyshev_coverage(5) == pytest.approx(0.96)


def test_risk_curve_ordering():
    q = np.linspace(0, 100, 11)
    dm, rm = damages.DamagesModel(0.27), damages.RiskModel(0.21)
    c10, c100 = (damages.risk_curve(dm, rm, r, q) for r in (0.1, 0.01))
    assert np.all(c100 >= c10) and np.all(c10 >= dm.damages(q))


def test_sigmoid_heuristic():
    assert damages.sigmoid_heuristic(0.0) == 0.0
    assert damages.sigmoid_heuristic(3.65) == pytest.approx(49.9)
    assert damages.sigmoid_heuristic(12.0) > 99.0
    with pytest.raises(ValueError):
        damages.sigmoid_heuristic(-1.0)


@given(st.lists(st.tuples(st.floats(-50, 50), st.floats(-50, 50), st.floats(-50, 50), st.floats(-50, 50),
                          st.floats(0, 1)), min_size=2, max_size=30))
def test_attribution_telescopes(rows):
    q = np.array([r[:4] for r in rows]).T.cumsum(axis=0)
    share = np.array([r[4] for r in rows])
    s = damages.heat_attribution_by_gas(list(q), share, 1890, 0)
    parts = s.co2 + s.ch4 + s.n2o + s.fgas
    assert np.allclose(parts, s.total, atol=1e-9)
    assert np.allclose(s.total, q[-1] - q[-1][0])
