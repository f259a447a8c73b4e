import json

import numpy as np
import pytest

from heatcost import pipeline
from heatcost.scenarios import Base, families, parse_scenario

GOLDEN = json.loads((__import__("pathlib").Path(__file__).parent / "golden" / "reference_run.json").read_text())


def test_historical_co2_tracks_observations(reference_gas):
    obs = {1960: 316.9, 1980: 338.8, 2000: 369.7, 2021: 416.4}
    for y, v in obs.items():
        assert reference_gas.co2_ppm["central"][reference_gas.index(y)] == pytest.approx(v, rel=0.02)


def test_variants_ordered_after_1900(reference_gas):
    i = reference_gas.index(1901)
    lo, c, hi = (reference_gas.co2_ppm[v][i:] for v in ("low", "central", "high"))
    assert np.all(lo < c) and np.all(c < hi)


def test_ocean_consumes_only_forcing_temperature(reference_run):
    from heatcost import ocean
    gas = reference_run.gas
    ft = gas.eei_t("central")[gas.index(ocean.OCEAN_START_YEAR):]
    again = ocean.run_ocean_loop(ft, reference_run.calibration.ocean_params)
    assert np.array_equal(again.q_zj, reference_run.variant("central").heat.q_zj)


def test_frozen_reference_values(reference_run):
    g = reference_run.gas
    for key, expected in GOLDEN["gas"].items():
        name, year = key.rsplit("@", 1)
        arr = g.co2_ppm["central"] if name == "co2_ppm" else getattr(g, name)
        assert arr[g.index(int(year))] == pytest.approx(expected, rel=1e-9), key
    cal = reference_run.calibration
    assert cal.ocean_params.dx == pytest.approx(GOLDEN["calibration"]["dx"], rel=1e-6)
    assert cal.damages_scale == pytest.approx(GOLDEN["calibration"]["damages_scale"], rel=1e-6)
    from heatcost import scghg
    for key, expected in GOLDEN["scghg"].items():
        gas, v, y, term, d = key.split("|")
        got = scghg.social_cost(reference_run, gas, v, int(y), int(term), float(d))
        assert got == pytest.approx(expected, rel=1e-6), key


def test_dice_extraction_stops_after_horizon():
    gtc = pipeline.extraction(parse_scenario("dice-norm"))
    y = np.arange(pipeline.FIRST_YEAR, pipeline.LAST_YEAR + 1)
    assert gtc[y == 2300][0] > 40 * gtc[y == 2021][0] and np.all(gtc[y > 2300] == 0)


def test_permafrost_raises_co2():
    base = pipeline.cached_gas_run(parse_scenario("baseline-norm"))
    pf = pipeline.cached_gas_run(parse_scenario("permafrost-norm"))
    i = base.index(2200)
    assert pf.co2_ppm["central"][i] > base.co2_ppm["central"][i]


def test_negative_uptake_flags_invalid_damages():
    run = pipeline.run_scenario(parse_scenario("dice-norm"))
    v = run.variant("central")
    bad = v.heat.years[~v.valid]
    assert bad.size and v.heat.dq_zj[bad[0] - v.heat.start_year] < 0


def test_artifacts_are_deterministic(tmp_path, reference_run):
    a = pipeline.write_artifacts(reference_run, tmp_path / "a")
    b = pipeline.write_artifacts(pipeline.run_scenario(pipeline.REFERENCE), tmp_path / "b")
    for name in ("gas.csv", "forcing.csv", "heat.csv", "damages.csv", "risk.csv", "meta.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes(), name
    gas_rows = (a / "gas.csv").read_text().splitlines()
    assert gas_rows[0].startswith("year,") and gas_rows[1].startswith("1,")
    assert gas_rows[1].endswith(",1") and gas_rows[-1].endswith(",0")


def test_all_families_run():
    for spec in families():
        run = pipeline.run_scenario(spec)
        assert np.all(np.isfinite(run.variant("central").heat.q_zj))
