"""Freeze reference-run values for the regression test (tests/golden/reference_run.json).

Re-run only after a deliberate model change, and record the change in the ledger.
"""

import json
from pathlib import Path

from heatcost import pipeline, scghg

run = pipeline.run_scenario(pipeline.REFERENCE)
g = run.gas
out = {"gas": {}, "calibration": {}, "scghg": {}}
for name in ("co2_ppm", "ch4_ppb", "n2o_ppb", "fgas_ppt", "gtc", "ch4_population_share"):
    arr = g.co2_ppm["central"] if name == "co2_ppm" else getattr(g, name)
    for y in (1900, 1960, 2021, 2100, 2500):
        out["gas"][f"{name}@{y}"] = float(arr[g.index(y)])
out["calibration"] = {"dx": run.calibration.ocean_params.dx, "damages_scale": run.calibration.damages_scale}
for gas in scghg.GASES:
    for v in ("low", "central", "high"):
        for d in (0.0, 0.0157):
            out["scghg"][f"{gas}|{v}|2025|300|{d}"] = scghg.social_cost(run, gas, v, 2025, 300, d)
path = Path(__file__).resolve().parents[1] / "tests" / "golden" / "reference_run.json"
path.write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")
print(path)
