"""Command-line entry point: python -m heatcost <command> ..."""

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import damages, discounting, io, pipeline, scghg, storms
from .ocean import OceanParams
from .scenarios import parse_scenario, valid_ids

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _spec(text, variant=None):
    try:
        return parse_scenario(text, variant)
    except KeyError:
        raise InputError(f"unknown scenario {text!r}; valid ids: {', '.join(valid_ids())}") from None


def _dataset_tuples(args):
    """(ohc, damages_record) as hashable tuples when the files are available."""
    root = getattr(args, "data_dir", None)
    ohc_path = io.find_dataset("ohc", getattr(args, "ohc", None), root)
    noaa_path = io.find_dataset("noaa", getattr(args, "noaa", None), root)
    ohc = rec = None
    if ohc_path:
        t = io.read_ohc(ohc_path)
        cols = [t["year"], t["ohc_zj"]] + ([t["lower_zj"], t["upper_zj"]] if "lower_zj" in t else [])
        ohc = tuple(zip(*(c.tolist() for c in cols)))
    if noaa_path:
        s = io.read_noaa_twd(noaa_path)
        rec = tuple(zip(s.years.tolist(), (s.values / 1e9).tolist()))
    return ohc, rec


def _calibration(args):
    cached = getattr(args, "calibration", None)
    if cached:
        d = json.loads(Path(cached).read_text())
        return pipeline.Calibration(OceanParams(**d["ocean_params"]), d["damages_scale"], d["damages_r2"],
                                    d["sigma_scale"], d["sigma_r2"], d["source"])
    ohc, rec = _dataset_tuples(args)
    return pipeline.calibrate(pipeline.DEFAULT_SETTINGS, ohc, rec)


def cmd_simulate(args):
    spec = _spec(args.scenario, args.variant)
    run = pipeline.run_scenario(spec, cal=_calibration(args))
    rows = None
    if args.with_scghg:
        rows = scghg.scghg_grid([run], args.discounts, args.terms, args.years)
    out = pipeline.write_artifacts(run, args.out, rows)
    print(out)


def cmd_scghg(args):
    spec = _spec(args.scenario, args.variant)
    run = pipeline.run_scenario(spec, cal=_calibration(args))
    try:
        cost = scghg.social_cost(run, args.gas, spec.co2_variant.value, args.year, args.term, args.discount)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(scghg.format_cost(cost))


def cmd_risk(args):
    if not 0 < args.r < 0.5:
        raise InputError("--r must be in (0, 0.5)")
    spec = _spec(args.scenario, args.variant)
    run = pipeline.run_scenario(spec, cal=_calibration(args))
    v = run.variant(spec.co2_variant)
    cal = run.calibration
    q = v.shares.total
    dm, rm = damages.DamagesModel(cal.damages_scale), damages.RiskModel(cal.sigma_scale)
    curve = damages.risk_curve(dm, rm, args.r, q)
    years = v.heat.years
    keep = (years >= args.first) & (years <= args.last)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(("year", "fwd_busd", f"risk_{args.r:g}_busd"))
    for y, f, c in zip(years[keep], v.us_damages_busd[keep], curve[keep]):
        w.writerow((int(y), f"{f:.6g}", f"{c:.6g}"))


def cmd_storms(args):
    path = args.hurdat2 or io.find_dataset("hurdat2", None, args.data_dir)
    if not path:
        raise InputError("no HURDAT2 file given (--hurdat2) or found in the data directory")
    run = storms.storm_energies(io.read_hurdat2(path), args.radius_source)
    target = args.out or "/dev/stdout"
    storms.write_energy_csv(run.storms, target)
    print(f"# storms={len(run.storms)} skipped_points={run.skipped_points}", file=sys.stderr)


def _prtp_table():
    p1 = discounting.solve_p_mean_rho(0.005, 30)
    p2 = discounting.solve_p_point_rho(0.005, 15)
    rows = [
        ("mean_rho_0.005_30yr", p1),
        ("rho_t15_at_mean_basis", float(discounting.PRTPBasis(p1).rho(15))),
        ("point_rho_0.005_t15", p2),
        ("area_0_300_point_basis", discounting.prtp_area(p2, 0, 300)),
        ("area_match_0.953", discounting.solve_p_for_area(0.953, 0, 300)),
        ("area_match_0.951", discounting.solve_p_for_area(0.951, 0, 300)),
        ("floored_area_2.631_1500yr", discounting.solve_p_for_area(2.631, 0, 1500, discounting.GREENBOOK_FLOOR)),
        ("greenbook_zero_crossing", discounting.greenbook_zero_crossing()),
        ("greenbook_area_0_300", discounting.greenbook_area(0, 300)),
    ]
    return rows


def cmd_discount(args):
    w = csv.writer(sys.stdout, lineterminator="\n")
    if args.analysis == "prtp":
        if args.solve is None:
            w.writerow(("quantity", "value"))
            for k, v in _prtp_table():
                w.writerow((k, f"{v:.6g}"))
            return
        if args.solve == "mean":
            p = discounting.solve_p_mean_rho(args.target, args.horizon)
        elif args.solve == "point":
            p = discounting.solve_p_point_rho(args.target, args.t)
        else:
            floor = discounting.GREENBOOK_FLOOR if args.greenbook_floor else 0.0
            p = discounting.solve_p_for_area(args.target, 0, args.horizon, floor)
        print(f"{p:.6g}")
        return
    # bond
    w.writerow(("k_for_risk", "risk", "k", "coverage"))
    for r in (0.1, 0.01, 0.001):
        k = damages.chebyshev_k(r)
        w.writerow(("", r, f"{k:.11f}", f"{damages.chebyshev_coverage(k):.4%}"))
    root = args.data_dir
    paths = {key: io.find_dataset(key, getattr(args, key), root) for key in ("gs30", "fedfunds", "cpi")}
    if not paths["gs30"]:
        print("# no GS30 file; rate statistics skipped", file=sys.stderr)
        return
    nominal = io.read_fred(paths["gs30"])
    ff = io.read_fred(paths["fedfunds"]) if paths["fedfunds"] else None
    cpi = io.read_fred(paths["cpi"]) if paths["cpi"] else None
    real = discounting.tbill_real_rates(nominal, cpi, ff)
    st = discounting.frequency_stats([real[m] for m in sorted(real) if args.first <= m[0] <= args.last])
    w.writerow(("statistic", "value"))
    for name in ("sigma", "mean", "median", "midrange", "max", "min", "skew", "kurtosis", "n"):
        w.writerow((name, f"{getattr(st, name):.4g}"))


def cmd_calibrate(args):
    cal = _calibration(args)
    payload = {
        "ocean_params": {k: getattr(cal.ocean_params, k) for k in ("k", "area", "cs", "mass_per_m2", "dx", "q0")},
        "damages_scale": cal.damages_scale, "damages_r2": cal.damages_r2,
        "sigma_scale": cal.sigma_scale, "sigma_r2": cal.sigma_r2, "source": cal.source,
    }
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(json.dumps(payload, sort_keys=True))


def build_parser():
    ap = argparse.ArgumentParser(prog="heatcost", description=__doc__)
    ap.add_argument("--data-dir", help=f"dataset root (default ${io.DATA_DIR_ENV})")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_scenario(p):
        p.add_argument("--scenario", default="baseline-norm")
        p.add_argument("--variant", choices=("low", "central", "high"))
        p.add_argument("--calibration", help="calibration JSON written by `calibrate`")
        p.add_argument("--ohc")
        p.add_argument("--noaa")

    p = sub.add_parser("simulate", help="run one scenario and write its artifacts")
    with_scenario(p)
    p.add_argument("--out", default="out")
    p.add_argument("--with-scghg", action="store_true")
    p.add_argument("--discounts", type=float, nargs="+", default=[-0.0215, 0.0, 0.00435, 0.0157])
    p.add_argument("--terms", type=int, nargs="+", default=[300, 500])
    p.add_argument("--years", type=int, nargs="+", default=[2025])
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("scghg", help="social cost per tonne for one cell")
    with_scenario(p)
    p.add_argument("--gas", choices=scghg.GASES, required=True)
    p.add_argument("--year", type=int, required=True)
    p.add_argument("--term", type=int, required=True)
    p.add_argument("--discount", type=float, required=True)
    p.set_defaults(func=cmd_scghg)

    p = sub.add_parser("risk", help="risk-curve CSV")
    with_scenario(p)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--first", type=int, default=1980)
    p.add_argument("--last", type=int, default=2100)
    p.set_defaults(func=cmd_risk)

    p = sub.add_parser("storms", help="per-storm energy CSV from a HURDAT2 file")
    p.add_argument("--hurdat2")
    p.add_argument("--radius-source", choices=("auto", "mslp"), default="auto")
    p.add_argument("--out")
    p.set_defaults(func=cmd_storms)

    p = sub.add_parser("discount", help="discount-rate analysis tables")
    p.add_argument("--analysis", choices=("prtp", "bond"), required=True)
    p.add_argument("--solve", choices=("mean", "point", "area"))
    p.add_argument("--target", type=float, default=0.005)
    p.add_argument("--horizon", type=int, default=30)
    p.add_argument("--t", type=int, default=15)
    p.add_argument("--greenbook-floor", action="store_true")
    p.add_argument("--gs30")
    p.add_argument("--fedfunds")
    p.add_argument("--cpi")
    p.add_argument("--first", type=int, default=1977)
    p.add_argument("--last", type=int, default=2023)
    p.set_defaults(func=cmd_discount)

    p = sub.add_parser("calibrate", help="refresh the cached calibration")
    p.add_argument("--ohc")
    p.add_argument("--noaa")
    p.add_argument("--out", default="out/calibration.json")
    p.set_defaults(func=cmd_calibrate)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (InputError, io.SchemaError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
