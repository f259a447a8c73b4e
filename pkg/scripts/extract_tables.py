"""Pull the published 300/500-year SC-GHG tables out of a LaTeX-in-markdown source.

usage: python3 scripts/extract_tables.py SOURCE.md tests/golden/published_tables.json
"""

import json
import re
import sys

CAPTION = re.compile(r"\\caption\{(-?[\d.]+)\\% .*?SC-GHG computations for \\textbf\{([^}]+)\}")
TERM = re.compile(r"^(\d+) yr\s*&")
NUMBER = re.compile(r"^-?\d\.\d+E[+-]\d+$")
FIRST_YEAR, STEP = 2025, 5
COLUMNS = [f"{g}_{b}" for g in ("co2", "ch4", "n2o", "fgas") for b in ("low", "central", "high")]
SCENARIOS = {
    "baseline": "baseline",
    "baseline s-aerosol": "baseline-saer",
    "permafrost thaw": "permafrost",
    "permafrost thaw s-aerosol": "permafrost-saer",
}


def _numbers(line):
    cells = [c.strip() for c in line.rstrip("\\").split("&")]
    vals = [c for c in cells if NUMBER.match(c)]
    year = int(cells[0]) if re.fullmatch(r"2\d{3}", cells[0]) else None
    return year, [float(v) for v in vals]


def extract(text):
    """One table per caption; blocks start at the CO2/CH4/... header row.

    Some tables omit the term header and the year column, in which case the
    blocks are taken as 300 then 500 years and rows as 2025, 2030, ...
    """
    tables, current, term, block = [], None, None, None
    for line in text.splitlines():
        line = line.strip()
        m = CAPTION.search(line)
        if m:
            current = {"discount": round(float(m.group(1)) / 100, 8), "scenario": SCENARIOS[m.group(2).strip().lower()],
                       "terms": {}}
            tables.append(current)
            term = block = None
            continue
        if line.startswith("\\caption"):
            current = None  # other tables (1500-yr term etc.)
            continue
        if current is None:
            continue
        m = TERM.match(line)
        if m:
            term = m.group(1)
            continue
        if "CO2 L" in line:
            if term is None:
                term = ("300", "500")[len(current["terms"])]
            block = current["terms"].setdefault(term, {})
            term = None
            continue
        if block is None:
            continue
        year, vals = _numbers(line)
        if len(vals) == len(COLUMNS):
            year = year or FIRST_YEAR + STEP * len(block)
            block[str(year)] = dict(zip(COLUMNS, vals))
    return tables


def main(src, dst):
    with open(src) as fh:
        tables = extract(fh.read())
    with open(dst, "w") as fh:
        json.dump(tables, fh, indent=1, sort_keys=True)
    print(f"{len(tables)} tables -> {dst}")


if __name__ == "__main__":
    main(*sys.argv[1:3])
