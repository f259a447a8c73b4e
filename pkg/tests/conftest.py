import os

import pytest
from hypothesis import HealthCheck, settings

from heatcost import pipeline

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def reference_run():
    return pipeline.run_scenario(pipeline.REFERENCE)


@pytest.fixture(scope="session")
def reference_gas():
    return pipeline.cached_gas_run(pipeline.REFERENCE)


# one summary line per acceptance criterion --------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(key, title): acceptance criterion this test checks")


def pytest_runtest_logreport(report):
    key = dict(report.user_properties).get("criterion")
    if key is None:
        return
    if report.when == "call" or report.outcome != "passed":
        if hasattr(report, "wasxfail"):
            state = "XPASS" if report.passed else "XFAIL"
        else:
            state = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        entry = _criteria.setdefault(key[0], {"title": key[1], "states": [], "notes": []})
        entry["states"].append(state)
        note = dict(report.user_properties).get("note")
        if note and note not in entry["notes"]:
            entry["notes"].append(note)
        if state == "SKIP" and isinstance(report.longrepr, tuple):
            entry["notes"].append(report.longrepr[2].removeprefix("Skipped: "))


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", tuple(m.args)))


def _overall(states):
    for s in ("FAIL", "XPASS", "XFAIL"):
        if s in states:
            return s
    return "SKIP" if all(s == "SKIP" for s in states) else "PASS"


def _order(key):
    num = "".join(c for c in key if c.isdigit())
    return int(num), key


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for key in sorted(_criteria, key=_order):
        e = _criteria[key]
        line = f"criterion {key:<4} {_overall(e['states']):<6} {e['title']}"
        if e["notes"]:
            line += "  [" + "; ".join(e["notes"]) + "]"
        tr.write_line(line)
