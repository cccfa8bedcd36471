import time

import pytest
from hypothesis import HealthCheck, settings

import acceptance_log

settings.register_profile(
    "default", max_examples=100, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

SUITE_BUDGET = 120.0
_start = time.perf_counter()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion exercised by the test")


def pytest_runtest_logreport(report):
    marks = getattr(report, "criteria", None)
    if not marks:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "xfail" if hasattr(report, "wasxfail") else report.outcome
        for n in marks:
            acceptance_log.OUTCOMES.setdefault(n, []).append((report.nodeid, status))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    report.criteria = [m.args[0] for m in item.iter_markers("criterion")]


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.OUTCOMES:
        return
    elapsed = time.perf_counter() - _start
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, title in acceptance_log.CRITERIA.items():
        results = acceptance_log.OUTCOMES.get(n)
        if not results:
            tr.write_line(f"criterion {n}: NOT RUN  {title}")
            continue
        ok = all(s == "passed" for _, s in results)
        failed = [f"{nid} ({s})" for nid, s in results if s != "passed"]
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title} ({len(results)} checks)"
        if failed:
            line += "  not passing: " + ", ".join(failed)
        tr.write_line(line)
    verdict = "PASS" if elapsed < SUITE_BUDGET else "FAIL"
    tr.write_line(f"criterion 7 runtime: {verdict}  session took {elapsed:.1f} s (budget {SUITE_BUDGET:.0f} s)")
