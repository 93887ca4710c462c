"""Prints one summary line per acceptance criterion after the run."""

import pytest

_acceptance_results = {}


@pytest.hookimpl
def pytest_runtest_logreport(report):
    if "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if report.when == "call":
        _acceptance_results[name] = report.outcome
    elif report.when == "setup" and report.outcome != "passed":
        _acceptance_results[name] = report.outcome


@pytest.hookimpl
def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    tr = terminalreporter
    tr.write_sep("=", "acceptance criteria")
    for name in sorted(_acceptance_results):
        outcome = _acceptance_results[name]
        label = "PASS" if outcome == "passed" else "FAIL"
        markup = {"green": True} if outcome == "passed" else {"red": True}
        tr.write_line(f"{label}  {name}", **markup)
