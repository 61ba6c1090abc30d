"""Test configuration: acceptance criteria get one summary line each."""

_acceptance_outcomes: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_criterion_"):
        return
    outcome = "PASS" if report.outcome == "passed" else report.outcome.upper()
    _acceptance_outcomes.append((name, outcome))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance_outcomes):
        terminalreporter.write_line(f"{name}: {outcome}")
