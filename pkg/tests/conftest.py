# Collects one line per acceptance criterion and prints them after the run.
ACCEPTANCE_LINES = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = "test_acceptance.py::test_criterion_"
    if marker not in report.nodeid:
        return
    key = report.nodeid.split(marker, 1)[1]
    num, _, name = key.partition("_")
    status = "PASS" if report.passed else "FAIL"
    ACCEPTANCE_LINES[int(num)] = f"criterion {int(num):2d} {name:<28s} {status} ({report.duration:.1f} s)"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
