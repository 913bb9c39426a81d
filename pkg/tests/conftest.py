"""Collect acceptance verdicts and print them at the end of the run."""

CRITERIA: dict[int, bool] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        terminalreporter.write_line(f"CRITERION {n}: {'PASS' if CRITERIA[n] else 'FAIL'}")
