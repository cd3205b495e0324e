import sys


def pytest_terminal_summary(terminalreporter):
    # one line per acceptance criterion, whichever tests ran
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
