import util


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # Surface the per-criterion verdicts from test_acceptance.py even though
    # pytest captures stdout of passing tests.
    if util.ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in util.ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
