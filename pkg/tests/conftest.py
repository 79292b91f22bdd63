"""Shared pytest hooks: print the acceptance scoreboard after the run."""


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        from test_acceptance import ACCEPTANCE_LOG
    except ImportError:
        return
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LOG, key=lambda s: s[0]):
        terminalreporter.write_line(line[1])
